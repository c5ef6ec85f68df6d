#include "qapnet/correlation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "qapnet/error.h"
#include "qapnet/permutation.h"

namespace qapnet {
namespace {

void CompletePairs(const NodeValues& x, const NodeValues& y, std::vector<double>& xs,
                   std::vector<double>& ys) {
  if (x.size() != y.size()) throw Error("correlated vectors differ in length");
  xs.clear();
  ys.clear();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] && y[i]) {
      xs.push_back(*x[i]);
      ys.push_back(*y[i]);
    }
}

bool IsConstant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlated vectors differ in length");
  if (x.size() < 2) throw Error("correlation needs at least two observations");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0) || !(syy > 0)) throw Error("correlation of a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> MidRanks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k + 1;
    while (end < order.size() && x[order[end]] == x[order[k]]) ++end;
    const double rank = (static_cast<double>(k + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t t = k; t < end; ++t) ranks[order[t]] = rank;
    k = end;
  }
  return ranks;
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  return Pearson(MidRanks(x), MidRanks(y));
}

double CorrelationPValue(double r, std::size_t n) {
  if (n < 3) return std::nan("");
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n) - 2.0;
  const double t = r * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

std::string SignificanceStars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

PermutationCorrelation NodePermutationCorrelation(const NodeValues& x, const NodeValues& y,
                                                  std::size_t permutations,
                                                  std::uint64_t seed) {
  std::vector<double> xs, ys;
  CompletePairs(x, y, xs, ys);
  if (xs.size() < 3) throw Error("permutation correlation needs >= 3 complete pairs");
  if (IsConstant(xs) || IsConstant(ys)) throw Error("correlation of a constant vector");
  if (permutations < 1) throw Error("at least one permutation is required");

  PermutationCorrelation out;
  out.n = xs.size();
  out.permutations = permutations;
  out.r = Pearson(xs, ys);
  std::vector<double> null(permutations);
  std::vector<double> shuffled(ys.size());
  for (std::size_t r = 0; r < permutations; ++r) {
    Rng rng = ReplicateRng(seed, r);
    const Permutation perm = RandomPermutation(ys.size(), rng);
    for (std::size_t i = 0; i < ys.size(); ++i) shuffled[i] = ys[perm[i]];
    null[r] = Pearson(xs, shuffled);
  }
  out.p = PermutationPValues(out.r, null);
  return out;
}

bool IsBinary(const NodeValues& values) {
  std::set<double> distinct;
  for (const auto& v : values)
    if (v) {
      distinct.insert(*v);
      if (distinct.size() > 2) return false;
    }
  return true;
}

CorrelationTable BuildCorrelationTable(std::span<const NodeVariable> variables) {
  CorrelationTable table;
  const std::size_t k = variables.size();
  std::vector<bool> rank_based(k);
  for (std::size_t a = 0; a < k; ++a) {
    table.names.push_back(variables[a].name);
    rank_based[a] = variables[a].ordinal || IsBinary(variables[a].values);
  }
  table.cells.assign(k, std::vector<CorrelationCell>(k));
  std::vector<double> xs, ys;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      CorrelationCell cell;
      cell.method = (rank_based[a] || rank_based[b]) ? CorrelationMethod::kSpearman
                                                     : CorrelationMethod::kPearson;
      CompletePairs(variables[a].values, variables[b].values, xs, ys);
      cell.n = xs.size();
      if (cell.n >= 3 && !IsConstant(xs) && !IsConstant(ys)) {
        cell.r = cell.method == CorrelationMethod::kSpearman ? Spearman(xs, ys)
                                                             : Pearson(xs, ys);
        cell.p = CorrelationPValue(*cell.r, cell.n);
      }
      table.cells[a][b] = cell;
      table.cells[b][a] = cell;
    }
  return table;
}

void WriteCorrelationTable(std::ostream& out, const CorrelationTable& table) {
  out << "var_a,var_b,method,n,r,p,stars\n";
  for (std::size_t a = 0; a < table.names.size(); ++a)
    for (std::size_t b = a; b < table.names.size(); ++b) {
      const auto& c = table.cells[a][b];
      out << table.names[a] << ',' << table.names[b] << ','
          << (c.method == CorrelationMethod::kSpearman ? "spearman" : "pearson") << ','
          << c.n << ',';
      if (c.r) out << fmt::format("{:.6f}", *c.r);
      out << ',';
      if (c.p) out << fmt::format("{:.6g}", *c.p);
      out << ',';
      if (c.p && a != b) out << SignificanceStars(*c.p);
      out << '\n';
    }
}

}  // namespace qapnet
