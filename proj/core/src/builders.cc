#include "qapnet/builders.h"

#include <cmath>
#include <map>

#include <fmt/format.h>

#include "qapnet/csv.h"
#include "qapnet/error.h"

namespace qapnet {
namespace {

template <typename F>
DyadicMatrix PairwiseNumeric(const NumericValues& v, F f) {
  DyadicMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] && v[j])
        m.Set(i, j, f(*v[i], *v[j]));
      else
        m.SetMissing(i, j);
    }
  return m;
}

template <typename F>
DyadicMatrix PairwiseFlags(std::span<const std::optional<bool>> flags, F f) {
  DyadicMatrix m(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i)
    for (std::size_t j = i + 1; j < flags.size(); ++j) {
      if (flags[i] && flags[j])
        m.Set(i, j, f(*flags[i], *flags[j]) ? 1.0 : 0.0);
      else
        m.SetMissing(i, j);
    }
  return m;
}

}  // namespace

DyadicMatrix MeanMatrix(const NumericValues& v) {
  return PairwiseNumeric(v, [](double a, double b) { return (a + b) / 2.0; });
}

DyadicMatrix CenteredMeanMatrix(const NumericValues& v, std::span<const int> groups) {
  if (groups.size() != v.size()) throw Error("group labels do not match attribute");
  std::map<int, std::pair<double, std::size_t>> sums;
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    auto& [sum, count] = sums[groups[i]];
    sum += *v[i];
    ++count;
    any = true;
  }
  if (!any) throw Error("cannot center an attribute with no observed values");
  NumericValues centered(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    const auto& [sum, count] = sums[groups[i]];
    centered[i] = *v[i] - sum / static_cast<double>(count);
  }
  return MeanMatrix(centered);
}

DyadicMatrix SimilarityMatrix(const NumericValues& v) {
  return PairwiseNumeric(v, [](double a, double b) { return -std::abs(a - b); });
}

std::vector<std::optional<bool>> LevelIndicator(const NodePanel& panel,
                                                const std::string& attribute,
                                                const std::string& level,
                                                bool require_present) {
  std::vector<std::optional<bool>> out(panel.size());
  bool seen = false;
  if (panel.IsNumeric(attribute)) {
    auto target = csv::ParseDouble(level);
    if (!target)
      throw Error(fmt::format("level '{}' is not numeric for attribute '{}'",
                              level, attribute));
    const auto& v = panel.Numeric(attribute);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) {
        out[i] = *v[i] == *target;
        seen = seen || *out[i];
      }
  } else {
    const auto& v = panel.Categorical(attribute);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) {
        out[i] = *v[i] == level;
        seen = seen || *out[i];
      }
  }
  if (!seen && require_present)
    throw Error(fmt::format("unknown level '{}' for attribute '{}'", level, attribute));
  return out;
}

DyadicMatrix DummyAny(std::span<const std::optional<bool>> has_level) {
  return PairwiseFlags(has_level, [](bool a, bool b) { return a || b; });
}

DyadicMatrix DummyBoth(std::span<const std::optional<bool>> has_level) {
  return PairwiseFlags(has_level, [](bool a, bool b) { return a && b; });
}

DyadicMatrix DummyExactlyOne(std::span<const std::optional<bool>> has_level) {
  return PairwiseFlags(has_level, [](bool a, bool b) { return a != b; });
}

DyadicMatrix SameCategory(const CategoricalValues& values) {
  DyadicMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] && values[j])
        m.Set(i, j, *values[i] == *values[j] ? 1.0 : 0.0);
      else
        m.SetMissing(i, j);
    }
  return m;
}

DyadicMatrix SymmetrizeOr(const NominationNetwork& network) {
  const std::size_t n = network.size();
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ij = network.Observed(i, j);
      auto ji = network.Observed(j, i);
      if ((ij && *ij) || (ji && *ji))
        m.Set(i, j, 1.0);
      else if (ij && ji)
        m.Set(i, j, 0.0);
      else
        m.SetMissing(i, j);
    }
  return m;
}

DyadicMatrix MutualMatrix(const NominationNetwork& network) {
  const std::size_t n = network.size();
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ij = network.Observed(i, j);
      auto ji = network.Observed(j, i);
      if (ij && ji)
        m.Set(i, j, (*ij && *ji) ? 1.0 : 0.0);
      else if ((ij && !*ij) || (ji && !*ji))
        m.Set(i, j, 0.0);  // one observed absence rules mutuality out
      else
        m.SetMissing(i, j);
    }
  return m;
}

DyadicMatrix AsymmetricMatrix(const NominationNetwork& network) {
  const std::size_t n = network.size();
  DyadicMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto ij = network.Observed(i, j);
      auto ji = network.Observed(j, i);
      if (ij && ji)
        m.Set(i, j, (*ij != *ji) ? 1.0 : 0.0);
      else
        m.SetMissing(i, j);
    }
  return m;
}

DyadicMatrix ProductMatrix(const DyadicMatrix& a, const DyadicMatrix& b) {
  if (a.size() != b.size())
    throw Error(fmt::format("cannot multiply {}x{} by {}x{} dyadic matrices",
                            a.size(), a.size(), b.size(), b.size()));
  const bool sym = a.symmetric() && b.symmetric();
  DyadicMatrix m(a.size(), {}, sym);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = sym ? i + 1 : 0; j < a.size(); ++j) {
      if (i == j) continue;
      if (a.missing(i, j) || b.missing(i, j))
        m.SetMissing(i, j);
      else
        m.Set(i, j, a.value(i, j) * b.value(i, j));
    }
  return m;
}

DyadicMatrix LogTransform(const DyadicMatrix& m, double offset) {
  DyadicMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j || m.missing(i, j)) continue;
      const double x = m.value(i, j) + offset;
      if (!(x > 0))
        throw Error(fmt::format(
            "log transform undefined: cell ({}, {}) plus offset {} is {}", i, j,
            offset, x));
      out.Set(i, j, std::log(x));
    }
  return out;
}

void DyadInclusion::Include(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  auto& cell = included_[i * n_ + j];
  if (!cell) {
    cell = 1;
    ++count_;
  }
}

DyadInclusion ListwiseDelete(std::span<const DyadicMatrix* const> matrices,
                             std::span<const int> groups) {
  if (matrices.empty()) throw Error("listwise deletion needs at least one matrix");
  const std::size_t n = matrices.front()->size();
  for (const auto* m : matrices)
    if (m->size() != n) throw Error("matrices do not share a node set");
  if (!groups.empty() && groups.size() != n)
    throw Error("group labels do not match the node set");
  DyadInclusion inclusion(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!groups.empty() && groups[i] != groups[j]) continue;
      bool keep = true;
      for (const auto* m : matrices)
        if (m->missing(i, j) || m->missing(j, i)) {
          keep = false;
          break;
        }
      if (keep) inclusion.Include(i, j);
    }
  return inclusion;
}

}  // namespace qapnet
