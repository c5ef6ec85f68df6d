#include "qapnet/qap.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "qapnet/csv.h"
#include "qapnet/error.h"
#include "qapnet/ols.h"
#include "qapnet/permutation.h"

namespace qapnet {
namespace {

bool DependentMissingWithinGroups(const DyadicMatrix& y, std::span<const int> groups) {
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j)
      if (groups[i] == groups[j] && (y.missing(i, j) || y.missing(j, i))) return true;
  return false;
}

std::vector<const DyadicMatrix*> Pointers(const DyadicMatrix& first,
                                          std::span<const DyadicMatrix> rest) {
  std::vector<const DyadicMatrix*> out{&first};
  for (const auto& m : rest) out.push_back(&m);
  return out;
}

unsigned ResolveThreads(unsigned requested, std::size_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

}  // namespace

Transform Transform::Parse(const std::string& text) {
  if (text == "none") return {Kind::kNone, 0.0};
  if (text == "log") return {Kind::kLog, 1.0};
  if (text.rfind("log:", 0) == 0) {
    auto offset = csv::ParseDouble(text.substr(4));
    if (!offset) throw Error(fmt::format("bad log offset in transform '{}'", text));
    return {Kind::kLog, *offset};
  }
  throw Error(fmt::format("unknown transform '{}' (expected none|log|log:<offset>)", text));
}

std::string Transform::ToString() const {
  if (kind == Kind::kNone) return "none";
  return fmt::format("log:{}", offset);
}

void QapModelSpec::Validate() const {
  if (terms.empty()) throw Error("model has no terms");
  if (permutations < 1) throw Error("model needs at least one permutation");
  if (dependent.empty()) throw Error("model has no dependent matrix");
  for (const auto& t : terms)
    if (t.expression.empty()) throw Error("model term with an empty expression");
}

PValues PermutationPValues(double observed, std::span<const double> null) {
  std::size_t ge = 0, le = 0;
  for (double v : null) {
    if (v >= observed) ++ge;
    if (v <= observed) ++le;
  }
  const double denom = static_cast<double>(null.size()) + 1.0;
  PValues p;
  p.upper = (static_cast<double>(ge) + 1.0) / denom;
  p.lower = (static_cast<double>(le) + 1.0) / denom;
  p.one = observed >= 0 ? p.upper : p.lower;
  p.two = std::min(1.0, 2.0 * std::min(p.upper, p.lower));
  return p;
}

double Quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) return std::nan("");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Design Vectorize(const DyadicMatrix& dependent, std::span<const DyadicMatrix> terms,
                 const DyadInclusion& inclusion) {
  const std::size_t n = dependent.size();
  if (inclusion.size() != n) throw Error("inclusion mask does not match node set");
  for (const auto* m : Pointers(dependent, terms)) {
    if (m->size() != n) throw Error("matrices do not share a node set");
    if (!m->symmetric() || !m->IsSymmetricExact())
      throw Error(fmt::format("matrix '{}' is not symmetric", m->label()));
  }
  if (inclusion.count() == 0) throw Error("no dyads left to analyse");

  Design d;
  d.dyads.reserve(inclusion.count());
  d.y.resize(static_cast<Eigen::Index>(inclusion.count()));
  d.x.resize(static_cast<Eigen::Index>(inclusion.count()),
             static_cast<Eigen::Index>(terms.size()));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!inclusion.Included(i, j)) continue;
      d.dyads.emplace_back(i, j);
      d.y(row) = dependent.value(i, j);
      for (std::size_t k = 0; k < terms.size(); ++k)
        d.x(row, static_cast<Eigen::Index>(k)) = terms[k].value(i, j);
      ++row;
    }
  return d;
}

QapFit QapRegression(const DyadicMatrix& dependent, std::span<const DyadicMatrix> terms,
                     std::span<const std::string> labels, std::span<const int> groups,
                     const QapOptions& options) {
  if (terms.empty()) throw Error("QAP regression needs at least one term");
  if (labels.size() != terms.size()) throw Error("one label per term is required");
  if (groups.size() != dependent.size()) throw Error("every node needs a group label");
  if (options.permutations < 1) throw Error("at least one permutation is required");

  const auto matrices = Pointers(dependent, terms);
  const DyadInclusion inclusion = ListwiseDelete(matrices, groups);
  const Design design = Vectorize(dependent, terms, inclusion);
  const OlsProjector projector(design.x, labels);
  const OlsResult observed =
      SummarizeFit(design.y, projector.design(), projector.Coefficients(design.y));

  const std::size_t p = terms.size() + 1;
  const std::size_t reps = options.permutations;
  std::vector<double> draws(reps * p, 0.0);
  std::vector<std::uint8_t> failed(reps, 0);
  const bool refit = DependentMissingWithinGroups(dependent, groups);

  auto run_replicate = [&](std::size_t r) {
    Rng rng = ReplicateRng(options.seed, r);
    const Permutation perm = GroupPermutation(groups, rng);
    Eigen::VectorXd beta;
    if (!refit) {
      Eigen::VectorXd y(static_cast<Eigen::Index>(design.dyads.size()));
      for (std::size_t row = 0; row < design.dyads.size(); ++row) {
        const auto [i, j] = design.dyads[row];
        y(static_cast<Eigen::Index>(row)) = dependent.value(perm[i], perm[j]);
      }
      beta = projector.Coefficients(y);
    } else {
      try {
        const DyadicMatrix permuted = PermuteNodes(dependent, perm);
        const auto ptrs = Pointers(permuted, terms);
        const DyadInclusion inc = ListwiseDelete(ptrs, groups);
        const Design d = Vectorize(permuted, terms, inc);
        beta = OlsProjector(d.x, labels).Coefficients(d.y);
      } catch (const Error&) {
        failed[r] = 1;
        return;
      }
    }
    std::copy(beta.data(), beta.data() + p, draws.begin() + static_cast<std::ptrdiff_t>(r * p));
  };

  const unsigned threads = ResolveThreads(options.threads, reps);
  if (threads == 1) {
    for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < reps; r += threads) run_replicate(r);
      });
    for (auto& th : pool) th.join();
  }

  QapFit fit;
  fit.r2 = observed.r2;
  fit.adj_r2 = observed.adj_r2;
  fit.residual_skewness = observed.residual_skewness;
  fit.n_dyads = design.dyads.size();
  fit.permutations = reps;
  fit.seed = options.seed;
  fit.failed_replicates = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  if (static_cast<double>(fit.failed_replicates) >
      options.max_failure_fraction * static_cast<double>(reps))
    throw ReplicateFailureError(fit.failed_replicates, reps);

  for (std::size_t k = 0; k < p; ++k) {
    std::vector<double> null;
    null.reserve(reps - fit.failed_replicates);
    for (std::size_t r = 0; r < reps; ++r)
      if (!failed[r]) null.push_back(draws[r * p + k]);
    TermEstimate est;
    est.label = k == 0 ? "(intercept)" : labels[k - 1];
    est.estimate = observed.coefficients(static_cast<Eigen::Index>(k));
    est.p = PermutationPValues(est.estimate, null);
    double sum = 0.0;
    for (double v : null) sum += v;
    est.e_est = null.empty() ? std::nan("") : sum / static_cast<double>(null.size());
    std::vector<double> sorted = null;
    std::sort(sorted.begin(), sorted.end());
    est.pct_2_5 = Quantile(sorted, 0.025);
    est.pct_97_5 = Quantile(sorted, 0.975);
    fit.terms.push_back(std::move(est));
    if (options.keep_distributions) fit.null_distributions.push_back(std::move(null));
  }
  return fit;
}

QapFit FitModel(const QapModelSpec& spec, const Dataset& data,
                const ModelFitOptions& options) {
  spec.Validate();
  auto it = data.dyadic.find(spec.dependent);
  if (it == data.dyadic.end())
    throw Error(fmt::format("unknown dependent matrix '{}'", spec.dependent));
  DyadicMatrix dependent = it->second;
  if (spec.transform.kind == Transform::Kind::kLog) {
    // Between-group cells never enter the design, so they must not block the transform.
    const auto groups = data.nodes().groups();
    for (std::size_t i = 0; i < dependent.size(); ++i)
      for (std::size_t j = 0; j < dependent.size(); ++j)
        if (i != j && groups[i] != groups[j]) dependent.SetMissing(i, j);
    dependent = LogTransform(dependent, spec.transform.offset);
  }

  std::vector<DyadicMatrix> terms;
  std::vector<std::string> labels;
  for (const auto& t : spec.terms) {
    terms.push_back(EvaluateTerm(t.expression, data));
    labels.push_back(t.label.empty() ? t.expression : t.label);
  }

  std::vector<bool> keep(terms.size(), true);
  if (options.drop_constant_terms) {
    const auto ptrs = Pointers(dependent, terms);
    const DyadInclusion inc = ListwiseDelete(ptrs, data.nodes().groups());
    const Design d = Vectorize(dependent, terms, inc);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto col = d.x.col(static_cast<Eigen::Index>(k));
      keep[k] = col.maxCoeff() != col.minCoeff();
    }
  }

  std::vector<DyadicMatrix> kept_terms;
  std::vector<std::string> kept_labels;
  for (std::size_t k = 0; k < terms.size(); ++k)
    if (keep[k]) {
      kept_terms.push_back(terms[k]);
      kept_labels.push_back(labels[k]);
    }
  if (kept_terms.empty()) throw Error("every model term is constant over the analysed dyads");

  QapOptions qo;
  qo.permutations = spec.permutations;
  qo.seed = spec.seed;
  qo.threads = options.threads;
  qo.keep_distributions = options.keep_distributions;
  QapFit fit = QapRegression(dependent, kept_terms, kept_labels, data.nodes().groups(), qo);

  if (kept_terms.size() != terms.size()) {
    std::vector<TermEstimate> all{fit.terms.front()};
    std::size_t next = 1;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (keep[k]) {
        all.push_back(fit.terms[next++]);
      } else {
        TermEstimate dropped;
        dropped.label = labels[k];
        dropped.dropped = true;
        all.push_back(dropped);
      }
    }
    fit.terms = std::move(all);
  }
  return fit;
}

}  // namespace qapnet
