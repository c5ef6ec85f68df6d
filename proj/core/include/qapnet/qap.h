#ifndef QAPNET_QAP_H_
#define QAPNET_QAP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qapnet/builders.h"
#include "qapnet/dyadic_matrix.h"
#include "qapnet/terms.h"

namespace qapnet {

inline constexpr std::size_t kDefaultPermutations = 5000;

// Transform applied to the dependent matrix before fitting.
struct Transform {
  enum class Kind { kNone, kLog };
  Kind kind = Kind::kLog;
  double offset = 1.0;

  // "none", "log" (offset 1) or "log:<offset>".
  static Transform Parse(const std::string& text);
  std::string ToString() const;
};

struct TermSpec {
  std::string label;
  std::string expression;
};

struct QapModelSpec {
  std::string dependent = "seconds_per_hour";
  std::vector<TermSpec> terms;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  Transform transform;

  // Throws Error on an empty term list or zero permutations.
  void Validate() const;
};

// Tail probabilities of an observed statistic within its permutation
// distribution, with the +1 correction: upper = (#{null >= obs} + 1) / (P + 1).
// `one` is the tail in the direction of the observed sign, `two` is
// min(1, 2 * min(upper, lower)).
struct PValues {
  double upper = 1.0;
  double lower = 1.0;
  double one = 1.0;
  double two = 1.0;
};

PValues PermutationPValues(double observed, std::span<const double> null);

// Linear-interpolation quantile (R type 7) of an ascending-sorted sample.
double Quantile(std::span<const double> sorted, double q);

struct TermEstimate {
  std::string label;
  double estimate = 0.0;
  PValues p;
  double e_est = 0.0;     // mean of the permuted estimates
  double pct_2_5 = 0.0;
  double pct_97_5 = 0.0;
  // Set when the term was constant over the analysed dyads and left out of
  // the fit; all numbers are then meaningless.
  bool dropped = false;
};

struct QapFit {
  std::vector<TermEstimate> terms;  // "(intercept)" first
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double residual_skewness = 0.0;
  std::size_t n_dyads = 0;
  std::size_t permutations = 0;
  std::size_t failed_replicates = 0;
  std::uint64_t seed = 0;
  // Permuted estimates per fitted term (intercept first), successful
  // replicates only, in replicate order. Filled when requested.
  std::vector<std::vector<double>> null_distributions;
};

struct QapOptions {
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  // 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
  double max_failure_fraction = 0.01;
  bool keep_distributions = false;
};

// One row per included unordered dyad {i<j}, in (i, j) order.
struct Design {
  std::vector<std::pair<std::size_t, std::size_t>> dyads;
  Eigen::VectorXd y;
  Eigen::MatrixXd x;  // no intercept column
};

// Throws on asymmetric input, mismatched sizes, or an empty design.
Design Vectorize(const DyadicMatrix& dependent, std::span<const DyadicMatrix> terms,
                 const DyadInclusion& inclusion);

// Multi-group Y-permutation QAP regression. The observed fit is computed
// once; each replicate relabels the dependent's nodes within their groups
// and refits the same covariates. Dyads across groups never enter.
//
// When the dependent has missing cells the permuted mask changes the design,
// so replicates are refit from scratch; a degenerate replicate is counted as
// failed and excluded. More than max_failure_fraction failures throws
// ReplicateFailureError.
QapFit QapRegression(const DyadicMatrix& dependent, std::span<const DyadicMatrix> terms,
                     std::span<const std::string> labels, std::span<const int> groups,
                     const QapOptions& options);

struct ModelFitOptions {
  unsigned threads = 0;
  bool keep_distributions = false;
  // Leave out terms that are constant over the included dyads (e.g. a
  // sample dummy when fitting one sample) instead of failing on rank.
  bool drop_constant_terms = false;
};

// Evaluates every term of `spec` on `data`, transforms the dependent and
// runs QapRegression.
QapFit FitModel(const QapModelSpec& spec, const Dataset& data,
                const ModelFitOptions& options = {});

}  // namespace qapnet

#endif  // QAPNET_QAP_H_
