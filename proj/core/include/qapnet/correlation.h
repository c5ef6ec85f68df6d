#ifndef QAPNET_CORRELATION_H_
#define QAPNET_CORRELATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qapnet/qap.h"

namespace qapnet {

using NodeValues = std::vector<std::optional<double>>;

double Pearson(std::span<const double> x, std::span<const double> y);
// Pearson on mid-ranks (ties share their average rank).
double Spearman(std::span<const double> x, std::span<const double> y);
std::vector<double> MidRanks(std::span<const double> x);

// Two-sided p of H0: rho = 0 via t = r sqrt((n-2)/(1-r^2)) on n-2 df.
double CorrelationPValue(double r, std::size_t n);

// "*" p<.05, "**" p<.01, "***" p<.001.
std::string SignificanceStars(double p);

struct PermutationCorrelation {
  double r = 0.0;
  PValues p;
  std::size_t n = 0;
  std::size_t permutations = 0;
};

// Pearson r of the pairwise-complete observations and its permutation
// p-values: y is reshuffled uniformly in each of `permutations` replicates
// seeded per replicate from `seed`. Needs >= 3 complete pairs; throws if
// either vector is constant.
PermutationCorrelation NodePermutationCorrelation(const NodeValues& x, const NodeValues& y,
                                                  std::size_t permutations,
                                                  std::uint64_t seed);

struct NodeVariable {
  std::string name;
  NodeValues values;
  // Ordinal or binary variables are correlated with Spearman.
  bool ordinal = false;
};

enum class CorrelationMethod { kPearson, kSpearman };

struct CorrelationCell {
  CorrelationMethod method = CorrelationMethod::kPearson;
  std::size_t n = 0;
  // Unset when fewer than 3 complete pairs or a constant variable.
  std::optional<double> r;
  std::optional<double> p;
};

struct CorrelationTable {
  std::vector<std::string> names;
  std::vector<std::vector<CorrelationCell>> cells;  // symmetric
};

// True when a variable takes at most two distinct observed values.
bool IsBinary(const NodeValues& values);

// Spearman is used for a pair when either variable is ordinal or binary.
CorrelationTable BuildCorrelationTable(std::span<const NodeVariable> variables);

// Long format: `var_a,var_b,method,n,r,p,stars`, one row per unordered pair
// plus the diagonal.
void WriteCorrelationTable(std::ostream& out, const CorrelationTable& table);

}  // namespace qapnet

#endif  // QAPNET_CORRELATION_H_
