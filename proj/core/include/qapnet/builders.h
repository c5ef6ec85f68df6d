#ifndef QAPNET_BUILDERS_H_
#define QAPNET_BUILDERS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qapnet/dyadic_matrix.h"
#include "qapnet/panel.h"

namespace qapnet {

// Dyadic covariates built from node attributes. A cell is missing whenever
// either node's value is missing; all outputs are symmetric.

// (v_i + v_j) / 2
DyadicMatrix MeanMatrix(const NumericValues& v);

// ((v_i - m) + (v_j - m)) / 2 where m is the mean of the observed values in
// the node's group. Throws when no value is observed at all.
DyadicMatrix CenteredMeanMatrix(const NumericValues& v, std::span<const int> groups);

// -|v_i - v_j|; 0 means identical values.
DyadicMatrix SimilarityMatrix(const NumericValues& v);

// Per-node "has this level" flags; unset where the attribute is missing.
// Numeric attributes compare numerically against the parsed level. Throws
// when no node carries the level unless `require_present` is false.
std::vector<std::optional<bool>> LevelIndicator(const NodePanel& panel,
                                                const std::string& attribute,
                                                const std::string& level,
                                                bool require_present = true);

// 1 iff at least one / both / exactly one node has the level.
DyadicMatrix DummyAny(std::span<const std::optional<bool>> has_level);
DyadicMatrix DummyBoth(std::span<const std::optional<bool>> has_level);
DyadicMatrix DummyExactlyOne(std::span<const std::optional<bool>> has_level);

// 1 iff both nodes share the same category.
DyadicMatrix SameCategory(const CategoricalValues& values);

// 1 iff at least one direction is nominated. A single observed nomination
// suffices even when the reverse row is missing; a 0 is only reported when
// both directions are observed.
DyadicMatrix SymmetrizeOr(const NominationNetwork& network);
// 1 iff both directions are nominated; missing unless decidable.
DyadicMatrix MutualMatrix(const NominationNetwork& network);
// 1 iff exactly one direction is nominated; missing unless both rows are
// observed.
DyadicMatrix AsymmetricMatrix(const NominationNetwork& network);

// Elementwise product; a cell is missing if it is missing in either input.
DyadicMatrix ProductMatrix(const DyadicMatrix& a, const DyadicMatrix& b);

// ln(x + offset) on observed cells. Throws if any observed x + offset <= 0.
DyadicMatrix LogTransform(const DyadicMatrix& m, double offset = 1.0);

// Unordered dyads {i<j} retained after listwise deletion.
class DyadInclusion {
 public:
  DyadInclusion() = default;
  explicit DyadInclusion(std::size_t n) : n_(n), included_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::size_t count() const { return count_; }
  bool Included(std::size_t i, std::size_t j) const {
    return i < j ? included_[i * n_ + j] != 0 : included_[j * n_ + i] != 0;
  }
  void Include(std::size_t i, std::size_t j);

 private:
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> included_;
};

// A dyad is kept iff no matrix masks it (in either direction). With group
// labels, only dyads inside one group are candidates.
DyadInclusion ListwiseDelete(std::span<const DyadicMatrix* const> matrices,
                             std::span<const int> groups = {});

}  // namespace qapnet

#endif  // QAPNET_BUILDERS_H_
