#ifndef QAPNET_PERMUTATION_H_
#define QAPNET_PERMUTATION_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qapnet/dyadic_matrix.h"

namespace qapnet {

using Rng = std::mt19937_64;
using Permutation = std::vector<std::size_t>;

// Independent stream for one replicate, derived only from (seed, index) so
// replicates can run in any order or on any thread.
Rng ReplicateRng(std::uint64_t seed, std::uint64_t replicate);

bool IsBijection(std::span<const std::size_t> perm);

// Uniform permutation of 0..n-1 by Fisher-Yates.
Permutation RandomPermutation(std::size_t n, Rng& rng);

// Uniform permutation within each group; nodes never leave their group.
// Groups are shuffled in ascending label order.
Permutation GroupPermutation(std::span<const int> groups, Rng& rng);

// value'(i, j) = value(perm[i], perm[j]), mask likewise. Throws unless
// perm is a bijection of the matrix's nodes.
DyadicMatrix PermuteNodes(const DyadicMatrix& m, std::span<const std::size_t> perm);

// Draws a GroupPermutation and applies it.
DyadicMatrix MultigroupPermute(const DyadicMatrix& m, std::span<const int> groups,
                               Rng& rng);

}  // namespace qapnet

#endif  // QAPNET_PERMUTATION_H_
