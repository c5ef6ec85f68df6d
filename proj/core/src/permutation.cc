#include "qapnet/permutation.h"

#include <map>
#include <numeric>
#include <utility>

#include "qapnet/error.h"

namespace qapnet {
namespace {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void FisherYates(std::span<std::size_t> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(items[i - 1], items[pick(rng)]);
  }
}

}  // namespace

Rng ReplicateRng(std::uint64_t seed, std::uint64_t replicate) {
  std::uint64_t state = seed;
  const std::uint64_t a = SplitMix64(state);
  state ^= replicate * 0xD1B54A32D192ED03ULL;
  const std::uint64_t b = SplitMix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(replicate),
                    static_cast<std::uint32_t>(replicate >> 32)};
  return Rng(seq);
}

bool IsBijection(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

Permutation RandomPermutation(std::size_t n, Rng& rng) {
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FisherYates(perm, rng);
  return perm;
}

Permutation GroupPermutation(std::span<const int> groups, Rng& rng) {
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < groups.size(); ++i) members[groups[i]].push_back(i);
  Permutation perm(groups.size());
  for (auto& [group, nodes] : members) {
    std::vector<std::size_t> shuffled = nodes;
    FisherYates(shuffled, rng);
    for (std::size_t k = 0; k < nodes.size(); ++k) perm[nodes[k]] = shuffled[k];
  }
  return perm;
}

DyadicMatrix PermuteNodes(const DyadicMatrix& m, std::span<const std::size_t> perm) {
  if (perm.size() != m.size() || !IsBijection(perm))
    throw Error("node permutation is not a bijection on the matrix's nodes");
  DyadicMatrix out(m.size(), m.label(), m.symmetric());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = m.symmetric() ? i + 1 : 0; j < m.size(); ++j) {
      if (i == j) continue;
      if (m.missing(perm[i], perm[j]))
        out.SetMissing(i, j);
      else
        out.Set(i, j, m.value(perm[i], perm[j]));
    }
  return out;
}

DyadicMatrix MultigroupPermute(const DyadicMatrix& m, std::span<const int> groups,
                               Rng& rng) {
  if (groups.size() != m.size()) throw Error("group labels do not match matrix size");
  return PermuteNodes(m, GroupPermutation(groups, rng));
}

}  // namespace qapnet
