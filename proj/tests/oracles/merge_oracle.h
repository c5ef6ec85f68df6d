// Pairwise merge scan: repeatedly fuses any two events of the same dyad whose
// silence is at most `gap`, until no pair qualifies. Quadratic per pass and
// independent of sort order.
#ifndef QAPNET_TESTS_ORACLES_MERGE_ORACLE_H_
#define QAPNET_TESTS_ORACLES_MERGE_ORACLE_H_

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

namespace qapnet::oracle {

struct Span {
  int sample;
  std::size_t a, b;
  std::int64_t start, end;

  bool operator<(const Span& o) const {
    return std::tie(sample, a, b, start, end) < std::tie(o.sample, o.a, o.b, o.start, o.end);
  }
  bool operator==(const Span& o) const = default;
};

inline std::vector<Span> PairwiseMerge(std::vector<Span> events, std::int64_t gap) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < events.size() && !changed; ++x)
      for (std::size_t y = 0; y < events.size() && !changed; ++y) {
        if (x == y) continue;
        auto& e = events[x];
        auto& f = events[y];
        if (e.sample != f.sample || e.a != f.a || e.b != f.b) continue;
        // f follows e (or overlaps it) with a silence of at most gap.
        if (f.start >= e.start && f.start - e.end <= gap) {
          e.end = std::max(e.end, f.end);
          events.erase(events.begin() + static_cast<std::ptrdiff_t>(y));
          changed = true;
        }
      }
  }
  std::sort(events.begin(), events.end());
  return events;
}

}  // namespace qapnet::oracle

#endif  // QAPNET_TESTS_ORACLES_MERGE_ORACLE_H_
