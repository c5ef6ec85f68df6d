#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qapnet/contacts.h"

namespace {

using qapnet::ContactEvent;

// Fragmented contact stream: `nodes` nodes in one sample, bursts of short
// fragments separated by sub-gap silences.
std::vector<ContactEvent> MakeStream(std::size_t nodes, std::size_t bursts) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> node(0, nodes - 1);
  std::uniform_int_distribution<std::int64_t> start(0, 36 * 3600), piece(1, 60), silence(1, 120);
  std::uniform_int_distribution<int> fragments(1, 8);
  std::vector<ContactEvent> out;
  for (std::size_t b = 0; b < bursts; ++b) {
    const std::size_t a = node(rng), c = node(rng);
    if (a == c) continue;
    std::int64_t t = start(rng);
    for (int k = fragments(rng); k > 0; --k) {
      const auto len = piece(rng);
      out.push_back(qapnet::MakeContact(0, a, c, t, t + len));
      t += len + silence(rng);
    }
  }
  return out;
}

void BM_MergeEvents(benchmark::State& state) {
  const auto events = MakeStream(73, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto merged = qapnet::MergeEvents(events);
    benchmark::DoNotOptimize(merged);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_MergeEvents)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ClassifyCopresence(benchmark::State& state) {
  const auto events = qapnet::MergeEvents(MakeStream(73, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    auto result = qapnet::ClassifyCopresence(events, 73);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_ClassifyCopresence)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ClassifyCopresenceClique(benchmark::State& state) {
  const auto events = qapnet::MergeEvents(MakeStream(73, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    auto result = qapnet::ClassifyCopresence(events, 73, qapnet::GroupRule::kClique);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_ClassifyCopresenceClique)->Arg(10000);

}  // namespace
