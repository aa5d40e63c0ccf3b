#include <benchmark/benchmark.h>

#include "oppsim/mobility.hpp"

namespace oppsim {
namespace {

void BM_NextDestination(benchmark::State& state) {
  MobilityParams params;
  params.cell_size_m = 100.0;
  const Mobility mob(params, Area{3000.0, 3000.0});  // 30x30 cells
  RngStream stream(5, "mobility.node_0");
  MobilityState node = mob.make_state(0, stream);
  node.seen_counts[42] = 10.0;
  node.seen_counts[101] = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mob.next_destination(node, stream));
  }
}
BENCHMARK(BM_NextDestination);

void BM_AdvanceTick(benchmark::State& state) {
  MobilityParams params;
  const Mobility mob(params, Area{1000.0, 1000.0});
  RngStream stream(6, "mobility.node_0");
  MobilityState node = mob.make_state(0, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mob.advance(node, 10.0, stream));
  }
}
BENCHMARK(BM_AdvanceTick);

}  // namespace
}  // namespace oppsim
