#include <benchmark/benchmark.h>

#include "oppsim/kernel.hpp"
#include "oppsim/rng.hpp"

namespace oppsim {
namespace {

void BM_ScheduleAndDispatch(benchmark::State& state) {
  const int events = static_cast<int>(state.range(0));
  RngStream stream(11, "times");
  for (auto _ : state) {
    EventQueue q;
    for (int i = 0; i < events; ++i) {
      q.schedule(stream.uniform(0.0, 1000.0), "e", [] {});
    }
    benchmark::DoNotOptimize(q.run_until(1000.0));
  }
  state.SetItemsProcessed(state.iterations() * events);
}
BENCHMARK(BM_ScheduleAndDispatch)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace oppsim

BENCHMARK_MAIN();
