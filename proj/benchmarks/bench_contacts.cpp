#include <benchmark/benchmark.h>

#include <vector>

#include "oppsim/dissemination.hpp"
#include "oppsim/rng.hpp"

namespace oppsim {
namespace {

std::vector<Position> random_layout(int n, double side) {
  RngStream stream(3, "layout");
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back({stream.uniform(0.0, side), stream.uniform(0.0, side)});
  }
  return out;
}

void BM_ScanContactsGrid(benchmark::State& state) {
  const auto positions =
      random_layout(static_cast<int>(state.range(0)), 3000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_contacts(positions, 30.0));
  }
}
BENCHMARK(BM_ScanContactsGrid)->Arg(200)->Arg(1000)->Arg(2000);

// The quadratic reference the grid is checked against in the tests.
void BM_ScanContactsAllPairs(benchmark::State& state) {
  const auto positions =
      random_layout(static_cast<int>(state.range(0)), 3000.0);
  for (auto _ : state) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      for (std::size_t j = i + 1; j < positions.size(); ++j) {
        if (distance(positions[i], positions[j]) <= 30.0) {
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    benchmark::DoNotOptimize(pairs);
  }
}
BENCHMARK(BM_ScanContactsAllPairs)->Arg(200)->Arg(1000)->Arg(2000);

void BM_Exchange(benchmark::State& state) {
  const int msgs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    Dissemination d(2, msgs);
    for (int m = 0; m < msgs; m += 2) {
      d.inject(m, 0, 0.0);
    }
    for (int m = 1; m < msgs; m += 2) {
      d.inject(m, 1, 0.0);
    }
    state.ResumeTiming();
    d.exchange(0, 1, 1.0);
  }
}
BENCHMARK(BM_Exchange)->Arg(256)->Arg(4096);

}  // namespace
}  // namespace oppsim
