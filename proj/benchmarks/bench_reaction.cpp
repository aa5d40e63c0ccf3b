#include <benchmark/benchmark.h>

#include "oppsim/reaction.hpp"
#include "oppsim/rng.hpp"

namespace oppsim {
namespace {

void BM_DrawReaction(benchmark::State& state) {
  const std::vector<double> base{0.80, 0.15, 0.045, 0.005};
  RngStream stream(1, "bench");
  const double lb = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_reaction(base, lb, stream));
  }
}
BENCHMARK(BM_DrawReaction)->Arg(0)->Arg(50)->Arg(100);

void BM_PrecomputeAll(benchmark::State& state) {
  const int users_n = static_cast<int>(state.range(0));
  const int msgs_n = static_cast<int>(state.range(1));

  std::vector<UserProfile> users(static_cast<std::size_t>(users_n));
  for (int i = 0; i < users_n; ++i) {
    users[static_cast<std::size_t>(i)].user_id = i;
    users[static_cast<std::size_t>(i)].base = {0.90, 0.095, 0.005};
    users[static_cast<std::size_t>(i)].reactions.labels = {"ignore", "vote",
                                                           "save"};
  }
  std::vector<Message> msgs(static_cast<std::size_t>(msgs_n));
  for (int i = 0; i < msgs_n; ++i) {
    msgs[static_cast<std::size_t>(i)].msg_id = i;
    msgs[static_cast<std::size_t>(i)].popularity = (i % 10 == 0) ? 50 : 0;
  }

  for (auto _ : state) {
    RngStream stream(7, "precompute");
    benchmark::DoNotOptimize(precompute_all(users, msgs, 0.5, stream));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(users_n) * msgs_n);
}
BENCHMARK(BM_PrecomputeAll)->Args({200, 250})->Args({750, 3750});

}  // namespace
}  // namespace oppsim
