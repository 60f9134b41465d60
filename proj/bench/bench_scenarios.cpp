// Serial vs OpenMP scenario subproblems at a fixed reschedule, and full
// L-shaped runs per worker count.

#include <benchmark/benchmark.h>

#include "fsched/benders.hpp"
#include "fsched/schedule_io.hpp"

using namespace fsched;

namespace {

struct Fixture {
  ConnectionNetwork net;
  std::vector<Scenario> scenarios;
  std::vector<double> shift;
  Minutes budget = 0;
};

const Fixture& hub20() {
  static const Fixture f = [] {
    Fixture f;
    f.net = build_network(load_schedule(std::string(FSCHED_DATA_DIR) + "/hub20.json"));
    DelayConfig cfg;
    f.scenarios = sample_scenarios(cfg, select_flights(f.net, cfg.strategy), f.net.num_flights());
    f.shift.assign(f.net.num_flights(), 2.0);
    f.budget = compute_budget(f.scenarios, 0.5);
    return f;
  }();
  return f;
}

void BM_ScenariosSerial(benchmark::State& state) {
  const auto& f = hub20();
  for (auto _ : state) benchmark::DoNotOptimize(solve_scenarios_serial(f.net, f.scenarios, f.shift, {}));
}
BENCHMARK(BM_ScenariosSerial)->Unit(benchmark::kMillisecond);

void BM_ScenariosParallel(benchmark::State& state) {
  const auto& f = hub20();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_scenarios_parallel(f.net, f.scenarios, f.shift, {}, workers));
}
BENCHMARK(BM_ScenariosParallel)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Tsm(benchmark::State& state) {
  const auto& f = hub20();
  TsmOptions opt;
  opt.budget = f.budget;
  opt.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_tsm(f.net, f.scenarios, opt));
}
BENCHMARK(BM_Tsm)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
