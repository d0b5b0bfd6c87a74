#include <benchmark/benchmark.h>

#include "slsched/exact.hpp"
#include "slsched/gapcc.hpp"
#include "slsched/instgen.hpp"
#include "slsched/pipelines.hpp"
#include "slsched/scheduler.hpp"

using namespace slsched;

namespace {

Instance make(int level, std::size_t J, std::size_t I, bool unit) {
	GeneratorConfig c = GeneratorConfig::defaults();
	c.level = level;
	c.num_clients = J;
	c.num_helpers = I;
	c.seed = 7;
	c.unit_demand = unit;
	return generate(c);
}

void BM_EquiD(benchmark::State& state) {
	const Instance inst = make(3, static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), false);
	for (auto _ : state)
		benchmark::DoNotOptimize(run_equid(inst, {}));
}
BENCHMARK(BM_EquiD)->Args({10, 2})->Args({15, 5})->Args({20, 5})->Unit(benchmark::kMillisecond);

void BM_Approx5(benchmark::State& state) {
	const Instance inst = make(4, static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), true);
	for (auto _ : state)
		benchmark::DoNotOptimize(run_approx5(inst));
}
BENCHMARK(BM_Approx5)->Args({10, 2})->Args({40, 5})->Unit(benchmark::kMillisecond);

void BM_StragglerFirst(benchmark::State& state) {
	const Instance inst = make(4, static_cast<std::size_t>(state.range(0)), 5, false);
	const auto a = bg_assign(inst);
	for (auto _ : state)
		benchmark::DoNotOptimize(schedule_straggler_first(inst, *a));
}
BENCHMARK(BM_StragglerFirst)->Arg(40)->Arg(400);

void BM_Oracle(benchmark::State& state) {
	const Instance inst = make(4, static_cast<std::size_t>(state.range(0)), 2, false);
	for (auto _ : state)
		benchmark::DoNotOptimize(oracle_opt(inst, {}));
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
