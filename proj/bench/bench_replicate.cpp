// Serial reference vs OpenMP replication kernel on the stopping-time and
// F(1/3) workloads.
#include <benchmark/benchmark.h>

#include "epspy/epsilon_py.hpp"
#include "epspy/functionals.hpp"
#include "epspy/replicate.hpp"

namespace {

using namespace epspy;

const PYParams kCell{0.5, 1.0, 0.01};

double tau_draw(RngStream& rng) { return static_cast<double>(sample_tau_exact(kCell, rng)); }

double f_third_draw(RngStream& rng) {
  static const BaseMeasure base = BaseMeasure::uniform01();
  return cdf_eval(sample_exact(kCell, base, rng), 1.0 / 3.0);
}

template <double (*Draw)(RngStream&)>
void serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(replicate_serial(n, 7, Draw));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <double (*Draw)(RngStream&)>
void parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(replicate_parallel(n, 7, Draw));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(serial<tau_draw>)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<tau_draw>)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(serial<f_third_draw>)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<f_third_draw>)->Arg(10'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
