// Serial reference against the OpenMP batch driver on the same problems.

#include <benchmark/benchmark.h>

#include "degloc/applications.hpp"
#include "oracles.hpp"

using namespace degloc;

namespace {

void polar_spheres(benchmark::State& state, bool parallel) {
  const int N = static_cast<int>(state.range(0));
  PolarTask task{circuit_from_strings(3, {oracle::shifted_spheres(N)}), oracle::spheres_change(), oracle::spheres_a()};
  SolveOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) {
    auto r = polar_sample_points(task, opt);
    benchmark::DoNotOptimize(r.solve.resolution.P);
  }
  auto r = polar_sample_points(task, opt);
  state.counters["primes"] = static_cast<double>(r.solve.report.primes.size());
  state.counters["degree"] = static_cast<double>(r.solve.resolution.degree());
}

void worked_example(benchmark::State& state, bool parallel) {
  auto prob = make_problem(3, {"X1^2+X2^2+X3^2"}, "X1*X2*X3", {{"X1", "X1*X2+X2^2", "X1*X3"}},
                           oracle::qmat(2, 3, {1, 2, 3, 2, 1, 3}));
  SolveOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(solve(prob, opt).resolution.P);
}

void homotopy(benchmark::State& state, bool parallel) {
  Circuit f = circuit_from_strings(2, {"X1^3 - 2*X2^2 + X1*X2 - 1", "X2^3 + X1^2 - 3"});
  Circuit g = circuit_from_strings(2, {"X1^2*X2 - 5", "X1 + X2^3 - X2"});
  SolveOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(homotopy_count(f, g, opt).count);
}

}  // namespace

BENCHMARK_CAPTURE(polar_spheres, serial, false)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(polar_spheres, openmp, true)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(worked_example, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(worked_example, openmp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(homotopy, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(homotopy, openmp, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
