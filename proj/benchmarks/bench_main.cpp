#include <benchmark/benchmark.h>

#include <random>

#include "singlab/catalog.hpp"
#include "singlab/preset.hpp"

using namespace singlab;

namespace {

Ideal cubic27() {
  const auto inst = cubic_curve_family(7);
  return singular_ideal(inst.refined.at(Rational(1, 1000)));
}

void BM_buchberger_cubic27(benchmark::State& state) {
  const Ideal ideal = cubic27();
  for (auto _ : state) {
    benchmark::DoNotOptimize(buchberger(ideal, MonomialOrder::grevlex()));
  }
}
BENCHMARK(BM_buchberger_cubic27);

void BM_solve_cubic27(benchmark::State& state) {
  const Ideal ideal = cubic27();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_points(ideal));
  }
}
BENCHMARK(BM_solve_cubic27);

void BM_multiplication_matrices27(benchmark::State& state) {
  const GroebnerBasis basis = buchberger(cubic27(), MonomialOrder::grevlex());
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplication_matrices(basis));
  }
}
BENCHMARK(BM_multiplication_matrices27);

void BM_schur_random(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = cplx(u(rng), u(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_decompose(a));
  }
}
BENCHMARK(BM_schur_random)->Arg(16)->Arg(27)->Arg(64);

void BM_classify_line_family(benchmark::State& state) {
  const auto [fam, pred] = line_family(line_family_generic(2, 7));
  const TSchedule sched = line_family_schedule(2);
  const CompleteIntersection w = line_family_w();
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_limits(fam, sched, w));
  }
}
BENCHMARK(BM_classify_line_family);

void BM_nu_preset(benchmark::State& state) {
  const Preset preset = *builtin_preset("p3-line");
  for (auto _ : state) {
    benchmark::DoNotOptimize(nu_value(preset.setup(3), preset.table));
  }
}
BENCHMARK(BM_nu_preset);

}  // namespace

BENCHMARK_MAIN();
