#include <benchmark/benchmark.h>

#include <cmath>

#include "hsbte/finite_part.hpp"

namespace {

using namespace hsbte;

void BM_pf1_upper(benchmark::State& state) {
  fp::QuadratureSpec q{static_cast<int>(state.range(0)), 8, 1.5, false};
  fp::PfIntegrand f{[](double t) { return std::exp(-0.4 * t) * (1.0 + t); },
                    {},
                    1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(fp::pf1_upper(f, 1.0, 4.0, q));
}
BENCHMARK(BM_pf1_upper)->Arg(6)->Arg(12)->Arg(24);

void BM_pf2_upper(benchmark::State& state) {
  fp::QuadratureSpec q{static_cast<int>(state.range(0)), 8, 1.5, false};
  fp::PfIntegrand f{[](double t) { return std::exp(-0.4 * t) * (1.0 + t); },
                    [](double t) {
                      return std::exp(-0.4 * t) * (0.6 - 0.4 * t);
                    },
                    1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(fp::pf2_upper(f, 1.0, 4.0, q));
}
BENCHMARK(BM_pf2_upper)->Arg(6)->Arg(12)->Arg(24);

void BM_pf2_sqrt_substitution(benchmark::State& state) {
  fp::QuadratureSpec q{8, 8, 1.5, state.range(0) != 0};
  fp::PfIntegrand f{[](double t) { return 1.0 + std::sqrt(t - 1.0) * t; },
                    [](double t) {
                      return std::sqrt(t - 1.0) +
                             (t > 1.0 ? 0.5 * t / std::sqrt(t - 1.0) : 0.0);
                    },
                    0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(fp::pf1_upper(f, 1.0, 4.0, q));
}
BENCHMARK(BM_pf2_sqrt_substitution)->Arg(0)->Arg(1);

}  // namespace
