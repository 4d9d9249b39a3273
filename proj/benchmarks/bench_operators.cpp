#include <benchmark/benchmark.h>

#include "hsbte/config.hpp"
#include "hsbte/csda.hpp"
#include "hsbte/transport.hpp"

namespace {

using namespace hsbte;
using sph::Vec3;

struct Fixture {
  cfg::RunConfig config;
  tr::TransportContext tctx = config.transport_context();
  fld::TestField harmonic =
      fld::field_by_id("a1*Y22*cm2", config.space.E0, config.space.Em);
  fld::TestField generic = [this] {
    fld::TestField g = harmonic;
    g.harmonic_degree.reset();
    return g;
  }();
  Vec3 x{0.2, -0.1, 0.3};
  Vec3 w = Vec3(0.3, 0.5, 0.9).normalized();
  double E = 2.1;
};

void BM_circle_average_fast(benchmark::State& state) {
  Fixture f;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        coll::circle_average(f.harmonic, f.x, f.w, 3.0, f.E, 3.0, f.tctx.coll));
}
BENCHMARK(BM_circle_average_fast);

void BM_circle_average_trapezoid(benchmark::State& state) {
  Fixture f;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        coll::circle_average(f.generic, f.x, f.w, 3.0, f.E, 3.0, f.tctx.coll));
}
BENCHMARK(BM_circle_average_trapezoid);

void BM_hadamard_collision(benchmark::State& state) {
  Fixture f;
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        coll::hadamard_collision(f.harmonic, f.x, f.w, f.E, order, f.tctx.coll));
}
BENCHMARK(BM_hadamard_collision)->Arg(1)->Arg(2);

void BM_transport_apply(benchmark::State& state) {
  Fixture f;
  const auto form = static_cast<tr::Form>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        tr::transport_apply(f.harmonic, f.x, f.w, f.E, f.tctx, form));
}
BENCHMARK(BM_transport_apply)->Arg(0)->Arg(1)->Arg(2);

void BM_csda_apply(benchmark::State& state) {
  Fixture f;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        csda::csda_apply(f.harmonic, f.x, f.w, f.E, 1.125, f.tctx.coll));
}
BENCHMARK(BM_csda_apply);

void BM_adjoint_A2(benchmark::State& state) {
  Fixture f;
  fld::TestField v =
      fld::field_by_id("a0*Y10*cp1", f.config.space.E0, f.config.space.Em);
  for (auto _ : state)
    benchmark::DoNotOptimize(tr::adjoint_A2_apply(v, f.x, f.w, 2.5, f.tctx));
}
BENCHMARK(BM_adjoint_A2);

}  // namespace
