#include <benchmark/benchmark.h>

#include "hilbert/eisenstein.hpp"
#include "hilbert/equidist.hpp"
#include "hilbert/specfun.hpp"
#include "hilbert/zeta.hpp"

using namespace hilbert;

namespace {

const ZetaContext& context(long d) {
  static const ZetaContext q(make_field(0)), golden(make_field(5)), gauss(make_field(-1));
  return d == 0 ? q : (d == 5 ? golden : gauss);
}

Point sample_point(const FieldData& f) {
  if (f.is_rational()) return make_point(f, {{Complex(0.28, 0.0), 1.3}});
  if (f.is_real_quadratic()) return make_point(f, {{Complex(0.21, 0.0), 1.1}, {Complex(-0.33, 0.0), 0.9}});
  return make_point(f, {{Complex(0.21, 0.13), 1.1}});
}

void BM_BesselK(benchmark::State& state) {
  const Complex s(0.5, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_k(s, 1.7));
}
BENCHMARK(BM_BesselK)->Arg(0)->Arg(4)->Arg(20)->Arg(80);

void BM_DedekindZeta(benchmark::State& state) {
  const ZetaContext& ctx = context(state.range(0));
  const Complex s(1.5, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(dedekind_zeta(ctx, s));
}
BENCHMARK(BM_DedekindZeta)->Arg(0)->Arg(5)->Arg(-1);

void BM_EisensteinFourier(benchmark::State& state) {
  const ZetaContext& ctx = context(state.range(0));
  const Point z = sample_point(ctx.field);
  for (auto _ : state) benchmark::DoNotOptimize(eisenstein_fourier(ctx, z, Complex(1.5, 0.5)));
}
BENCHMARK(BM_EisensteinFourier)->Arg(0)->Arg(5)->Arg(-1)->Unit(benchmark::kMillisecond);

void BM_EisensteinDirect(benchmark::State& state) {
  const ZetaContext& ctx = context(state.range(0));
  const Point z = sample_point(ctx.field);
  EisensteinParams p;
  p.s = Complex(2.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(eisenstein_direct(ctx, cusp_infinity(ctx.field), z, p));
}
BENCHMARK(BM_EisensteinDirect)->Arg(0)->Arg(5)->Arg(-1)->Unit(benchmark::kMillisecond);

void BM_SliceAverage(benchmark::State& state) {
  const ZetaContext& ctx = context(state.range(0));
  const TestFunction f = standard_test_function(ctx.field);
  for (auto _ : state) benchmark::DoNotOptimize(cusp_section_average(f, 0.125, ctx.field, 64));
}
BENCHMARK(BM_SliceAverage)->Arg(0)->Arg(5)->Arg(-1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
