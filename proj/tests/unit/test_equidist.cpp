#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "hilbert/equidist.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/quadrature.hpp"
#include "support.hpp"

using namespace hilbert;
using testing::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

Point point1(const FieldData& f, double x, double y) { return make_point(f, {PlaceCoord{Complex(x, 0), y}}); }

TestFunction with_profile(const FieldData& f, BumpProfile p) {
  auto t = standard_test_function(f);
  t.profile = p;
  return t;
}

// Σ over ideals 𝔠 of norm n of |(𝔬/𝔠)^×|, for ℚ or ℚ(√5).
double unit_group_sizes(long n, bool golden) {
  double r = 1;
  long m = n;
  for (long p = 2; m > 1; ++p) {
    if (p * p > m) p = m;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (!e) continue;
    const double pe = std::pow(double(p), e);
    const int chi = !golden || p == 5 ? 0 : (p % 5 == 1 || p % 5 == 4 ? 1 : -1);
    if (chi == 0) {
      r *= pe * (1 - 1.0 / p);
    } else if (chi == -1) {
      if (e % 2) return 0;
      r *= pe * (1 - 1.0 / (double(p) * p));
    } else {
      double s = 0;
      for (int a = 0; a <= e; ++a) {
        const int b = e - a;
        const double fa = a ? std::pow(double(p), a) * (1 - 1.0 / p) : 1;
        const double fb = b ? std::pow(double(p), b) * (1 - 1.0 / p) : 1;
        s += fa * fb;
      }
      r *= s;
    }
  }
  return r;
}

// Slice average by unfolding the cusp sum: every other cusp (d : −c) contributes
// q·G(N(c)²q)/√D, summed over ideals 𝔠 = (c) weighted by the number of d mod 𝔠.
double unfolded_slice(const BumpProfile& psi, double q, bool golden) {
  // ψ(w/a) is supported on w ∈ [T0·a, T1·a]; integrate only over the band of
  // angles where cos²θ lands there, which is narrow when a is small
  auto band = [&](double lo, double hi, const auto& g) {
    const double t0 = std::acos(std::sqrt(std::min(1.0, hi))), t1 = std::acos(std::sqrt(std::min(1.0, lo)));
    return t1 > t0 ? 2 * integrate(g, t0, t1, 32, 20) : 0.0;
  };
  auto G = [&](double a) {
    if (!golden)
      return band(psi.T0 * a, psi.T1 * a, [&](double t) { const double c = std::cos(t); return psi(c * c / a) / (c * c); });
    return band(psi.T0 * a, 1.0, [&](double t1) {
      const double c1sq = std::cos(t1) * std::cos(t1);
      return band(psi.T0 * a / c1sq, psi.T1 * a / c1sq, [&](double t2) {
        const double w = c1sq * std::cos(t2) * std::cos(t2);
        return psi(w / a) / w;
      });
    });
  };
  const double sD = golden ? std::sqrt(5.0) : 1.0;
  double v = psi(q);
  // ψ vanishes below T0 = 2, so G(a) = 0 once a > ½
  for (long n = 1; double(n) * n * q <= 1.0 / psi.T0; ++n) {
    const double b = unit_group_sizes(n, golden);
    if (b != 0) v += q / sD * b * G(double(n) * n * q);
  }
  return v;
}

}  // namespace

TEST_CASE("profile") {
  const BumpProfile p;
  CHECK(p(1.9) == 0.0);
  CHECK(p(4.1) == 0.0);
  CHECK(p(3.0) == 1.0);
  CHECK(p(2.5) == doctest::Approx(1.0));
  CHECK(p(2.25) == doctest::Approx(0.5));
  for (double q = 2.0; q < 4.0; q += 0.01) CHECK((p(q) >= 0.0 && p(q) <= 1.0));
}

TEST_CASE("test function values") {
  const auto q = make_field(0);
  const auto f = standard_test_function(q);
  CHECK(eval_test_function(f, point1(q, 0.2, 3.0), q) == 1.0);
  CHECK(eval_test_function(f, point1(q, 0.3, 1.0), q) == 0.0);
  // z = (0.5, 0.1): the cusp ½ has height 2.5
  CHECK(eval_test_function(f, point1(q, 0.5, 0.1), q) == doctest::Approx(f.profile(2.5)));
  CHECK(eval_test_function(f, point1(q, 0.5, 1.0 / 12.0), q) == doctest::Approx(1.0));
}

TEST_CASE("test function is invariant") {
  std::mt19937_64 rng(59);
  for (long d : {0L, 5L, -1L}) {
    const auto F = make_field(d);
    const auto f = standard_test_function(F);
    for (int t = 0; t < 30; ++t) {
      // on the shoulder, so the value is neither 0 nor 1
      auto z = testing::random_point(F, rng, 1.0, 1.0);
      const double target = 2.1 + 0.3 * (t % 3) / std::max(1, F.places());
      for (auto& c : z.coords) c.y = std::pow(target, 1.0 / (F.places() * (c.x.imag() == 0 && F.r2 == 0 ? 1 : 2)));
      if (F.r2) z.coords[0].y = std::sqrt(target);
      const double v = eval_test_function(f, z, F);
      const auto g = testing::random_group_element(F, rng, 3);
      CAPTURE(d);
      CHECK(std::abs(eval_test_function(f, act(g, z, F), F) - v) <= 1e-10);
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("slice of a constant plateau is a probability") {
  const BumpProfile wide{1.01, 1e6, 0.001, 1.0};
  for (long d : {0L, 5L, -1L, -3L}) {
    const auto F = make_field(d);
    const auto f = with_profile(F, wide);
    for (double q : {1.02, 3.0, 250.0, 9e5}) CHECK(std::abs(cusp_section_average(f, q, F, 8) - 1.0) <= 1e-10);
  }
}

TEST_CASE("slice above the support vanishes") {
  for (long d : {0L, 5L, -1L}) {
    const auto F = make_field(d);
    CHECK(cusp_section_average(standard_test_function(F), 5.0, F, 8) == 0.0);
  }
}

TEST_CASE("rational slices equal the horocycle integral") {
  const auto F = make_field(0);
  const auto f = standard_test_function(F);
  for (double y : {0.3, 0.05, 1.0 / 64}) {
    const double direct = integrate([&](double x) { return eval_test_function(f, point1(F, x, y), F); }, 0.0, 1.0, 2048, 20);
    CHECK(std::abs(cusp_section_average_adaptive(f, y, F, 1e-11).value - direct) <= 1e-8);
  }
}

TEST_CASE("slices match the unfolded cusp sum") {
  const auto Q = make_field(0);
  for (double q : {0.125, 1.0 / 64, 1.0 / 512})
    CHECK(std::abs(cusp_section_average_adaptive(standard_test_function(Q), q, Q, 1e-9).value -
                   unfolded_slice(BumpProfile{}, q, false)) <= 1e-6);
  const auto K = make_field(5);
  for (double q : {0.25, 0.125})
    CHECK(std::abs(cusp_section_average_adaptive(standard_test_function(K), q, K, 1e-6).value -
                   unfolded_slice(BumpProfile{}, q, true)) <= 1e-4);
}

TEST_CASE("haar average") {
  const ZetaContext ctx(make_field(0));
  const auto f = standard_test_function(ctx.field);
  const double m = haar_average(f, ctx);
  const double oracle = 3 / pi * integrate_adaptive([&](double q) { return f.profile(q) / (q * q); }, 2.0, 4.0, 1e-13);
  CHECK(m == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(std::abs(haar_average_numeric(f, ctx) - m) <= 1e-5 * m);

  auto twice = f;
  twice.profile.scale = 2.0;
  CHECK(haar_average(twice, ctx) == doctest::Approx(2 * m).epsilon(1e-14));
  const auto stretched = with_profile(ctx.field, BumpProfile{4.0, 8.0, 1.0, 1.0});
  CHECK(haar_average(stretched, ctx) == doctest::Approx(m / 2).epsilon(1e-10));

  for (long d : {5L, -1L}) {
    const ZetaContext k(make_field(d));
    const auto g = standard_test_function(k.field);
    CHECK(haar_average(g, k) == doctest::Approx(residue_at_one(k) * oracle * pi / 3).epsilon(1e-10));
  }
}

TEST_CASE("Mellin transform routes") {
  const ZetaContext ctx(make_field(0));
  const auto f = standard_test_function(ctx.field);
  for (Complex s : {Complex(1.5, 0), Complex(2, 0), Complex(2.5, 0), Complex(1.8, 3)}) {
    const Complex rs = mellin_transform(f, s, ctx, MellinRoute::RankinSelberg);
    CAPTURE(s);
    CHECK(rel_err(mellin_transform(f, s, ctx, MellinRoute::Defining), rs) <= 1e-4);
    CHECK(rel_err(mellin_transform(f, s, ctx, MellinRoute::Unfolded), rs) <= 1e-6);
  }
  CHECK_THROWS_AS(mellin_transform(f, 1.0, ctx), PoleAtOne);
  CHECK_THROWS_AS(mellin_transform(f, 0.9, ctx, MellinRoute::Defining), DomainError);

  const auto zero = with_profile(ctx.field, BumpProfile{2.0, 4.0, 0.5, 0.0});
  for (auto route : {MellinRoute::RankinSelberg, MellinRoute::Unfolded, MellinRoute::Defining})
    CHECK(mellin_transform(zero, 2.0, ctx, route) == Complex(0, 0));
  CHECK(mellin_transform(zero, Complex(0.7, 5), ctx) == Complex(0, 0));
}

TEST_CASE("residue of the Mellin transform") {
  const ZetaContext ctx(make_field(0));
  const auto f = standard_test_function(ctx.field);
  const double m = haar_average(f, ctx);
  const double eps = 1e-4;
  const Complex probe = eps * mellin_transform(f, 1.0 + eps, ctx);
  const double numeric = haar_average_numeric(f, ctx);
  CHECK(std::abs(probe - m) <= 1e-3 * m);
  CHECK(std::abs(probe - numeric) <= 1e-3 * m);
  CHECK(std::abs(numeric - m) <= 1e-3 * m);
}

TEST_CASE("Rankin-Selberg sides") {
  const ZetaContext ctx(make_field(0));
  const auto f = standard_test_function(ctx.field);
  const auto r = rankin_selberg_check(f, ctx, 2.0);
  CHECK(rel_err(r.lhs, r.rhs) <= 1e-4);
  auto twice = f;
  twice.profile.scale = 2.0;
  const auto r2 = rankin_selberg_check(twice, ctx, 2.0);
  CHECK(rel_err(r2.lhs, 2.0 * r.lhs) <= 1e-9);
  CHECK(rel_err(r2.rhs, 2.0 * r.rhs) <= 1e-12);
  const auto zero = rankin_selberg_check(with_profile(ctx.field, BumpProfile{2.0, 4.0, 0.5, 0.0}), ctx, 2.0);
  CHECK(zero.lhs == Complex(0, 0));
  CHECK(zero.rhs == Complex(0, 0));
}

TEST_CASE("decay of the slice error") {
  struct Case {
    long d;
    int k_max;
  };
  for (const Case c : {Case{0, 12}, Case{5, 10}, Case{-1, 10}}) {
    const ZetaContext ctx(make_field(c.d));
    const auto rep = decay_exponent_fit(standard_test_function(ctx.field), ctx, c.d == 0 ? 3 : 2, c.k_max);
    const auto at = [&](int k) { return rep.e[static_cast<std::size_t>(k - rep.k.front())]; };
    CAPTURE(c.d);
    CHECK(at(c.k_max) <= at(4) / 4);
    CHECK_FALSE(rep.degenerate);
    for (std::size_t i = 1; i < rep.q_grid.size(); ++i) CHECK(rep.q_grid[i] < rep.q_grid[i - 1]);
    for (double e : rep.e) CHECK(e >= 0.0);
  }
}

TEST_CASE("degenerate and budget-limited fits") {
  const ZetaContext ctx(make_field(0));
  const auto zero = with_profile(ctx.field, BumpProfile{2.0, 4.0, 0.5, 0.0});
  const auto rep = decay_exponent_fit(zero, ctx, 3, 8);
  CHECK(rep.degenerate);
  for (double e : rep.e) CHECK(e == 0.0);

  FitOptions tight;
  tight.max_nodes = 16;
  CHECK_THROWS_AS(decay_exponent_fit(standard_test_function(ctx.field), ctx, 3, 12, tight), QuadratureBudgetExceeded);
}

TEST_CASE("line fit") {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{1, 3, 5, 7, 9};
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fit.ci.first == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.ci.second == doctest::Approx(2.0).epsilon(1e-12));
  // y = x + (−1)^i: slope 1 with a symmetric interval
  const auto noisy = fit_line({0, 1, 2, 3}, {1, 0, 3, 2});
  CHECK(noisy.slope == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(noisy.ci.first < 0.6);
  CHECK(noisy.ci.second > 0.6);
  CHECK(noisy.ci.second - 0.6 == doctest::Approx(0.6 - noisy.ci.first));
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DomainError);
}

TEST_CASE("vertical line scan is linear in f") {
  const ZetaContext ctx(make_field(0));
  const auto f = standard_test_function(ctx.field);
  auto twice = f;
  twice.profile.scale = 2.0;
  const auto a = vertical_line_scan(f, 0.8, 3.0, ctx, 1.0, 0.5, 1.0);
  const auto b = vertical_line_scan(twice, 0.8, 3.0, ctx, 1.0, 0.5, 1.0);
  REQUIRE(a.t.size() == 5);
  CHECK(a.t.front() == 1.0);
  for (std::size_t i = 0; i < a.t.size(); ++i) CHECK(b.value[i] == doctest::Approx(2 * a.value[i]).epsilon(1e-12));
}
