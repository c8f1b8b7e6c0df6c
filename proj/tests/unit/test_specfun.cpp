#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hilbert/errors.hpp"
#include "hilbert/specfun.hpp"
#include "support.hpp"

using namespace hilbert;
using testing::rel_err;

namespace {

const double pi = boost::math::constants::pi<double>();

// K_s(y) = ∫₀^∞ e^{−y cosh u} cosh(su) du, integrated independently.
Complex k_oracle(Complex s, double y) {
  boost::math::quadrature::exp_sinh<double> q;
  auto part = [&](bool imag) {
    return q.integrate([&](double u) {
      const double damp = std::exp(-y * std::cosh(u));
      if (damp == 0.0) return 0.0;
      const Complex v = damp * std::cosh(s * u);
      return imag ? v.imag() : v.real();
    });
  };
  return {part(false), part(true)};
}

}  // namespace

TEST_CASE("gamma special values") {
  CHECK(std::abs(gamma(Complex(1.0)) - 1.0) < 1e-14);
  CHECK(std::abs(gamma(Complex(4.0)) - 6.0) < 1e-13);
  CHECK(std::abs(gamma(Complex(0.5)) - std::sqrt(pi)) < 1e-14);
  CHECK(std::abs(gamma(Complex(0.5)) - 1.7724538509) < 1e-10);
}

TEST_CASE("gamma matches boost on the real line") {
  for (double x = -4.75; x < 30; x += 0.37) {
    CAPTURE(x);
    CHECK(rel_err(gamma(Complex(x)), boost::math::tgamma(x)) < 1e-12);
  }
}

TEST_CASE("gamma recurrence and reflection in the complex plane") {
  for (double re : {-3.3, -0.7, 0.2, 0.5, 1.9, 7.5})
    for (double im : {-12.0, -1.0, 0.3, 4.0, 25.0}) {
      const Complex s(re, im);
      CAPTURE(s);
      CHECK(rel_err(gamma(s + 1.0), s * gamma(s)) < 1e-12);
      CHECK(rel_err(gamma(s) * gamma(1.0 - s), pi / std::sin(pi * s)) < 1e-11);
      CHECK(rel_err(std::exp(log_gamma(s)), gamma(s)) < 1e-11);
      CHECK(rel_err(gamma(std::conj(s)), std::conj(gamma(s))) < 1e-14);
    }
}

TEST_CASE("gamma poles") {
  for (double n : {0.0, -1.0, -2.0, -7.0}) CHECK_THROWS_AS(gamma(Complex(n)), PoleAtNonPositiveInteger);
}

TEST_CASE("bessel K examples") {
  CHECK(std::abs(bessel_k(0.5, 1.0) - std::sqrt(pi / 2) * std::exp(-1.0)) < 1e-12);
  CHECK(std::abs(bessel_k(0.5, 1.0) - 0.4610685055) < 2e-9);  // 10-digit literal
  CHECK(std::abs(bessel_k(0.0, 2.0) - 0.1138938727) < 1e-10);
  const Complex s(0.7, 0.3);
  CHECK(rel_err(bessel_k(s, 2.0), bessel_k(-s, 2.0)) < 1e-10);
}

TEST_CASE("bessel K closed form for order one half") {
  for (double y : {0.05, 0.3, 1.0, 4.0, 20.0, 80.0})
    CHECK(rel_err(bessel_k(0.5, y), std::sqrt(pi / (2 * y)) * std::exp(-y)) < 1e-8);
}

TEST_CASE("bessel K matches boost for real orders") {
  for (double nu : {0.0, 0.25, 1.0, 2.5, 6.0, 9.5})
    for (double y : {0.05, 0.5, 1.0, 3.0, 10.0, 40.0}) {
      CAPTURE(nu);
      CAPTURE(y);
      CHECK(rel_err(bessel_k(nu, y), boost::math::cyl_bessel_k(nu, y)) < 1e-10);
    }
}

TEST_CASE("bessel K matches the defining integral for complex orders") {
  for (Complex s : {Complex(0.3, 1.0), Complex(-1.2, 4.0), Complex(2.0, -3.5)})
    for (double y : {0.2, 1.0, 6.0}) {
      CAPTURE(s);
      CAPTURE(y);
      CHECK(rel_err(bessel_k(s, y), k_oracle(s, y)) < 1e-9);
    }
}

TEST_CASE("bessel K for large imaginary order") {
  // Reference values from mpmath.besselk at 30 digits; the real-axis
  // integral cancels too badly here to serve as an oracle in double.
  struct Row {
    Complex s;
    double y;
    Complex k;
  };
  const Row rows[] = {
      {{0.5, 20}, 0.05, {1.4900360915933471e-13, 1.0139335876479304e-13}},
      {{0.5, 20}, 1.0, {-3.7672568877439708e-14, -1.6068481310324182e-14}},
      {{0.5, 20}, 6.0, {1.3800487765496737e-14, -4.9703147509095644e-15}},
      {{0.5, 99}, 0.05, {2.7715615245869459e-68, -2.2870141097887128e-67}},
      {{0.5, 99}, 1.0, {-4.7011206620182812e-68, -2.1543448193316624e-68}},
      {{0.5, 99}, 6.0, {-1.1889045610071245e-68, 1.6620785200878756e-68}},
      {{-3, 60}, 0.05, {-2.0394850810614877e-32, -1.6478043312880674e-32}},
      {{-3, 60}, 1.0, {7.2224796513715323e-37, 3.1964347527900097e-36}},
      {{-3, 60}, 6.0, {-4.797009504725739e-39, 1.4315294565020913e-38}},
      {{9.5, -40}, 0.05, {-107.13946083809176, 283.12144530565708}},
      {{9.5, -40}, 1.0, {-9.5137894102809896e-11, 9.1557719052420061e-11}},
      {{9.5, -40}, 6.0, {4.3622651254123789e-20, -5.114254446661566e-18}},
      {{0, 10}, 0.05, {4.9394534885533293e-8, 0.0}},
      {{0, 10}, 1.0, {1.1294550821681802e-7, 0.0}},
      {{0, 10}, 6.0, {-7.5812092632397223e-8, 0.0}},
  };
  for (const auto& r : rows) {
    CAPTURE(r.s);
    CAPTURE(r.y);
    CHECK(rel_err(bessel_k(r.s, r.y), r.k) <= 1e-10);
    CHECK(rel_err(bessel_k(-r.s, r.y), r.k) <= 1e-10);
  }
}

TEST_CASE("bessel K symmetry grid") {
  for (Complex s : {Complex(0.3, 0), Complex(0.5, 0.5), Complex(1.2, -2)})
    for (double y : {0.1, 1.0, 5.0}) CHECK(rel_err(bessel_k(-s, y), bessel_k(s, y)) <= 1e-10);
}

TEST_CASE("bessel K solves the modified Bessel equation") {
  const double h = 1e-4;
  for (Complex s : {Complex(0.3, 0), Complex(0.5, 0.5), Complex(1.2, -2)})
    for (double y : {0.1, 1.0, 5.0}) {
      const Complex k0 = bessel_k(s, y), kp = bessel_k(s, y + h), km = bessel_k(s, y - h);
      const Complex d2 = (kp - 2.0 * k0 + km) / (h * h), d1 = (kp - km) / (2 * h);
      const Complex res = y * y * d2 + y * d1 - (y * y + s * s) * k0;
      CAPTURE(s);
      CAPTURE(y);
      CHECK(std::abs(res) <= 1e-4 * (std::abs(k0) + 1));
    }
}

TEST_CASE("bessel K Fourier transform identity") {
  // y^s π^{−s} Γ(s) ∫ e^{2πilt}(t²+y²)^{−s} dt = 2|l|^{s−½} √y K_{s−½}(2π|l|y)
  const double s = 1.3, y = 1.0, l = 1.0;
  boost::math::quadrature::ooura_fourier_cos<double> cosine;
  const auto [integral, err] = cosine.integrate([&](double t) { return std::pow(t * t + y * y, -s); }, 2 * pi * l);
  (void)err;
  const double lhs = std::pow(y, s) * std::pow(pi, -s) * boost::math::tgamma(s) * 2 * integral;
  const Complex rhs = 2.0 * std::pow(l, s - 0.5) * std::sqrt(y) * bessel_k(s - 0.5, 2 * pi * l * y);
  CHECK(rel_err(lhs, rhs) <= 1e-6);
}

TEST_CASE("bessel K decays and stays finite") {
  const Complex s(0.8, 3.0);
  const double ref = std::abs(bessel_k(0.8, 2.0));
  for (double y : {60.0, 120.0, 400.0}) {
    const Complex k = bessel_k(s, y);
    CHECK(std::isfinite(k.real()));
    CHECK(std::abs(k) <= std::exp(-y / 2) * ref);
  }
  CHECK(rel_err(bessel_k_scaled(1.5, 300.0), boost::math::cyl_bessel_k(1.5, 300.0) * std::exp(300.0)) < 1e-10);
}

TEST_CASE("bessel K domain") {
  CHECK_THROWS_AS(bessel_k(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(0.5, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(Complex(11, 0), 1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(Complex(0, 101), 1.0), DomainError);
}

TEST_CASE("bessel product") {
  const auto q = make_field(0);
  const Complex k1 = bessel_k_product(1.0, {1.0}, {Complex(1, 0)}, q);
  CHECK(rel_err(k1, boost::math::cyl_bessel_k(1.0, 2 * pi)) < 1e-10);
  CHECK(std::abs(k1 - 9.86996e-4) < 1e-8);

  const auto gi = make_field(-1);
  const Complex k0 = bessel_k_product(0.0, {0.5}, {Complex(0, 1)}, gi);
  CHECK(rel_err(k0, boost::math::cyl_bessel_k(0.0, 2 * pi)) < 1e-10);
  CHECK(std::abs(k0 - 9.16584e-4) < 1e-8);

  const auto f5 = make_field(5);
  const Complex s(0.4, 1.0);
  const Complex prod = bessel_k_product(s, {1.0, 2.0}, {Complex(0.3, 0), Complex(-1.1, 0)}, f5);
  CHECK(rel_err(prod, bessel_k(s, 2 * pi * 0.3) * bessel_k(s, 2 * pi * 2.2)) < 1e-14);

  for (double yl : {60.0, 90.0, 200.0}) {
    const Complex big = bessel_k_product(s, {1.0}, {Complex(yl, 0)}, q);
    CHECK(std::abs(big) <= std::exp(-yl / 2) * std::abs(bessel_k(s.real(), 2.0)));
  }

  CHECK_THROWS_AS(bessel_k_product(s, {1.0, 1.0}, {Complex(1, 0), Complex(0, 0)}, f5), ZeroFrequency);
}
