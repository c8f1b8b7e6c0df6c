#include "hilbert/zeta.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <numbers>

#include "hilbert/errors.hpp"
#include "hilbert/quadrature.hpp"
#include "hilbert/specfun.hpp"

namespace hilbert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kEulerMaclaurinTerms = 18;

// B_{2j}/(2j)! for j = 1..kEulerMaclaurinTerms.
const std::vector<double>& em_coefficients() {
  static const std::vector<double> c = [] {
    std::vector<double> v;
    for (int j = 1; j <= kEulerMaclaurinTerms; ++j)
      v.push_back(boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(2 * j));
    return v;
  }();
  return c;
}

Complex cpow_real(double base, Complex e) { return std::exp(e * std::log(base)); }

// Σ_{i=0}^{e} p^{i·u}
Complex geometric(double p, Complex u, long e) {
  Complex r = cpow_real(p, u), acc = 0.0, term = 1.0;
  for (long i = 0; i <= e; ++i) {
    acc += term;
    term *= r;
  }
  return acc;
}

}  // namespace

ZetaContext::ZetaContext(FieldData f, long n_coeffs) : field(std::move(f)) {
  coeffs = ideal_count_coeffs(field, n_coeffs);
  character.resize(static_cast<std::size_t>(field.D));
  if (field.is_rational()) {
    character[0] = 1;
  } else {
    for (long n = 0; n < field.D; ++n) character[n] = n == 0 ? 0 : kronecker(field.disc(), n);
  }
}

Complex hurwitz_zeta(Complex s, double a) {
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta needs a > 0");
  if (s == Complex(1.0, 0.0)) throw PoleAtOne("hurwitz_zeta pole at s = 1");
  const long shift = std::max(0L, static_cast<long>(std::ceil(std::abs(s) + 25.0 - a)));
  PairwiseSum<Complex> head;
  for (long k = 0; k < shift; ++k) head.add(cpow_real(k + a, -s));
  const double x = shift + a;
  const double lx = std::log(x);
  Complex acc = head.total();
  acc += std::exp((1.0 - s) * lx) / (s - 1.0);
  acc += 0.5 * std::exp(-s * lx);
  // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
  Complex poch = s;
  Complex xp = std::exp((-s - 1.0) * lx);
  const double inv_x2 = 1.0 / (x * x);
  const auto& c = em_coefficients();
  for (int j = 0; j < kEulerMaclaurinTerms; ++j) {
    Complex term = c[j] * poch * xp;
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
    poch *= (s + double(2 * j + 1)) * (s + double(2 * j + 2));
    xp *= inv_x2;
  }
  return acc;
}

// Left of the critical strip the Euler–Maclaurin head cancels badly, so
// both functions below reflect to Re s > 1 there.
Complex riemann_zeta(Complex s) {
  if (s.real() >= 0.0) return hurwitz_zeta(s, 1.0);
  return std::pow(Complex(2.0, 0.0), s) * std::pow(Complex(kPi, 0.0), s - 1.0) * std::sin(0.5 * kPi * s) *
         gamma(1.0 - s) * hurwitz_zeta(1.0 - s, 1.0);
}

Complex dirichlet_l(const ZetaContext& ctx, Complex s) {
  const long f = ctx.modulus();
  if (f == 1) return 1.0;
  if (s.real() < 0.0) {
    // Λ(s, χ) = (f/π)^{(s+κ)/2} Γ((s+κ)/2) L(s, χ) is symmetric under s ↦ 1 − s
    // for a real primitive character; κ = 1 when χ is odd.
    const double kappa = ctx.chi(f - 1) == -1 ? 1.0 : 0.0;
    const Complex h = 0.5 * (s + kappa);
    if (h.imag() == 0.0 && h.real() <= 0.0 && h.real() == std::floor(h.real())) return 0.0;  // trivial zero
    const Complex h1 = 0.5 * (1.0 - s + kappa);
    const Complex log_ratio = (h1 - h) * std::log(double(f) / kPi);
    return std::exp(log_ratio) * gamma(h1) / gamma(h) * dirichlet_l(ctx, 1.0 - s);
  }
  PairwiseSum<Complex> sum;
  for (long a = 1; a < f; ++a) {
    int x = ctx.chi(a);
    if (x != 0) sum.add(double(x) * hurwitz_zeta(s, double(a) / double(f)));
  }
  return cpow_real(double(f), -s) * sum.total();
}

Complex dedekind_zeta(const ZetaContext& ctx, Complex s, ZetaMethod method) {
  if (s == Complex(1.0, 0.0)) throw PoleAtOne("dedekind_zeta pole at s = 1");
  if (method == ZetaMethod::Factorized) return riemann_zeta(s) * dirichlet_l(ctx, s);

  const long N = static_cast<long>(ctx.coeffs.size());
  PairwiseSum<Complex> head;
  for (long n = 1; n <= N; ++n)
    if (ctx.coeffs[n - 1] != 0) head.add(double(ctx.coeffs[n - 1]) * cpow_real(double(n), -s));
  if (ctx.field.is_rational()) return head.total() + hurwitz_zeta(s, double(N + 1));

  // Tail Σ_{dm>N} χ(d)(dm)^{−s}: for d ≤ N the inner sum over m > ⌊N/d⌋ is a
  // Hurwitz tail; the d > N part factors as ζ(s)·Σ_{d>N} χ(d)d^{−s}.
  PairwiseSum<Complex> tail;
  long cached_m = -1;
  Complex cached_h = 0.0;
  for (long d = 1; d <= N; ++d) {
    int x = ctx.chi(d);
    if (x == 0) continue;
    long m = N / d;
    if (m != cached_m) {
      cached_m = m;
      cached_h = hurwitz_zeta(s, double(m + 1));
    }
    tail.add(double(x) * cpow_real(double(d), -s) * cached_h);
  }
  const long f = ctx.modulus();
  PairwiseSum<Complex> ltail;
  for (long r = 1; r <= f; ++r) {
    int x = ctx.chi(N + r);
    if (x != 0) ltail.add(double(x) * hurwitz_zeta(s, double(N + r) / double(f)));
  }
  Complex far = riemann_zeta(s) * cpow_real(double(f), -s) * ltail.total();
  return head.total() + tail.total() + far;
}

Complex gamma_factor(const FieldData& field, Complex s) {
  Complex v = std::exp(-double(field.r2) * s * std::log(2.0) + 0.5 * s * std::log(double(field.D)) -
                       0.5 * double(field.n) * s * std::log(kPi));
  if (field.r1 > 0) v *= std::pow(gamma(0.5 * s), field.r1);
  if (field.r2 > 0) v *= std::pow(gamma(s), field.r2);
  return v;
}

Complex completed_zeta(const ZetaContext& ctx, Complex s) {
  if (s == Complex(0.0, 0.0) || s == Complex(1.0, 0.0)) throw PoleAtZeroOrOne("completed zeta pole");
  try {
    return gamma_factor(ctx.field, s) * dedekind_zeta(ctx, s);
  } catch (const PoleAtNonPositiveInteger&) {
    // Γ(s/2) has a pole where ζ_K has a trivial zero; use the reflected point.
    return gamma_factor(ctx.field, 1.0 - s) * dedekind_zeta(ctx, 1.0 - s);
  }
}

Complex phi(const ZetaContext& ctx, Complex s) {
  if (s == Complex(1.0, 0.0)) throw ScatteringPole("phi pole at s = 1");
  if (s == Complex(0.5, 0.0)) return -1.0;
  if (s == Complex(0.0, 0.0)) return 0.0;
  Complex den = completed_zeta(ctx, 2.0 * s);
  if (den == Complex(0.0, 0.0)) throw ScatteringPole("completed zeta vanishes at 2s");
  return completed_zeta(ctx, 2.0 * s - 1.0) / den;
}

std::vector<long> ideal_counts_by_convolution(const FieldData& field, long N) {
  std::vector<long> a(static_cast<std::size_t>(N), 0);
  for (long d = 1; d <= N; ++d) {
    int x = field.is_rational() ? 1 : kronecker(field.disc(), d);
    if (x == 0) continue;
    for (long n = d; n <= N; n += d) a[n - 1] += x;
  }
  if (field.is_rational())
    for (long n = 1; n <= N; ++n) a[n - 1] = 1;
  return a;
}

Complex tau_divisor_sum(const FieldData& field, const OInt& beta, Complex u) {
  if (beta.is_zero()) throw ZeroFrequency("tau_divisor_sum needs l != 0");
  long long nrm = norm(field, beta);
  if (nrm < 0) nrm = -nrm;
  const double total_norm = double(nrm);
  Complex prod = 1.0;
  long long rest = nrm;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    long e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (field.is_rational() || field.D % p == 0) {
      prod *= geometric(double(p), u, e);
    } else if (kronecker(field.disc(), static_cast<long>(p)) == -1) {
      prod *= geometric(double(p) * double(p), u, e / 2);
    } else {
      long k = 0;
      long long pk = p;
      while (k < e && divisible(beta, pk)) {
        ++k;
        pk *= p;
      }
      prod *= geometric(double(p), u, k) * geometric(double(p), u, e - k);
    }
  }
  if (rest > 1) {
    const long long p = rest;
    if (field.is_rational() || field.D % p == 0 || kronecker(field.disc(), static_cast<long>(p)) != -1)
      prod *= geometric(double(p), u, 1);
    else
      throw DomainError("inert prime with odd exponent in a norm");
  }
  return prod * cpow_real(total_norm, -0.5 * u);
}

Complex tau_divisor_sum(const ZetaContext& ctx, const FieldElement& l, Complex u) {
  if (l.is_zero()) throw ZeroFrequency("tau_divisor_sum needs l != 0");
  const FieldData& f = ctx.field;
  FieldElement beta = f.is_rational() ? l : l * f.different_gen;
  if (!is_integral(f, beta)) throw DomainError("frequency is not in the inverse different");
  return tau_divisor_sum(f, to_oint(f, beta), u);
}

}  // namespace hilbert
