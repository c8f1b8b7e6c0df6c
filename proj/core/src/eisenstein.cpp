#include "hilbert/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hilbert/errors.hpp"
#include "hilbert/quadrature.hpp"
#include "hilbert/specfun.hpp"

namespace hilbert {

namespace {

constexpr double kPi = std::numbers::pi;

// Direct sums weight a term with 1/μ = a by w(a/B): 1 below kWeightStart,
// 0 above 1, smooth in between.
constexpr double kWeightStart = 0.25;

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double cutoff_weight(double t) { return 1.0 - smooth_step((t - kWeightStart) / (1.0 - kWeightStart)); }

// ∫₀^∞ t^{−s}(1 − w(t)) dt
Complex weight_tail_integral(Complex s) {
  Complex mid = integrate_complex(
      [&](double t) { return std::exp(-s * std::log(t)) * (1.0 - cutoff_weight(t)); }, kWeightStart, 1.0, 16, 24);
  return mid + 1.0 / (s - 1.0);
}

Complex cpow(double base, Complex e) { return std::exp(e * std::log(base)); }

std::vector<double> y_vector(const Point& z) {
  std::vector<double> y;
  for (const auto& c : z.coords) y.push_back(c.y);
  return y;
}

}  // namespace

double default_norm_bound(const FieldData& field, double sigma) {
  const double excess = std::max(sigma - 0.25, 0.5);
  if (field.is_rational()) return std::clamp(std::pow(10.0, 8.5 / excess), 1e3, 4e6);
  return std::clamp(std::pow(10.0, 8.0 / excess), 1e3, 1e6);
}

double cusp_constant(const FieldData& f) {
  return std::ldexp(1.0, f.r1 - f.r2) * std::sqrt(double(f.D)) * f.R * f.h / f.omega;
}

double orbifold_volume(const ZetaContext& ctx) {
  const FieldData& f = ctx.field;
  return std::ldexp(1.0, 1 - 3 * f.r2) * std::pow(kPi, -f.n) * std::pow(double(f.D), 1.5) *
         dedekind_zeta(ctx, 2.0).real();
}

double residue_at_one(const ZetaContext& ctx) { return cusp_constant(ctx.field) / orbifold_volume(ctx); }

DirectSum eisenstein_direct_multi(const ZetaContext& ctx, const Point& z, const std::vector<Complex>& s,
                                  double bound) {
  const FieldData& f = ctx.field;
  double sigma_min = 1e300;
  for (const Complex& v : s) {
    if (v.real() <= 1.0) throw NotConvergent("direct Eisenstein sum needs Re s > 1");
    sigma_min = std::min(sigma_min, v.real());
  }
  if (bound <= 0.0) bound = default_norm_bound(f, sigma_min);
  // The first non-trivial terms sit near 1/μ ≈ N(y); scale the cutoff with it.
  const double B = bound * std::max(1.0, z.norm_y(f));

  std::vector<PairwiseSum<Complex>> sums(s.size());
  std::size_t terms = 0;
  for_each_pair(f, z, B, [&](const OInt&, const OInt&, double a) {
    const double w = cutoff_weight(a / B);
    if (w == 0.0) return;
    const double la = std::log(a);
    for (std::size_t i = 0; i < s.size(); ++i) sums[i].add(w * std::exp(-s[i] * la));
    ++terms;
  });

  DirectSum out;
  out.terms = terms;
  const double res = residue_at_one(ctx);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.values.push_back(sums[i].total() + res * cpow(B, 1.0 - s[i]) * weight_tail_integral(s[i]));
  }
  out.tail_estimate = std::pow(B, 0.25 - sigma_min) * std::max(1.0, z.norm_y(f));
  return out;
}

Complex eisenstein_direct(const ZetaContext& ctx, const Cusp& cusp, const Point& z, const EisensteinParams& params) {
  const Point zs = cusp.is_infinity() ? z : act(cusp.assoc.inverse(), z, ctx.field);
  return eisenstein_direct_multi(ctx, zs, {params.s}, params.norm_bound).values[0];
}

// ---- Fourier expansion -----------------------------------------------------------

FourierExpansion::FourierExpansion(const ZetaContext& ctx, Complex s, double cutoff)
    : ctx_(&ctx), s_(s), cutoff_(cutoff) {
  phi_ = phi(ctx, s);
  zeta2s_ = completed_zeta(ctx, 2.0 * s);
  if (zeta2s_ == Complex(0.0, 0.0)) throw ScatteringPole("completed zeta vanishes at 2s");
  delta_embed_ = embed(ctx.field.different_gen, ctx.field);
}

std::vector<OInt> FourierExpansion::frequencies(const std::vector<double>& y) const {
  const FieldData& f = ctx_->field;
  std::vector<OInt> out;
  const double L = cutoff_;
  if (f.is_rational()) {
    const long long nmax = static_cast<long long>(std::floor(L / (2.0 * kPi * y[0])));
    for (long long n = -nmax; n <= nmax; ++n)
      if (n != 0) out.push_back({n, 0});
    return out;
  }
  if (f.is_real_quadratic()) {
    const double w1 = f.omega_embed[0].real(), w2 = f.omega_embed[1].real(), dw = w1 - w2;
    const double b1 = L * std::abs(delta_embed_[0]) / (2.0 * kPi * y[0]);
    const double b2 = L * std::abs(delta_embed_[1]) / (2.0 * kPi * y[1]);
    const long long nmax = static_cast<long long>(std::floor((b1 + b2) / dw));
    for (long long n = -nmax; n <= nmax; ++n) {
      const double lo = std::max(-b1 - n * w1, -b2 - n * w2), hi = std::min(b1 - n * w1, b2 - n * w2);
      for (long long m = static_cast<long long>(std::ceil(lo)); m <= static_cast<long long>(std::floor(hi)); ++m) {
        if (m == 0 && n == 0) continue;
        const double e1 = m + n * w1, e2 = m + n * w2;
        const double arg = 2.0 * kPi * (std::abs(e1 / delta_embed_[0]) * y[0] + std::abs(e2 / delta_embed_[1]) * y[1]);
        if (arg <= L) out.push_back({m, n});
      }
    }
    return out;
  }
  const Complex w = f.omega_embed[0];
  const double b = L * std::abs(delta_embed_[0]) / (4.0 * kPi * y[0]);
  const long long nmax = static_cast<long long>(std::floor(b / w.imag()));
  for (long long n = -nmax; n <= nmax; ++n) {
    for (long long m = static_cast<long long>(std::ceil(-b - n * w.real()));
         m <= static_cast<long long>(std::floor(b - n * w.real())); ++m) {
      if (m == 0 && n == 0) continue;
      if (std::abs(double(m) + double(n) * w) <= b) out.push_back({m, n});
    }
  }
  return out;
}

Complex FourierExpansion::coefficient(const OInt& beta, const std::vector<double>& y) const {
  const FieldData& f = ctx_->field;
  double q = 1.0;
  Complex k = 1.0;
  for (int i = 0; i < f.places(); ++i) {
    const double l = std::abs(embed(f, beta, i) / delta_embed_[i]);
    if (f.local_degree(i) == 1) {
      q *= y[i];
      k *= bessel_k(s_ - 0.5, 2.0 * kPi * l * y[i]);
    } else {
      q *= y[i] * y[i];
      k *= bessel_k(2.0 * s_ - 1.0, 4.0 * kPi * l * y[i]);
    }
  }
  const double pref = std::ldexp(1.0, f.places()) * std::sqrt(q);
  return pref / zeta2s_ * tau_divisor_sum(f, beta, 1.0 - 2.0 * s_) * k;
}

Complex FourierExpansion::constant_term(double q) const {
  return cpow(q, s_) + phi_ * cpow(q, 1.0 - s_);
}

Complex FourierExpansion::oscillating_part(const Point& z) const {
  const FieldData& f = ctx_->field;
  const std::vector<double> y = y_vector(z);
  PairwiseSum<Complex> sum;
  for (const OInt& beta : frequencies(y)) {
    double tr = 0.0;
    for (int i = 0; i < f.places(); ++i) {
      const Complex l = embed(f, beta, i) / delta_embed_[i];
      const Complex x = z.coords[i].x;
      tr += f.local_degree(i) == 1 ? l.real() * x.real() : 2.0 * (l * x).real();
    }
    sum.add(coefficient(beta, y) * std::polar(1.0, 2.0 * kPi * tr));
  }
  return sum.total();
}

Complex FourierExpansion::operator()(const Point& z) const {
  return constant_term(z.norm_y(ctx_->field)) + oscillating_part(z);
}

Complex eisenstein_fourier(const ZetaContext& ctx, const Point& z, Complex s, double fourier_terms) {
  return FourierExpansion(ctx, s, fourier_terms)(z);
}

Complex eisenstein_truncated(const FourierExpansion& E, const Point& z, double T) {
  const FieldData& f = E.field();
  LatticePair best;
  const double mu = max_cusp_height(f, z, T, &best);
  if (mu <= T) return E(z);
  // Evaluate at the image where the high cusp sits at ∞.
  const Cusp cusp = pair_cusp(f, best.c, best.d);
  const Point zs = cusp.is_infinity() ? z : act(cusp.assoc.inverse(), z, f);
  return E.oscillating_part(zs);
}

Complex eisenstein_truncated(const ZetaContext& ctx, const Point& z, const EisensteinParams& params) {
  return eisenstein_truncated(FourierExpansion(ctx, params.s, params.fourier_terms), z, params.truncation_T);
}

// ---- integral identities ------------------------------------------------------------

Complex maass_selberg_closed_form(const ZetaContext& ctx, Complex s, Complex s2, double T) {
  if (std::abs(s - s2) == 0.0 || std::abs(s + s2 - 1.0) == 0.0)
    throw DegenerateParameters("Maass-Selberg closed form needs s != s' and s + s' != 1");
  const double C = cusp_constant(ctx.field);
  const Complex p = phi(ctx, s), p2 = phi(ctx, s2);
  const Complex a = (cpow(T, s + s2 - 1.0) - p * p2 * cpow(T, 1.0 - s - s2)) / (s + s2 - 1.0);
  const Complex b = (cpow(T, s - s2) * p2 - cpow(T, s2 - s) * p) / (s - s2);
  return C * (a + b);
}

Complex maass_selberg_numeric(const ZetaContext& ctx, Complex s, Complex s2, double T, int order) {
  const FieldData& f = ctx.field;
  if (!f.is_rational()) throw DomainError("numeric Maass-Selberg integral is implemented for K = Q only");
  const FourierExpansion E(ctx, s), E2(ctx, s2);

  // Truncated domain |x| ≤ ½, |z| ≥ 1, y ≤ T; the integrand is even in x.
  const Complex body = 2.0 * integrate_complex(
                                 [&](double x) {
                                   const double y0 = std::sqrt(1.0 - x * x);
                                   return integrate_complex(
                                       [&](double y) {
                                         const Point z{{{Complex(x, 0.0), y}}};
                                         return E(z) * E2(z) / (y * y);
                                       },
                                       y0, T, 4, order);
                                 },
                                 0.0, 0.5, 2, order);

  // Cusp part y > T: only the non-constant modes survive, paired l ↔ −l.
  Complex cusp = 0.0;
  for (long long n = 1; n <= 4; ++n) {
    cusp += 2.0 * integrate_complex(
                      [&](double y) {
                        const std::vector<double> yv{y};
                        return E.coefficient({n, 0}, yv) * E2.coefficient({n, 0}, yv) / (y * y);
                      },
                      T, T + 6.0, 4, 24);
  }
  return body + cusp;
}

double fundamental_domain_volume_numeric(int order) {
  // y ∈ [√(1−x²), 2] directly, y > 2 through u = 1/y.
  const double lower = integrate(
      [&](double x) {
        return integrate([](double y) { return 1.0 / (y * y); }, std::sqrt(1.0 - x * x), 2.0, 2, order);
      },
      0.0, 0.5, 2, order);
  const double upper = integrate([](double) { return integrate([](double) { return 1.0; }, 0.0, 0.5, 1, 8); }, 0.0,
                                 0.5, 1, 8);
  return 2.0 * (lower + upper);
}

VolumeIdentity volume_identity(const ZetaContext& ctx, Complex s, double T, int grid, int q_order, double bound) {
  const FieldData& f = ctx.field;
  const double C = cusp_constant(f);
  const Cusp inf = cusp_infinity(f);
  VolumeIdentity out;
  out.closed_form = C * (cpow(T, s - 1.0) / (s - 1.0) - phi(ctx, s) * cpow(T, -s) / s);

  const int dims = f.n + f.unit_rank();
  // ⟨E⟩ over X does not depend on Y, so two Y nodes are plenty.
  std::vector<std::size_t> counts(static_cast<std::size_t>(dims), static_cast<std::size_t>(grid));
  for (int k = f.n; k < dims; ++k) counts[k] = std::min<std::size_t>(counts[k], 2);
  std::size_t total = 1;
  for (std::size_t c : counts) total *= c;

  // ∫_{q>T} (E − q^s) dυ = C ∫₀^{1/T} ⟨E − q^s⟩_box du, u = 1/q.
  const Complex tail = integrate_complex(
      [&](double u) {
        const double q = 1.0 / u;
        PairwiseSum<Complex> box;
        for (std::size_t idx = 0; idx < total; ++idx) {
          std::size_t rest = idx;
          std::vector<double> c(static_cast<std::size_t>(dims));
          for (int k = 0; k < dims; ++k) {
            c[k] = (double(rest % counts[k]) + 0.5) / double(counts[k]) - 0.5;
            rest /= counts[k];
          }
          LocalCoords lc;
          lc.q = q;
          lc.X.assign(c.begin(), c.begin() + f.n);
          lc.Y.assign(c.begin() + f.n, c.end());
          const Point z = from_local_coords(inf, lc, f);
          box.add(eisenstein_direct_multi(ctx, z, {s}, bound).values[0] - cpow(q, s));
        }
        return box.total() / double(total);
      },
      0.0, 1.0 / T, 1, q_order);
  out.numeric = C * cpow(T, s - 1.0) / (s - 1.0) - C * tail;
  return out;
}

}  // namespace hilbert
