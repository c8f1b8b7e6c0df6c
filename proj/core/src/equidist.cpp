#include "hilbert/equidist.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "hilbert/errors.hpp"
#include "hilbert/lattice.hpp"
#include "hilbert/quadrature.hpp"

namespace hilbert {

namespace {

double ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

int cube_dims(const FieldData& field) { return field.n + field.places() - 1; }

int default_start_nodes(const FieldData& field) { return field.is_rational() ? 64 : 16; }

int default_max_nodes(const FieldData& field) {
  if (field.is_rational()) return 1 << 20;
  return field.is_real_quadratic() ? 1024 : 2048;
}

double default_delta(const FieldData& field) { return field.is_rational() ? std::ldexp(1.0, -9) : std::ldexp(1.0, -7); }

double default_slice_tol(const FieldData& field) { return field.is_rational() ? 1e-7 : 1e-4; }

void check_profile(const BumpProfile& p) {
  if (!(p.T0 > 1.0) || !(p.T1 > p.T0) || !(p.width > 0.0) || 2.0 * p.width > p.T1 - p.T0)
    throw DomainError("bump profile needs 1 < T0, T0 + 2w <= T1");
}

// Average of g over the unit cube with counts[i] periodic nodes along axis i.
template <class G>
auto cube_average(const std::vector<int>& counts, G&& g) {
  using T = decltype(g(std::vector<double>{}));
  const std::size_t dims = counts.size();
  PairwiseSum<T> acc;
  std::vector<double> u(dims, 0.0);
  std::vector<int> idx(dims, 0);
  long total = 1;
  for (int c : counts) total *= c;
  for (long k = 0; k < total; ++k) {
    for (std::size_t i = 0; i < dims; ++i) u[i] = (idx[i] + 0.5) / counts[i];
    acc.add(g(u));
    for (std::size_t i = 0; i < dims; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return acc.total() / double(total);
}

// The Y direction: each cusp contributes q·G(N(c)²q) to the X-average at any
// fixed Y, so a few Y nodes resolve it; the X directions carry the narrow
// horoball features and take the full count.
std::vector<int> slice_counts(const FieldData& field, int N) {
  std::vector<int> counts(cube_dims(field), N);
  for (int i = 0; i < field.places() - 1; ++i) counts[i] = std::min(N, 4);
  return counts;
}

LocalCoords cube_point(const FieldData& field, double q, const std::vector<double>& u) {
  LocalCoords lc;
  lc.q = q;
  const int ny = field.places() - 1;
  lc.Y.assign(u.begin(), u.begin() + ny);
  lc.X.assign(u.begin() + ny, u.end());
  return lc;
}

// ∫_{T0}^{T1} ψ(q) g(q) dq; the ramps are flat to all orders at both ends.
Complex bump_integral(const BumpProfile& p, const std::function<Complex(double)>& g, int panels, int order) {
  return integrate_complex([&](double q) { return p(q) * g(q); }, p.T0, p.T1, panels, order);
}

}  // namespace

double BumpProfile::operator()(double q) const {
  return scale * ramp((q - T0) / width) * ramp((T1 - q) / width);
}

TestFunction standard_test_function(const FieldData& field) { return {cusp_infinity(field), BumpProfile{}}; }

double eval_test_function(const TestFunction& f, const Point& z, const FieldData& field) {
  check_profile(f.profile);
  if (f.profile.scale == 0.0) return 0.0;
  // h = 1: every cusp is Γ-equivalent to λ, so the sum over Γ_λ\Γ sees the
  // largest height among all cusps. T0 > 1 leaves at most one term.
  const double mu = max_cusp_height(field, z, f.profile.T0);
  return mu > 0.0 ? f.profile(mu) : 0.0;
}

double cusp_section_average(const TestFunction& f, double q, const FieldData& field, int nodes) {
  if (!(q > 0.0)) throw DomainError("slice height must be positive");
  if (nodes < 1) throw DomainError("slice needs at least one node");
  return cube_average(slice_counts(field, nodes), [&](const std::vector<double>& u) {
    const Point z = from_local_coords(f.cusp, cube_point(field, q, u), field);
    return eval_test_function(f, z, field);
  });
}

SliceAverage cusp_section_average_adaptive(const TestFunction& f, double q, const FieldData& field, double tol,
                                           int start_nodes, int max_nodes) {
  int N = start_nodes > 0 ? start_nodes : default_start_nodes(field);
  const int cap = max_nodes > 0 ? max_nodes : default_max_nodes(field);
  // Odd multiples of 1/(2N) are not nested under doubling, so every level is
  // a fresh rule; tripling would nest but grows too fast in three dimensions.
  double prev = cusp_section_average(f, q, field, N);
  while (true) {
    const int N2 = 2 * N;
    if (N2 > cap) throw QuadratureBudgetExceeded("slice average did not settle within node cap");
    const double cur = cusp_section_average(f, q, field, N2);
    const double change = std::abs(cur - prev);
    if (change <= tol) return {cur, N2, change};
    prev = cur;
    N = N2;
  }
}

double haar_average(const TestFunction& f, const ZetaContext& ctx) {
  check_profile(f.profile);
  const Complex I = bump_integral(f.profile, [](double q) { return Complex(1.0 / (q * q)); }, 8, 20);
  return residue_at_one(ctx) * I.real();
}

double haar_average_numeric(const TestFunction& f, const ZetaContext& ctx, int order) {
  if (!ctx.field.is_rational()) throw UnsupportedField("haar_average_numeric is implemented for K = Q");
  // Classical domain |x| ≤ ½, |z| ≥ 1, cut at y = T1 where f vanishes.
  const FieldData& field = ctx.field;
  const double top = f.profile.T1 + 0.5;
  const double total = 2.0 * integrate(
                                  [&](double x) {
                                    const double y0 = std::sqrt(1.0 - x * x);
                                    return integrate(
                                        [&](double y) {
                                          const Point z = make_point(field, {{Complex(x, 0.0), y}});
                                          return eval_test_function(f, z, field) / (y * y);
                                        },
                                        y0, top, 8, order);
                                  },
                                  0.0, 0.5, 1, order);
  return total / orbifold_volume(ctx);
}

Complex mellin_transform(const TestFunction& f, Complex s, const ZetaContext& ctx, MellinRoute route,
                         const MellinOptions& opts) {
  check_profile(f.profile);
  if (s == Complex(1.0, 0.0)) throw PoleAtOne("M(f, s) has a pole at s = 1 with residue m(f)");
  const FieldData& field = ctx.field;
  const BumpProfile& p = f.profile;
  switch (route) {
    case MellinRoute::Unfolded: {
      const Complex ph = phi(ctx, s);
      return bump_integral(
          p, [&](double q) { return std::pow(q, s - 2.0) + ph * std::pow(q, -1.0 - s); }, 8, 20);
    }
    case MellinRoute::RankinSelberg: {
      const FourierExpansion E(ctx, s);
      const std::vector<int> counts(cube_dims(field), std::max(opts.box_nodes, 1));
      auto slice = [&](double q) {
        const Complex avg = cube_average(counts, [&](const std::vector<double>& u) {
          return E(from_local_coords(cusp_infinity(field), cube_point(field, q, u), field));
        });
        return avg / (q * q);
      };
      return bump_integral(p, slice, opts.q_panels, opts.q_order);
    }
    case MellinRoute::Defining: {
      if (!(s.real() > 1.0)) throw DomainError("defining Mellin integral needs Re s > 1");
      const double delta = opts.delta > 0.0 ? opts.delta : default_delta(field);
      const double tol = opts.slice_tol > 0.0 ? opts.slice_tol : default_slice_tol(field);
      if (!(delta < 0.5)) throw DomainError("Mellin cutoff must lie below 1/2");
      auto m = [&](double q) { return cusp_section_average_adaptive(f, q, field, tol).value; };
      // Below δ the slices are replaced by their limit m(f). Freezing them at
      // m(f, δ) instead costs e(δ)δ^{s−1}/(s−1), which is 2e−4 at s = 1.5.
      Complex total = haar_average(f, ctx) * std::pow(delta, s - 1.0) / (s - 1.0);
      // (δ, ½] in log q, where the slices oscillate on a logarithmic scale
      // (period 2π/γ for a zeta zero γ), so panels scale with the log range.
      // Quadratic slices cost ~100× more; one panel per unit keeps 1e−3.
      const double density = field.is_rational() ? 3.0 : 1.0;
      const int log_panels = std::max(opts.q_panels, static_cast<int>(std::ceil(density * std::log(0.5 / delta))));
      total += integrate_complex([&](double t) { const double q = std::exp(t); return m(q) * std::pow(q, s - 1.0); },
                                 std::log(delta), std::log(0.5), log_panels, opts.q_order);
      total += integrate_complex([&](double q) { return m(q) * std::pow(q, s - 2.0); }, 0.5, p.T0, 1,
                                 opts.q_order);
      total += integrate_complex([&](double q) { return m(q) * std::pow(q, s - 2.0); }, p.T0, p.T1, opts.q_panels,
                                 opts.q_order);
      return total;
    }
  }
  throw DomainError("unknown Mellin route");
}

RankinSelbergResult rankin_selberg_check(const TestFunction& f, const ZetaContext& ctx, Complex s,
                                         const MellinOptions& opts) {
  const double C = cusp_constant(ctx.field);
  RankinSelbergResult r;
  r.lhs = C * mellin_transform(f, s, ctx, MellinRoute::Defining, opts);
  r.rhs = C * mellin_transform(f, s, ctx, MellinRoute::RankinSelberg, opts);
  return r;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("line fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("line fit needs distinct abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.intercept + out.slope * x[i]);
    out.residuals.push_back(r);
    rss += r * r;
  }
  if (n > 2) {
    const double se = std::sqrt(rss / double(n - 2) / sxx);
    const boost::math::students_t dist(double(n - 2));
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    out.ci = {out.slope - t * se, out.slope + t * se};
  } else {
    out.ci = {out.slope, out.slope};
  }
  return out;
}

ExperimentReport decay_exponent_fit(const TestFunction& f, const ZetaContext& ctx, int k_min, int k_max,
                                    const FitOptions& opts) {
  if (k_min > k_max) throw DomainError("empty q grid");
  const auto t0 = std::chrono::steady_clock::now();
  const FieldData& field = ctx.field;
  ExperimentReport rep;
  rep.discarded = opts.discard;
  rep.m = haar_average(f, ctx);
  const int cap = opts.max_nodes > 0 ? opts.max_nodes : default_max_nodes(field);

  for (int k = k_min; k <= k_max; ++k) {
    const double q = std::ldexp(1.0, -k);
    int N = opts.start_nodes > 0 ? opts.start_nodes : default_start_nodes(field);
    double prev = cusp_section_average(f, q, field, N);
    double cur = prev;
    while (true) {
      if (2 * N > cap) throw QuadratureBudgetExceeded("slice average did not resolve e(q)");
      N *= 2;
      cur = cusp_section_average(f, q, field, N);
      const double e = std::abs(cur - rep.m);
      // Near an accidental zero of e(q) only absolute accuracy relative to
      // the slice itself is asked for.
      const double floor = 1e-3 * rep.m * q;
      if (std::abs(cur - prev) <= std::max(opts.rel_tol * e, floor)) break;
      prev = cur;
    }
    rep.k.push_back(k);
    rep.q_grid.push_back(q);
    rep.m_q.push_back(cur);
    rep.e.push_back(std::abs(cur - rep.m));
    rep.nodes.push_back(N);
  }

  std::vector<double> lx, ly;
  for (std::size_t i = static_cast<std::size_t>(std::max(opts.discard, 0)); i < rep.e.size(); ++i) {
    if (rep.e[i] > 0.0) {
      lx.push_back(std::log(rep.q_grid[i]));
      ly.push_back(std::log(rep.e[i]));
    }
  }
  if (rep.m == 0.0 || lx.size() < 2) {
    rep.degenerate = true;
    rep.fitted_slope = 0.0;
  } else {
    const LineFit fit = fit_line(lx, ly);
    rep.fitted_slope = fit.slope;
    rep.slope_ci = fit.ci;
    rep.residuals = fit.residuals;
  }
  rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerticalScan vertical_line_scan(const TestFunction& f, double sigma, double t_max, const ZetaContext& ctx,
                                double t_min, double step, double fit_from, double bound) {
  if (!(step > 0.0) || !(t_max > t_min)) throw DomainError("bad vertical scan range");
  VerticalScan out;
  const int count = static_cast<int>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    const double t = t_min + i * step;
    const Complex s(sigma, t);
    const Complex M = mellin_transform(f, s, ctx, MellinRoute::RankinSelberg);
    out.t.push_back(t);
    out.value.push_back(std::abs(s * (s - 1.0) * M));
  }
  // Upper envelope: local maxima of the sampled modulus.
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    if (out.t[i] < fit_from - 1e-12) continue;
    const bool left = i == 0 || out.value[i] >= out.value[i - 1];
    const bool right = i + 1 == out.t.size() || out.value[i] >= out.value[i + 1];
    if (left && right && out.value[i] > 0.0) {
      lx.push_back(std::log(out.t[i]));
      ly.push_back(std::log(out.value[i]));
    }
  }
  if (lx.size() < 2) {
    lx.clear();
    ly.clear();
    for (std::size_t i = 0; i < out.t.size(); ++i)
      if (out.t[i] >= fit_from - 1e-12 && out.value[i] > 0.0) {
        lx.push_back(std::log(out.t[i]));
        ly.push_back(std::log(out.value[i]));
      }
  }
  out.envelope_exponent = fit_line(lx, ly).slope;
  out.within_bound = out.envelope_exponent <= bound;
  return out;
}

}  // namespace hilbert
