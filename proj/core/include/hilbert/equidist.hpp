#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hilbert/eisenstein.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/zeta.hpp"

namespace hilbert {

/// ψ(q) = scale·S((q − T0)/w)·S((T1 − q)/w) with the C^∞ ramp
/// S(t) = e^{−1/t}/(e^{−1/t} + e^{−1/(1−t)}). Plateau [T0 + w, T1 − w].
struct BumpProfile {
  double T0 = 2.0;
  double T1 = 4.0;
  double width = 0.5;
  double scale = 1.0;

  double operator()(double q) const;
};

/// Incomplete Eisenstein series f(z) = Σ_{Γ_λ\Γ} ψ(μ(λ, γz)). Needs T0 > 1 so
/// that at most one term is nonzero.
struct TestFunction {
  Cusp cusp;
  BumpProfile profile;
};

TestFunction standard_test_function(const FieldData& field);

double eval_test_function(const TestFunction& f, const Point& z, const FieldData& field);

/// m(f, q): periodic trapezoid rule with `nodes` points per coordinate of the
/// (X, Y) cube at height q.
double cusp_section_average(const TestFunction& f, double q, const FieldData& field, int nodes);

struct SliceAverage {
  double value = 0.0;
  int nodes = 0;
  double change = 0.0;  // |last − previous| at convergence
};

/// Doubles the node count until two successive averages differ by ≤ tol.
/// start_nodes/max_nodes of 0 pick per-field defaults.
SliceAverage cusp_section_average_adaptive(const TestFunction& f, double q, const FieldData& field, double tol,
                                           int start_nodes = 0, int max_nodes = 0);

/// m(f) = vol(M)^{−1}·C·∫ψ(q)q^{−2}dq.
double haar_average(const TestFunction& f, const ZetaContext& ctx);
/// vol(M)^{−1}∫_F f dυ by 2-D quadrature over the classical domain (K = ℚ).
double haar_average_numeric(const TestFunction& f, const ZetaContext& ctx, int order = 40);

enum class MellinRoute {
  Defining,       // ∫ m(f, q) q^{s−2} dq from slice averages (Re s > 1)
  RankinSelberg,  // C^{−1}∫ E(z, s) f(z) dυ over Γ_∞\H with the Fourier expansion
  Unfolded,       // ∫ψ(q)(q^{s−2} + φ(s)q^{−1−s})dq
};

struct MellinOptions {
  double delta = 0.0;      // lower q cutoff of the defining integral (0: per-field default)
  double slice_tol = 0.0;  // absolute slice tolerance (0: per-field default)
  int q_panels = 4;        // raised to 3 (ℚ) or 1 panels per unit of log q below ½
  int q_order = 10;
  int box_nodes = 6;       // per coordinate, Rankin–Selberg route
};

Complex mellin_transform(const TestFunction& f, Complex s, const ZetaContext& ctx,
                         MellinRoute route = MellinRoute::RankinSelberg, const MellinOptions& opts = {});

struct RankinSelbergResult {
  Complex lhs;  // C·M(f, s) from slice averages
  Complex rhs;  // ∫_M E(z, s) f(z) dυ, unfolded, with the Fourier expansion
};

RankinSelbergResult rankin_selberg_check(const TestFunction& f, const ZetaContext& ctx, Complex s,
                                         const MellinOptions& opts = {});

struct ExperimentReport {
  std::vector<int> k;
  std::vector<double> q_grid;
  std::vector<double> m_q;
  std::vector<double> e;
  std::vector<int> nodes;
  double m = 0.0;
  double fitted_slope = 0.0;
  std::pair<double, double> slope_ci{0.0, 0.0};
  std::vector<double> residuals;
  int discarded = 2;
  bool degenerate = false;
  double runtime = 0.0;
};

struct FitOptions {
  int discard = 2;          // leading grid points left out of the fit
  double rel_tol = 0.1;     // per-point quadrature error relative to e(q)
  int start_nodes = 0;
  int max_nodes = 0;
};

/// Measures e(q_k) = |m_{q_k}(f) − m(f)| on q_k = 2^{−k} and fits log e
/// against log q by least squares.
ExperimentReport decay_exponent_fit(const TestFunction& f, const ZetaContext& ctx, int k_min, int k_max,
                                    const FitOptions& opts = {});

struct VerticalScan {
  std::vector<double> t;
  std::vector<double> value;  // |s(s−1)M_f(s)|
  double envelope_exponent = 0.0;
  bool within_bound = false;
};

/// Samples |s(s−1)M_f(σ+it)| for t ∈ [t_min, t_max] and fits the envelope
/// exponent over t ≥ fit_from.
VerticalScan vertical_line_scan(const TestFunction& f, double sigma, double t_max, const ZetaContext& ctx,
                                double t_min = 1.0, double step = 0.25, double fit_from = 5.0,
                                double bound = 0.1);

/// Least-squares slope of y against x with a 95% interval.
struct LineFit {
  double slope = 0.0, intercept = 0.0;
  std::pair<double, double> ci{0.0, 0.0};
  std::vector<double> residuals;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hilbert
