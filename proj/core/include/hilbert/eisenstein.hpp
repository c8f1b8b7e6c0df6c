#pragma once

#include <vector>

#include "hilbert/field.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/lattice.hpp"
#include "hilbert/zeta.hpp"

namespace hilbert {

struct EisensteinParams {
  Complex s{1.5, 0.0};
  double norm_bound = 0.0;       // direct sum cutoff on 1/μ; 0 picks a default
  double fourier_terms = 40.0;   // cutoff on Σ_i (Bessel argument)_i
  double truncation_T = 3.0;
};

/// Default direct-sum cutoff for a field and Re s.
double default_norm_bound(const FieldData& field, double sigma);

/// C = 2^{r1−r2} √D R h / ω, the factor relating dυ on Γ_∞\H to q^{−2}dq.
double cusp_constant(const FieldData& field);
/// vol(M) = 2^{1−3 r2} π^{−n} D^{3/2} ζ_K(2).
double orbifold_volume(const ZetaContext& ctx);
/// Res_{s=1} E(z, s) = C/vol(M).
double residue_at_one(const ZetaContext& ctx);

struct DirectSum {
  std::vector<Complex> values;  // one per requested s
  double tail_estimate = 0.0;   // rough size of the neglected remainder (worst s)
  std::size_t terms = 0;
};

/// Σ μ(γz)^s over Γ_∞\Γ with the smooth weight w(1/(μB)) and the analytic
/// tail Res·B^{1−s}∫t^{−s}(1−w(t))dt. z is taken at the cusp ∞.
DirectSum eisenstein_direct_multi(const ZetaContext& ctx, const Point& z, const std::vector<Complex>& s, double bound);
/// E_λ(z, s); throws NotConvergent when Re s ≤ 1.
Complex eisenstein_direct(const ZetaContext& ctx, const Cusp& cusp, const Point& z, const EisensteinParams& params);

/// Fourier expansion at ∞ for a fixed s:
///   E = q^s + φ(s)q^{1−s} + 2^r q^{1/2}/ζ*(2s) Σ_{β≠0} τ_{1−2s}(β) Π K_{ν_i}(a_i) e^{2πi Tr(lx)}
/// with l = β/δ, ν = s − ½ and a = 2π|l|y on real places, ν = 2s − 1 and
/// a = 4π|l|y on complex places.
class FourierExpansion {
 public:
  FourierExpansion(const ZetaContext& ctx, Complex s, double cutoff = 40.0);

  Complex operator()(const Point& z) const;
  /// Only the non-constant modes.
  Complex oscillating_part(const Point& z) const;
  Complex constant_term(double q) const;
  /// Coefficient of e^{2πi Tr(lx)} for the frequency β (y per place).
  Complex coefficient(const OInt& beta, const std::vector<double>& y) const;
  /// Frequencies β ≠ 0 kept at this y.
  std::vector<OInt> frequencies(const std::vector<double>& y) const;

  Complex s() const { return s_; }
  Complex phi_value() const { return phi_; }
  Complex zeta_star_2s() const { return zeta2s_; }
  const FieldData& field() const { return ctx_->field; }

 private:
  const ZetaContext* ctx_;
  Complex s_, phi_, zeta2s_;
  double cutoff_;
  std::vector<Complex> delta_embed_;
};

Complex eisenstein_fourier(const ZetaContext& ctx, const Point& z, Complex s, double fourier_terms = 40.0);

/// E^T: E minus q^s + φ q^{1−s} at the cusp whose height exceeds T.
Complex eisenstein_truncated(const ZetaContext& ctx, const Point& z, const EisensteinParams& params);
Complex eisenstein_truncated(const FourierExpansion& E, const Point& z, double T);

/// Closed form of ∫_M E^T(z,s)E^T(z,s')dυ. Throws DegenerateParameters when
/// s = s' or s + s' = 1.
Complex maass_selberg_closed_form(const ZetaContext& ctx, Complex s, Complex s2, double T);
/// Numeric ∫_M E^T E'^T dυ over the classical fundamental domain (K = ℚ only).
Complex maass_selberg_numeric(const ZetaContext& ctx, Complex s, Complex s2, double T, int order = 48);

/// ∫ dx dy/y² over |x| ≤ ½, |z| ≥ 1 by 2-D quadrature (K = ℚ).
double fundamental_domain_volume_numeric(int order = 40);

struct VolumeIdentity {
  Complex closed_form;  // C(T^{s−1}/(s−1) − φ(s)T^{−s}/s)
  Complex numeric;      // C T^{s−1}/(s−1) − ∫_{q>T}(E_direct − q^s)dυ
};
/// Both sides of ∫_{M_T} E(z,s)dυ = C(T^{s−1}/(s−1) − φ(s)T^{−s}/s).
VolumeIdentity volume_identity(const ZetaContext& ctx, Complex s, double T, int grid = 3, int q_order = 6,
                               double bound = 0.0);

}  // namespace hilbert
