#pragma once

#include <complex>
#include <vector>

#include "hilbert/field.hpp"

namespace hilbert {

/// Field plus cached Dirichlet data. Immutable after construction.
struct ZetaContext {
  FieldData field;
  std::vector<long> coeffs;  // a_1..a_N at index n−1
  std::vector<int> character;  // χ_D(n) for n = 0..D−1 (all ones for ℚ)

  explicit ZetaContext(FieldData f, long n_coeffs = 4096);
  long modulus() const noexcept { return field.D; }
  int chi(long n) const noexcept { return character[static_cast<std::size_t>(n % field.D)]; }
};

/// ζ(s, a) = Σ_{k≥0} (k+a)^{−s} for a > 0, continued to s ≠ 1.
Complex hurwitz_zeta(Complex s, double a);
Complex riemann_zeta(Complex s);
/// L(s, χ_D); identically 1 for ℚ.
Complex dirichlet_l(const ZetaContext& ctx, Complex s);

enum class ZetaMethod {
  Factorized,   // ζ(s)·L(s, χ_D)
  IdealSeries,  // Σ_{n≤N} a_n n^{−s} plus an exact hyperbola tail
};

/// Dedekind zeta ζ_K(s); throws PoleAtOne at s = 1.
Complex dedekind_zeta(const ZetaContext& ctx, Complex s, ZetaMethod method = ZetaMethod::Factorized);

/// Λ(s) = 2^{−r2 s} D^{s/2} π^{−ns/2} Γ(s/2)^{r1} Γ(s)^{r2}.
Complex gamma_factor(const FieldData& field, Complex s);
/// ζ*_K(s) = Λ(s)ζ_K(s); throws PoleAtZeroOrOne.
Complex completed_zeta(const ZetaContext& ctx, Complex s);
/// φ(s) = ζ*_K(2s−1)/ζ*_K(2s). φ(½) = −1; throws ScatteringPole at s = 1.
Complex phi(const ZetaContext& ctx, Complex s);

/// a_n = Σ_{d|n} χ_D(d), n = 1..N.
std::vector<long> ideal_counts_by_convolution(const FieldData& field, long N);

/// τ_u(l) = N(𝔡l)^{−u/2} Σ_{𝔮 | 𝔡l} N(𝔮)^u. l must lie in the inverse
/// different. Throws ZeroFrequency for l = 0.
Complex tau_divisor_sum(const ZetaContext& ctx, const FieldElement& l, Complex u);
/// Same with the integral element β = 𝔡l given directly.
Complex tau_divisor_sum(const FieldData& field, const OInt& beta, Complex u);

}  // namespace hilbert
