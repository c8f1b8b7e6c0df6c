#pragma once

#include <complex>
#include <vector>

#include "hilbert/field.hpp"

namespace hilbert {

/// Γ(s) for complex s. Throws PoleAtNonPositiveInteger at 0, −1, −2, …
Complex gamma(Complex s);
/// Principal branch of log Γ(s) (continuous for Re s > 0).
Complex log_gamma(Complex s);

/// MacDonald function K_s(y) = ½∫₀^∞ e^{−y(t+1/t)/2} t^{s−1} dt for y > 0.
/// Validated for |Re s| ≤ 10, |Im s| ≤ 100.
Complex bessel_k(Complex s, double y);
/// e^{y}·K_s(y); avoids underflow for large y.
Complex bessel_k_scaled(Complex s, double y);

/// Π_i K_s(c_i y_i |l_i|) with c_i = 2π on real places and 4π on complex
/// places. Throws ZeroFrequency when some l_i = 0.
Complex bessel_k_product(Complex s, const std::vector<double>& ystar, const std::vector<Complex>& l,
                         const FieldData& field);

}  // namespace hilbert
