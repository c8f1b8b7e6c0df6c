#include "hilbert/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hilbert/errors.hpp"
#include "hilbert/quadrature.hpp"

namespace hilbert {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

void check_finite(Complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("non-finite argument");
}

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log Γ(z) for Re z ≥ ½.
Complex lanczos_log_gamma(Complex z) {
  Complex w = z - 1.0;
  Complex a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (w + double(k));
  Complex t = w + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

Complex log_gamma(Complex s) {
  check_finite(s);
  if (is_nonpositive_integer(s)) throw PoleAtNonPositiveInteger("log_gamma pole");
  if (s.real() >= 0.5) return lanczos_log_gamma(s);
  return std::log(kPi) - std::log(std::sin(kPi * s)) - lanczos_log_gamma(1.0 - s);
}

Complex gamma(Complex s) {
  check_finite(s);
  if (is_nonpositive_integer(s)) throw PoleAtNonPositiveInteger("gamma pole");
  if (s.real() >= 0.5) return std::exp(lanczos_log_gamma(s));
  return kPi / (std::sin(kPi * s) * std::exp(lanczos_log_gamma(1.0 - s)));
}

namespace {

// Above this |Im s| the contour is tilted; the leftover growth factor is
// e^{kTiltOnset·π/2}, about 2.6e3.
constexpr double kTiltOnset = 5.0;

// e^{y}K_s(y) = ½∫ exp(−y(cosh(u+iθ) − 1) + s(u+iθ)) du over the real line.
// Shifting by iθ with |θ| < π/2 is legal since the integrand decays in the
// strip; θ of the sign of Im s damps the e^{isθ} factor to the size of K.
Complex bessel_k_tilted(Complex s, double y, double theta) {
  const double c = std::cos(theta), sn = std::sin(theta);
  const double a = s.real();
  auto log_mag = [&](double u) { return -y * (std::cosh(u) * c - 1.0) + a * u - s.imag() * theta; };
  const double upeak = std::asinh(a / (y * c));
  const double top = log_mag(upeak);
  double hi = upeak, lo = upeak;
  while (log_mag(hi) > top - 42.0) hi += 0.25;
  while (log_mag(lo) > top - 42.0) lo -= 0.25;
  // Fastest phase rotation on [lo, hi].
  const double freq = std::abs(s.imag()) + y * std::abs(sn) * std::max(std::sinh(hi), -std::sinh(lo)) + 1.0;
  auto f = [&](double u) {
    const Complex w = Complex(u, 0.0) + Complex(0.0, theta);
    return std::exp(-y * (std::cosh(w) - 1.0) + s * w);
  };
  double h = (hi - lo) / 16;
  PairwiseSum<Complex> first;
  double mass = 0.0;
  for (int k = 0; k <= 16; ++k) {
    first.add(f(lo + k * h));
    mass += std::exp(log_mag(lo + k * h));
  }
  Complex sum = first.total();
  Complex est = 0.5 * h * sum;
  for (int halving = 0;; ++halving) {
    h *= 0.5;
    const long nodes = static_cast<long>((hi - lo) / h);
    if (nodes > (1L << 17)) throw NotConvergent("bessel_k quadrature exceeded node cap");
    PairwiseSum<Complex> odd;
    for (long k = 1; k < nodes; k += 2) {
      odd.add(f(lo + k * h));
      mass += std::exp(log_mag(lo + k * h));
    }
    sum += odd.total();
    const Complex next = 0.5 * h * sum;
    const double diff = std::abs(next - est);
    est = next;
    if (halving >= 1 && h * freq <= 1.0 && diff <= 1e-13 * std::abs(est) + 1e-16 * h * mass) break;
  }
  return est;
}

}  // namespace

Complex bessel_k_scaled(Complex s, double y) {
  check_finite(s);
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("bessel_k needs y > 0");
  if (std::abs(s.real()) > 10.0 || std::abs(s.imag()) > 100.0)
    throw DomainError("bessel_k order outside |Re s| <= 10, |Im s| <= 100");

  // For large |Im s| the value is ~e^{−π|Im s|/2} while the real-axis
  // integrand is O(1), so the line is tilted into the complex plane first.
  const double tilt = std::abs(s.imag()) > kTiltOnset ? kPi / 2 - kTiltOnset * (kPi / 2) / std::abs(s.imag()) : 0.0;
  if (tilt > 0.0) return bessel_k_tilted(s, y, std::copysign(tilt, s.imag()));

  // K_s(y) = ∫₀^∞ e^{−y cosh u} cosh(su) du, integrand even in u. The
  // trapezoid rule on the whole line converges geometrically for it.
  const double re = std::abs(s.real());
  auto expo = [&](double u) { return -y * (std::cosh(u) - 1.0) + re * u; };
  const double upeak = std::asinh(re / y);
  const double epeak = expo(upeak);
  double U = upeak;
  while (expo(U) > epeak - 42.0) U += 0.25;

  auto f = [&](double u) { return std::exp(-y * (std::cosh(u) - 1.0)) * std::cosh(s * u); };
  auto fabs_ = [&](double u) { return std::exp(expo(u)) * 0.5 * (1.0 + std::exp(-2.0 * re * u)); };

  double h = 0.5;
  Complex sum = 0.5 * f(0.0);
  double mass = 0.5 * fabs_(0.0);
  for (int k = 1; k * h <= U; ++k) {
    sum += f(k * h);
    mass += fabs_(k * h);
  }
  Complex est = h * sum;
  for (int halving = 0;; ++halving) {
    h *= 0.5;
    const long nodes = static_cast<long>(U / h);
    if (nodes > (1L << 16)) throw NotConvergent("bessel_k quadrature exceeded node cap");
    Complex odd = 0.0;
    double odd_mass = 0.0;
    for (long k = 1; k * h <= U; k += 2) {
      odd += f(k * h);
      odd_mass += fabs_(k * h);
    }
    sum += odd;
    mass += odd_mass;
    Complex next = h * sum;
    double diff = std::abs(next - est);
    est = next;
    // The step must also resolve the oscillation of cosh(su) before two
    // estimates can be trusted to agree.
    if (halving >= 1 && h * (std::abs(s.imag()) + 1.0) <= 1.0 && diff <= 1e-13 * std::abs(est) + 1e-16 * h * mass)
      break;
  }
  return est;
}

Complex bessel_k(Complex s, double y) {
  Complex v = bessel_k_scaled(s, y);
  return v * std::exp(-y);
}

Complex bessel_k_product(Complex s, const std::vector<double>& ystar, const std::vector<Complex>& l,
                         const FieldData& field) {
  if (ystar.size() != static_cast<std::size_t>(field.places()) || l.size() != ystar.size())
    throw DomainError("bessel_k_product: one entry per place required");
  Complex prod = 1.0;
  double total = 0.0;
  for (int i = 0; i < field.places(); ++i) {
    const double al = std::abs(l[i]);
    if (al == 0.0) throw ZeroFrequency("bessel_k_product: zero frequency component");
    const double c = field.local_degree(i) == 1 ? 2.0 * kPi : 4.0 * kPi;
    const double arg = c * ystar[i] * al;
    prod *= bessel_k_scaled(s, arg);
    total += arg;
  }
  return prod * std::exp(-total);
}

}  // namespace hilbert
