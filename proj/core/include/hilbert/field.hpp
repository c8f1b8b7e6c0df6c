#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hilbert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Element a + b·√d of ℚ(√d), exact over the rationals. For K = ℚ (d = 0)
/// the b component is identically zero.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long d, Rational a, Rational b = 0);

  static FieldElement from_int(long d, long long v) { return FieldElement(d, Rational(v)); }

  long d() const noexcept { return d_; }
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  FieldElement conjugate() const { return FieldElement(d_, a_, -b_); }
  /// N_{K/ℚ} and Tr_{K/ℚ}; for ℚ itself these are x and x.
  Rational norm() const { return d_ == 0 ? a_ : a_ * a_ - Rational(d_) * b_ * b_; }
  Rational trace() const { return d_ == 0 ? a_ : 2 * a_; }
  FieldElement inverse() const;

  FieldElement operator-() const { return FieldElement(d_, -a_, -b_); }
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;

 private:
  void check_same_field(const FieldElement& o) const;

  long d_ = 0;
  Rational a_ = 0;
  Rational b_ = 0;
};

/// Element m + n·ω of the ring of integers, where ω is the second integral
/// basis vector (√d, or (1+√d)/2 when d ≡ 1 mod 4). Used on every hot path;
/// FieldElement is the exact interchange type.
struct OInt {
  long long m = 0;
  long long n = 0;
  bool is_zero() const { return m == 0 && n == 0; }
  friend bool operator==(const OInt&, const OInt&) = default;
  friend auto operator<=>(const OInt&, const OInt&) = default;
  OInt operator-() const { return {-m, -n}; }
};

struct FieldData {
  long d = 0;
  int r1 = 1;
  int r2 = 0;
  int n = 1;
  long D = 1;      // absolute discriminant
  int h = 1;
  int omega = 2;   // number of roots of unity
  std::optional<FieldElement> fundamental_unit;
  double R = 1.0;  // regulator, 1 when the unit rank is zero
  std::array<FieldElement, 2> integral_basis;
  FieldElement different_gen;

  // d ≡ 1 mod 4: second basis vector is (1+√d)/2.
  bool half_basis = false;
  // Embeddings of the second basis vector, one per place (unused for ℚ).
  std::vector<Complex> omega_embed;
  OInt unit_int;                    // fundamental unit, integral coordinates
  std::vector<OInt> roots_of_unity;  // all ω roots of unity, integral coordinates

  int places() const noexcept { return r1 + r2; }
  bool is_rational() const noexcept { return d == 0; }
  bool is_real_quadratic() const noexcept { return d > 1; }
  bool is_imaginary_quadratic() const noexcept { return d < 0; }
  int unit_rank() const noexcept { return places() - 1; }
  /// Signed fundamental discriminant (D for real fields, -D for imaginary).
  long disc() const noexcept { return d < 0 ? -D : D; }
  /// Local degree N_i of place i.
  int local_degree(int place) const noexcept { return place < r1 ? 1 : 2; }
};

/// Builds the invariants of ℚ(√d). d = 0 denotes ℚ. Only class-number-one
/// fields from the built-in allow-list are accepted.
FieldData make_field(long d);

/// Squarefree d values accepted by make_field.
const std::vector<long>& supported_fields();

/// Embeddings x^{(1)}, …, x^{(r)}; real places first.
std::vector<Complex> embed(const FieldElement& x, const FieldData& field);

/// ε^k for the fundamental unit ε of a real quadratic field.
FieldElement unit_power(const FieldData& field, long k);

/// a_n = #{integral ideals of norm n}, n = 1..N, from the splitting of primes.
std::vector<long> ideal_count_coeffs(const FieldData& field, long N);

/// Kronecker symbol (a/n) for n ≥ 1.
int kronecker(long a, long n);

struct IdealRep {
  FieldElement generator;
  BigInt norm;
};

IdealRep make_ideal(const FieldElement& generator);
/// Equal iff the generators differ by a unit.
bool same_ideal(const IdealRep& x, const IdealRep& y);

// ---- integral-coordinate arithmetic -------------------------------------

OInt mul(const FieldData& f, const OInt& x, const OInt& y);
long long norm(const FieldData& f, const OInt& x);
OInt conj(const FieldData& f, const OInt& x);
FieldElement to_element(const FieldData& f, const OInt& x);
/// Throws DomainError if x is not integral.
OInt to_oint(const FieldData& f, const FieldElement& x);
bool is_integral(const FieldData& f, const FieldElement& x);
Complex embed(const FieldData& f, const OInt& x, int place);
/// True if every coordinate of x is divisible by p.
inline bool divisible(const OInt& x, long long p) { return x.m % p == 0 && x.n % p == 0; }
/// Index [𝔬 : x𝔬 + y𝔬]; equals 1 exactly when x and y are coprime.
long long ideal_index(const FieldData& f, const OInt& x, const OInt& y);

}  // namespace hilbert
