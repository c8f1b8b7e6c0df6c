#include "hilbert/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

constexpr int kUnitSearchCap = 10000;

double to_double(const Rational& r) { return r.convert_to<double>(); }

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("integral coordinate exceeds 64 bits");
  return static_cast<long long>(v);
}

BigInt isqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

}  // namespace

// ---- FieldElement --------------------------------------------------------

FieldElement::FieldElement(long d, Rational a, Rational b) : d_(d), a_(std::move(a)), b_(std::move(b)) {
  if (d_ == 0 && b_ != 0) throw DomainError("rational field element with nonzero √d part");
}

void FieldElement::check_same_field(const FieldElement& o) const {
  if (d_ == o.d_) return;
  // Integers of ℚ embed in every field.
  if (o.d_ == 0 || d_ == 0) return;
  throw DomainError("field elements from different fields");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same_field(o);
  if (d_ == 0) d_ = o.d_;
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same_field(o);
  if (d_ == 0) d_ = o.d_;
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same_field(o);
  long d = d_ != 0 ? d_ : o.d_;
  Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  d_ = d;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

FieldElement FieldElement::inverse() const {
  Rational nrm = norm();
  if (nrm == 0) throw DomainError("inverse of zero");
  if (d_ == 0) return FieldElement(0, 1 / a_);
  return FieldElement(d_, a_ / nrm, -b_ / nrm);
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << a_;
  if (d_ != 0 && b_ != 0) os << (b_ > 0 ? " + " : " - ") << abs(b_) << "*sqrt(" << d_ << ")";
  return os.str();
}

// ---- integral coordinates -----------------------------------------------

OInt mul(const FieldData& f, const OInt& x, const OInt& y) {
  __int128 mm = static_cast<__int128>(x.m) * y.m;
  __int128 mn = static_cast<__int128>(x.m) * y.n + static_cast<__int128>(x.n) * y.m;
  __int128 nn = static_cast<__int128>(x.n) * y.n;
  if (f.half_basis) {
    // ω² = ω + (d-1)/4
    return {checked(mm + nn * ((f.d - 1) / 4)), checked(mn + nn)};
  }
  return {checked(mm + nn * f.d), checked(mn)};
}

long long norm(const FieldData& f, const OInt& x) {
  if (f.is_rational()) return x.m;
  __int128 m = x.m, n = x.n;
  if (f.half_basis) return checked(m * m + m * n - n * n * ((f.d - 1) / 4));
  return checked(m * m - n * n * f.d);
}

OInt conj(const FieldData& f, const OInt& x) {
  // conj(ω) = 1 - ω in the half basis, -ω otherwise.
  if (f.half_basis) return {x.m + x.n, -x.n};
  return {x.m, -x.n};
}

FieldElement to_element(const FieldData& f, const OInt& x) {
  if (f.half_basis) return FieldElement(f.d, Rational(2 * x.m + x.n, 2), Rational(x.n, 2));
  return FieldElement(f.d, Rational(x.m), Rational(x.n));
}

bool is_integral(const FieldData& f, const FieldElement& x) {
  if (f.half_basis) {
    Rational n = 2 * x.b();
    Rational m = x.a() - x.b();
    return denominator(n) == 1 && denominator(m) == 1;
  }
  return denominator(x.a()) == 1 && denominator(x.b()) == 1;
}

OInt to_oint(const FieldData& f, const FieldElement& x) {
  if (!is_integral(f, x)) throw DomainError("element is not integral: " + x.to_string());
  Rational n = f.half_basis ? 2 * x.b() : x.b();
  Rational m = f.half_basis ? x.a() - x.b() : x.a();
  return {numerator(m).convert_to<long long>(), numerator(n).convert_to<long long>()};
}

Complex embed(const FieldData& f, const OInt& x, int place) {
  if (f.is_rational()) return static_cast<double>(x.m);
  const Complex v = static_cast<double>(x.m) + static_cast<double>(x.n) * f.omega_embed[place];
  if (f.r1 != 2 || x.n == 0) return v;
  // The smaller real conjugate loses digits to cancellation; take it from the norm.
  const double other = static_cast<double>(x.m) + static_cast<double>(x.n) * f.omega_embed[1 - place].real();
  if (std::abs(v.real()) >= std::abs(other)) return v;
  return static_cast<double>(norm(f, x)) / other;
}

long long ideal_index(const FieldData& f, const OInt& x, const OInt& y) {
  if (f.is_rational()) return std::gcd(std::llabs(x.m), std::llabs(y.m));
  const OInt w{0, 1};
  const OInt cols[4] = {x, mul(f, x, w), y, mul(f, y, w)};
  long long g = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      __int128 det = static_cast<__int128>(cols[i].m) * cols[j].n - static_cast<__int128>(cols[i].n) * cols[j].m;
      long long v = checked(det < 0 ? -det : det);
      g = std::gcd(g, v);
    }
  }
  return g;
}

// ---- field construction --------------------------------------------------

const std::vector<long>& supported_fields() {
  static const std::vector<long> fields = {
      0,  -1, -2, -3, -7, -11, -19, -43, -67, -163, 2,  3,  5,  6,  7,  11, 13, 14, 17, 19, 21, 22, 23,
      29, 31, 33, 37, 38, 41,  43,  46,  47,  53,   57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97};
  return fields;
}

namespace {

// Continued-fraction expansion of (P0 + √d)/Q0; the first convergent p/q
// with N(p - qω) = ±1 yields the fundamental unit.
FieldElement find_fundamental_unit(const FieldData& f) {
  const BigInt d = f.d;
  const BigInt root = isqrt(d);
  BigInt P = f.half_basis ? 1 : 0;
  BigInt Q = f.half_basis ? 2 : 1;
  // Convergent recurrences start from (p_{-1}, p_{-2}) = (1, 0), (q_{-1}, q_{-2}) = (0, 1).
  BigInt pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
  const FieldElement w = f.integral_basis[1];
  for (int iter = 0; iter < kUnitSearchCap; ++iter) {
    BigInt a = (P + root) / Q;
    BigInt pk = a * pm1 + pm2;
    BigInt qk = a * qm1 + qm2;
    FieldElement x = FieldElement(f.d, Rational(pk)) - FieldElement(f.d, Rational(qk)) * w;
    Rational nrm = x.norm();
    if (nrm == 1 || nrm == -1) {
      for (const FieldElement& cand : {x, -x, x.conjugate(), -x.conjugate()}) {
        double v = to_double(cand.a()) + to_double(cand.b()) * std::sqrt(static_cast<double>(f.d));
        if (v > 1.0) return cand;
      }
    }
    pm2 = pm1;
    pm1 = pk;
    qm2 = qm1;
    qm1 = qk;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw UnsupportedField("fundamental unit search exceeded iteration cap for d=" + std::to_string(f.d));
}

}  // namespace

FieldData make_field(long d) {
  const auto& allowed = supported_fields();
  if (std::find(allowed.begin(), allowed.end(), d) == allowed.end())
    throw UnsupportedField("d=" + std::to_string(d) + " is not a supported class-number-one field");

  FieldData f;
  f.d = d;
  if (d == 0) {
    f.r1 = 1;
    f.r2 = 0;
    f.n = 1;
    f.D = 1;
    f.omega = 2;
    f.R = 1.0;
    f.integral_basis = {FieldElement(0, 1), FieldElement(0, 0)};
    f.different_gen = FieldElement(0, 1);
    f.roots_of_unity = {{1, 0}, {-1, 0}};
    return f;
  }

  const long dm4 = ((d % 4) + 4) % 4;
  f.half_basis = dm4 == 1;
  f.n = 2;
  f.D = f.half_basis ? std::labs(d) : 4 * std::labs(d);
  f.integral_basis = {FieldElement(d, 1),
                      f.half_basis ? FieldElement(d, Rational(1, 2), Rational(1, 2)) : FieldElement(d, 0, 1)};
  f.different_gen = f.half_basis ? FieldElement(d, 0, 1) : FieldElement(d, 0, 2);

  if (d > 0) {
    f.r1 = 2;
    f.r2 = 0;
    const double rd = std::sqrt(static_cast<double>(d));
    f.omega_embed = f.half_basis ? std::vector<Complex>{(1 + rd) / 2, (1 - rd) / 2} : std::vector<Complex>{rd, -rd};
    f.omega = 2;
    f.roots_of_unity = {{1, 0}, {-1, 0}};
    f.fundamental_unit = find_fundamental_unit(f);
    f.unit_int = to_oint(f, *f.fundamental_unit);
    f.R = std::log(std::abs(embed(f, f.unit_int, 0)));
  } else {
    f.r1 = 0;
    f.r2 = 1;
    const double rd = std::sqrt(static_cast<double>(-d));
    f.omega_embed = {f.half_basis ? Complex(0.5, rd / 2) : Complex(0.0, rd)};
    f.R = 1.0;
    if (d == -1) {
      f.omega = 4;
      f.roots_of_unity = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    } else if (d == -3) {
      f.omega = 6;
      f.roots_of_unity = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    } else {
      f.omega = 2;
      f.roots_of_unity = {{1, 0}, {-1, 0}};
    }
  }
  return f;
}

std::vector<Complex> embed(const FieldElement& x, const FieldData& f) {
  if (f.is_rational()) return {to_double(x.a())};
  if (f.d < 0) {
    const double rd = std::sqrt(static_cast<double>(-f.d));
    return {Complex(to_double(x.a()), to_double(x.b()) * rd)};
  }
  // Evaluate the larger conjugate directly and recover the smaller one from
  // the exact norm, which avoids cancellation for units of large height.
  const double rd = std::sqrt(static_cast<double>(f.d));
  const double a = to_double(x.a());
  const double b = to_double(x.b()) * rd;
  double v1 = a + b, v2 = a - b;
  const double nrm = to_double(x.norm());
  if (std::abs(v1) >= std::abs(v2)) {
    if (v1 != 0.0) v2 = nrm / v1;
  } else {
    v1 = nrm / v2;
  }
  return {v1, v2};
}

FieldElement unit_power(const FieldData& f, long k) {
  if (!f.fundamental_unit) throw NoUnits("field d=" + std::to_string(f.d) + " has unit rank zero");
  FieldElement base = k < 0 ? f.fundamental_unit->inverse() : *f.fundamental_unit;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  FieldElement result(f.d, 1);
  while (e) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

int kronecker(long a, long n) {
  if (n <= 0) throw DomainError("kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    long am8 = ((a % 8) + 8) % 8;
    if (am8 % 2 == 0) return 0;
    if (am8 == 3 || am8 == 5) result = -result;
  }
  // Jacobi symbol (a/n), n odd.
  long x = ((a % n) + n) % n;
  long m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      long r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

std::vector<long> ideal_count_coeffs(const FieldData& f, long N) {
  if (N < 1) throw DomainError("ideal_count_coeffs needs N >= 1");
  std::vector<long> a(N + 1, 0);
  a[1] = 1;
  if (f.is_rational()) {
    std::fill(a.begin() + 1, a.end(), 1);
    return {a.begin() + 1, a.end()};
  }
  std::vector<long> spf(N + 1, 0);
  for (long i = 2; i <= N; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= N; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  const long disc = f.disc();
  for (long m = 2; m <= N; ++m) {
    long p = spf[m];
    long rest = m;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    long local;
    switch (kronecker(disc, p)) {
      case 1: local = k + 1; break;            // split
      case -1: local = (k % 2 == 0) ? 1 : 0; break;  // inert
      default: local = 1; break;                // ramified
    }
    a[m] = local * a[rest];
  }
  return {a.begin() + 1, a.end()};
}

IdealRep make_ideal(const FieldElement& g) {
  if (g.is_zero()) throw DomainError("zero ideal");
  Rational nrm = g.norm();
  if (nrm < 0) nrm = -nrm;
  if (denominator(nrm) != 1) throw DomainError("IdealRep expects an integral generator");
  return {g, numerator(nrm)};
}

bool same_ideal(const IdealRep& x, const IdealRep& y) {
  if (x.norm != y.norm) return false;
  FieldElement q = x.generator / y.generator;
  Rational n = q.norm();
  if (n != 1 && n != -1) return false;
  // A quotient of norm ±1 is a unit iff it is integral.
  long d = q.d();
  const long dm4 = ((d % 4) + 4) % 4;
  if (d != 0 && dm4 == 1) {
    Rational nn = 2 * q.b();
    Rational m = q.a() - q.b();
    return denominator(nn) == 1 && denominator(m) == 1;
  }
  return denominator(q.a()) == 1 && denominator(q.b()) == 1;
}

}  // namespace hilbert
