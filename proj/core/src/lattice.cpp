#include "hilbert/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

// First nonzero coordinate of (c, d) positive.
bool sign_canonical(const OInt& c, const OInt& d) {
  if (c.m != 0) return c.m > 0;
  if (c.n != 0) return c.n > 0;
  if (d.m != 0) return d.m > 0;
  return d.n > 0;
}

bool unit_canonical(const FieldData& f, const OInt& c, const OInt& d) {
  const std::pair<OInt, OInt> me{c, d};
  for (const OInt& w : f.roots_of_unity) {
    if (w == OInt{1, 0}) continue;
    if (std::pair<OInt, OInt>{mul(f, w, c), mul(f, w, d)} > me) return false;
  }
  return true;
}

OInt unit_pow(const FieldData& f, long k) {
  // ε^{-1} = N(ε)·ε'
  OInt base = f.unit_int;
  if (k < 0) {
    base = conj(f, base);
    if (norm(f, f.unit_int) < 0) base = -base;
    k = -k;
  }
  OInt r{1, 0};
  for (long i = 0; i < k; ++i) r = mul(f, r, base);
  return r;
}

// Power of ε (±1) that moves log(a1/a2) by 4R in the direction of dir.
long norm_ratio_sign(const FieldData& f, int dir) {
  const bool eps_big_at_1 = std::abs(embed(f, f.unit_int, 0).real()) > 1.0;
  return (dir > 0) == eps_big_at_1 ? 1 : -1;
}

void visit_rational(const Point& z, double B, const std::function<void(const OInt&, const OInt&, double)>& visit) {
  const double x = z.coords[0].x.real(), y = z.coords[0].y;
  if (1.0 / y <= B) visit({0, 0}, {1, 0}, 1.0 / y);
  const long long cmax = static_cast<long long>(std::floor(std::sqrt(B / y)));
  for (long long c = 1; c <= cmax; ++c) {
    const double r2 = B * y - double(c) * double(c) * y * y;
    if (r2 < 0.0) continue;
    const double r = std::sqrt(r2);
    const long long lo = static_cast<long long>(std::ceil(-c * x - r));
    const long long hi = static_cast<long long>(std::floor(-c * x + r));
    for (long long d = lo; d <= hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const double u = c * x + d;
      const double a = (u * u + double(c) * double(c) * y * y) / y;
      if (a <= B) visit({c, 0}, {d, 0}, a);
    }
  }
}

void visit_real_quadratic(const FieldData& f, const Point& z, double B,
                          const std::function<void(const OInt&, const OInt&, double)>& visit) {
  const double w1 = f.omega_embed[0].real(), w2 = f.omega_embed[1].real();
  const double dw = w1 - w2;
  const double x1 = z.coords[0].x.real(), y1 = z.coords[0].y;
  const double x2 = z.coords[1].x.real(), y2 = z.coords[1].y;
  const double R = f.R;
  const double lam = std::sqrt(B) * std::exp(R) * (1.0 + 1e-8);

  auto accept = [&](const OInt& c, const OInt& d) {
    const double c1 = c.m + c.n * w1, c2 = c.m + c.n * w2;
    const double d1 = d.m + d.n * w1, d2 = d.m + d.n * w2;
    const double u1 = c1 * x1 + d1, u2 = c2 * x2 + d2;
    const double a1 = (u1 * u1 + c1 * c1 * y1 * y1) / y1;
    const double a2 = (u2 * u2 + c2 * c2 * y2 * y2) / y2;
    const double a = a1 * a2;
    if (!(a <= B)) return;
    const double L = std::log(a1 / a2);
    constexpr double kTie = 1e-9;
    if (L < -2.0 * R - kTie || L >= 2.0 * R + kTie) return;
    if (!sign_canonical(c, d)) return;
    if (std::abs(std::abs(L) - 2.0 * R) <= kTie) {
      // On the window edge the orbit partner ε^{±1}(c, d) sits on the other
      // edge; keep whichever of the two is lexicographically smaller.
      const OInt u = L > 0.0 ? unit_pow(f, norm_ratio_sign(f, -1)) : unit_pow(f, norm_ratio_sign(f, 1));
      OInt pc = mul(f, u, c), pd = mul(f, u, d);
      if (!sign_canonical(pc, pd)) {
        pc = -pc;
        pd = -pd;
      }
      if (std::pair<OInt, OInt>{pc, pd} < std::pair<OInt, OInt>{c, d}) return;
    }
    if (ideal_index(f, c, d) != 1) return;
    visit(c, d, a);
  };

  // c = 0: d runs over units; exactly one power of ε lands in the window.
  {
    LatticePair p = canonicalize(f, z, {0, 0}, {1, 0});
    if (p.a <= B) visit(p.c, p.d, p.a);
  }

  const double C1 = std::sqrt(lam / y1), C2 = std::sqrt(lam / y2);
  const long long nmax = static_cast<long long>(std::floor((C1 + C2) / dw));
  for (long long n = -nmax; n <= nmax; ++n) {
    const double mlo = std::max(-C1 - n * w1, -C2 - n * w2), mhi = std::min(C1 - n * w1, C2 - n * w2);
    for (long long m = static_cast<long long>(std::ceil(mlo)); m <= static_cast<long long>(std::floor(mhi)); ++m) {
      const OInt c{m, n};
      if (c.is_zero()) continue;
      const double c1 = m + n * w1, c2 = m + n * w2;
      const double r1sq = lam * y1 - c1 * c1 * y1 * y1, r2sq = lam * y2 - c2 * c2 * y2 * y2;
      if (r1sq < 0.0 || r2sq < 0.0) continue;
      const double r1 = std::sqrt(r1sq), r2 = std::sqrt(r2sq);
      const double lo1 = -c1 * x1 - r1, hi1 = -c1 * x1 + r1;
      const double lo2 = -c2 * x2 - r2, hi2 = -c2 * x2 + r2;
      const long long nlo = static_cast<long long>(std::ceil((lo1 - hi2) / dw));
      const long long nhi = static_cast<long long>(std::floor((hi1 - lo2) / dw));
      for (long long dn = nlo; dn <= nhi; ++dn) {
        const double dlo = std::max(lo1 - dn * w1, lo2 - dn * w2), dhi = std::min(hi1 - dn * w1, hi2 - dn * w2);
        for (long long dm = static_cast<long long>(std::ceil(dlo)); dm <= static_cast<long long>(std::floor(dhi));
             ++dm)
          accept(c, {dm, dn});
      }
    }
  }
}

void visit_imaginary_quadratic(const FieldData& f, const Point& z, double B,
                               const std::function<void(const OInt&, const OInt&, double)>& visit) {
  const Complex w = f.omega_embed[0];
  const Complex x = z.coords[0].x;
  const double y = z.coords[0].y;
  const double cap = y * std::sqrt(B) * (1.0 + 1e-12);  // bound on |cx+d|² + |c|²y²

  if (1.0 / (y * y) <= B) visit({0, 0}, {1, 0}, 1.0 / (y * y));

  const double Cr = std::sqrt(cap) / y;
  const long long nmax = static_cast<long long>(std::floor(Cr / w.imag()));
  for (long long n = -nmax; n <= nmax; ++n) {
    const double mlo = -Cr - n * w.real(), mhi = Cr - n * w.real();
    for (long long m = static_cast<long long>(std::ceil(mlo)); m <= static_cast<long long>(std::floor(mhi)); ++m) {
      const OInt c{m, n};
      if (c.is_zero()) continue;
      const Complex ce = double(m) + double(n) * w;
      const double rem = cap - std::norm(ce) * y * y;
      if (rem < 0.0) continue;
      const double rho = std::sqrt(rem);
      const Complex t = -ce * x;
      const long long nlo = static_cast<long long>(std::ceil((t.imag() - rho) / w.imag()));
      const long long nhi = static_cast<long long>(std::floor((t.imag() + rho) / w.imag()));
      for (long long dn = nlo; dn <= nhi; ++dn) {
        const double dlo = t.real() - rho - dn * w.real(), dhi = t.real() + rho - dn * w.real();
        for (long long dm = static_cast<long long>(std::ceil(dlo)); dm <= static_cast<long long>(std::floor(dhi));
             ++dm) {
          const OInt d{dm, dn};
          const Complex de = double(dm) + double(dn) * w;
          const double A = std::norm(ce * x + de) + std::norm(ce) * y * y;
          const double a = (A / y) * (A / y);
          if (!(a <= B)) continue;
          if (!unit_canonical(f, c, d)) continue;
          if (ideal_index(f, c, d) != 1) continue;
          visit(c, d, a);
        }
      }
    }
  }
}

}  // namespace

double pair_weight(const FieldData& field, const Point& z, const OInt& c, const OInt& d) {
  double a = 1.0;
  for (int i = 0; i < field.places(); ++i) {
    const Complex ce = embed(field, c, i), de = embed(field, d, i);
    const double y = z.coords[i].y;
    const double t = (std::norm(ce * z.coords[i].x + de) + std::norm(ce) * y * y) / y;
    a *= field.local_degree(i) == 1 ? t : t * t;
  }
  return a;
}

LatticePair canonicalize(const FieldData& f, const Point& z, const OInt& c_in, const OInt& d_in) {
  if (c_in.is_zero() && d_in.is_zero()) throw DomainError("zero lattice pair");
  OInt c = c_in, d = d_in;
  if (f.is_rational()) {
    if (c.m < 0 || (c.m == 0 && d.m < 0)) {
      c = -c;
      d = -d;
    }
  } else if (f.is_real_quadratic()) {
    auto log_ratio = [&](const OInt& cc, const OInt& dd) {
      double a[2];
      for (int i = 0; i < 2; ++i) {
        const double ce = embed(f, cc, i).real(), de = embed(f, dd, i).real();
        const double y = z.coords[i].y, u = ce * z.coords[i].x.real() + de;
        a[i] = (u * u + ce * ce * y * y) / y;
      }
      return std::log(a[0] / a[1]);
    };
    const long k = static_cast<long>(std::floor((log_ratio(c, d) + 2.0 * f.R) / (4.0 * f.R)));
    if (k != 0) {
      const OInt u = unit_pow(f, -k);
      c = mul(f, u, c);
      d = mul(f, u, d);
    }
    if (!sign_canonical(c, d)) {
      c = -c;
      d = -d;
    }
  } else {
    std::pair<OInt, OInt> best{c, d};
    for (const OInt& w : f.roots_of_unity) {
      std::pair<OInt, OInt> cand{mul(f, w, c), mul(f, w, d)};
      if (cand > best) best = cand;
    }
    c = best.first;
    d = best.second;
  }
  return {c, d, pair_weight(f, z, c, d)};
}

void for_each_pair(const FieldData& field, const Point& z, double bound,
                   const std::function<void(const OInt&, const OInt&, double)>& visit) {
  if (!(bound > 0.0)) throw DomainError("pair enumeration bound must be positive");
  if (field.is_rational())
    visit_rational(z, bound, visit);
  else if (field.is_real_quadratic())
    visit_real_quadratic(field, z, bound, visit);
  else
    visit_imaginary_quadratic(field, z, bound, visit);
}

std::vector<LatticePair> enumerate_pairs(const FieldData& field, const Cusp& cusp, const Point& z, double bound) {
  const Point zs = cusp.is_infinity() ? z : act(cusp.assoc.inverse(), z, field);
  std::vector<LatticePair> out;
  for_each_pair(field, zs, bound, [&](const OInt& c, const OInt& d, double a) { out.push_back({c, d, a}); });
  std::sort(out.begin(), out.end(), [](const LatticePair& p, const LatticePair& q) {
    if (p.a != q.a) return p.a < q.a;
    if (p.c != q.c) return p.c < q.c;
    return p.d < q.d;
  });
  return out;
}

Cusp pair_cusp(const FieldData& field, const OInt& c, const OInt& d) {
  return make_cusp(field, to_element(field, d), -to_element(field, c));
}

double max_cusp_height(const FieldData& field, const Point& z, double min_height, LatticePair* best) {
  double amin = 0.0;
  bool found = false;
  for_each_pair(field, z, 1.0 / min_height, [&](const OInt& c, const OInt& d, double a) {
    if (!found || a < amin) {
      amin = a;
      found = true;
      if (best) *best = {c, d, a};
    }
  });
  return found ? 1.0 / amin : 0.0;
}

}  // namespace hilbert
