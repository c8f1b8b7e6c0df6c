#include "hilbert/geometry.hpp"

#include <cmath>
#include <numeric>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

long long to_ll(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("integer matrix entry exceeds 64 bits");
  return static_cast<long long>(v);
}

// Extended gcd: returns g ≥ 0 with x·a + y·b = g.
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

// Column Hermite reduction of a 2×k integer matrix M (row 0 = m coordinates,
// row 1 = n coordinates). On return M = [[g,0,…],[r,h,0,…]] and M_in·U = M.
struct ColumnHnf {
  std::vector<std::array<long long, 2>> cols;
  std::vector<std::vector<long long>> U;  // U[i][j], k×k
};

void column_op(ColumnHnf& H, std::size_t i, std::size_t j, long long x, long long y, long long u, long long v) {
  // col_i ← x·col_i + y·col_j ; col_j ← u·col_i + v·col_j (old values)
  auto ci = H.cols[i], cj = H.cols[j];
  for (int r = 0; r < 2; ++r) {
    H.cols[i][r] = to_ll(static_cast<__int128>(x) * ci[r] + static_cast<__int128>(y) * cj[r]);
    H.cols[j][r] = to_ll(static_cast<__int128>(u) * ci[r] + static_cast<__int128>(v) * cj[r]);
  }
  for (auto& row : H.U) {
    long long a = row[i], b = row[j];
    row[i] = to_ll(static_cast<__int128>(x) * a + static_cast<__int128>(y) * b);
    row[j] = to_ll(static_cast<__int128>(u) * a + static_cast<__int128>(v) * b);
  }
}

ColumnHnf column_hnf(const std::vector<OInt>& in) {
  ColumnHnf H;
  const std::size_t k = in.size();
  for (const OInt& c : in) H.cols.push_back({c.m, c.n});
  H.U.assign(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) H.U[i][i] = 1;
  for (int row = 0; row < 2; ++row) {
    const std::size_t piv = static_cast<std::size_t>(row);
    for (std::size_t j = piv + 1; j < k; ++j) {
      long long a = H.cols[piv][row], b = H.cols[j][row];
      if (b == 0) continue;
      long long x, y;
      long long g = ext_gcd(a, b, x, y);
      column_op(H, piv, j, x, y, -b / g, a / g);
    }
    if (H.cols[piv][row] < 0) column_op(H, piv, piv == 0 ? 1 : 0, -1, 0, 0, 1);
  }
  return H;
}

BigInt denominator_lcm(const FieldData& f, const std::vector<FieldElement>& xs) {
  BigInt L = 1;
  for (const auto& x : xs) {
    L = boost::multiprecision::lcm(L, denominator(x.a()));
    L = boost::multiprecision::lcm(L, denominator(x.b()));
  }
  (void)f;
  return L;
}

// Generator of the ideal xO + yO (class number one), by HNF and a search for
// an element of norm equal to the index.
OInt ideal_generator(const FieldData& f, const OInt& x, const OInt& y, long long index) {
  const OInt w{0, 1};
  ColumnHnf H = column_hnf({x, mul(f, x, w), y, mul(f, y, w)});
  const OInt b1{H.cols[0][0], H.cols[0][1]}, b2{H.cols[1][0], H.cols[1][1]};
  for (long long r = 0; r <= 200; ++r) {
    for (long long i = -r; i <= r; ++i) {
      for (long long j = -r; j <= r; ++j) {
        if (std::max(std::llabs(i), std::llabs(j)) != r) continue;
        OInt v{i * b1.m + j * b2.m, i * b1.n + j * b2.n};
        if (v.is_zero()) continue;
        if (std::llabs(norm(f, v)) == index) return v;
      }
    }
  }
  throw NotConvergent("ideal generator search failed");
}

OInt exact_div(const FieldData& f, const OInt& x, const OInt& g) {
  return to_oint(f, to_element(f, x) / to_element(f, g));
}

std::array<double, 4> invert2(const std::array<double, 4>& m) {
  double det = m[0] * m[3] - m[1] * m[2];
  if (det == 0.0) throw SingularBasisMatrix("integral basis matrix is singular");
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

// Real coordinate vector of x* (length n).
std::vector<double> x_vector(const Point& z, const FieldData& f) {
  if (f.is_rational()) return {z.coords[0].x.real()};
  if (f.is_real_quadratic()) return {z.coords[0].x.real(), z.coords[1].x.real()};
  return {z.coords[0].x.real(), z.coords[0].x.imag()};
}

std::vector<double> x_to_basis(const std::vector<double>& xv, const FieldData& f) {
  if (f.is_rational()) return xv;
  auto inv = invert2(basis_matrix(f));
  return {inv[0] * xv[0] + inv[1] * xv[1], inv[2] * xv[0] + inv[3] * xv[1]};
}

std::vector<double> basis_to_x(const std::vector<double>& X, const FieldData& f) {
  if (f.is_rational()) return X;
  auto O = basis_matrix(f);
  return {O[0] * X[0] + O[1] * X[1], O[2] * X[0] + O[3] * X[1]};
}

FieldElement element_from_coords(const FieldData& f, const std::vector<long>& m) {
  if (f.is_rational()) return FieldElement(0, m.empty() ? 0 : m[0]);
  if (m.size() != 2) throw DomainError("translation needs n integer coordinates");
  return to_element(f, OInt{m[0], m[1]});
}

FieldElement stabilizer_unit(const FieldData& f, const std::vector<long>& unit_exps, int root_index) {
  FieldElement u = FieldElement::from_int(f.d, 1);
  if (f.is_real_quadratic() && !unit_exps.empty() && unit_exps[0] != 0) u = unit_power(f, unit_exps[0]);
  if (root_index < 0 || root_index >= static_cast<int>(f.roots_of_unity.size()))
    throw DomainError("root of unity index out of range");
  return u * to_element(f, f.roots_of_unity[root_index]);
}

}  // namespace

// ---- points and group elements ------------------------------------------------

double Point::norm_y(const FieldData& field) const {
  double v = 1.0;
  for (int i = 0; i < field.places(); ++i) v *= field.local_degree(i) == 1 ? coords[i].y : coords[i].y * coords[i].y;
  return v;
}

Point make_point(const FieldData& field, const std::vector<PlaceCoord>& coords) {
  if (static_cast<int>(coords.size()) != field.places()) throw DomainError("point needs one coordinate per place");
  for (int i = 0; i < field.places(); ++i) {
    if (!(coords[i].y > 0.0)) throw DomainError("point needs y > 0");
    if (field.local_degree(i) == 1 && coords[i].x.imag() != 0.0) throw DomainError("real place with complex x");
  }
  return Point{coords};
}

GroupElement::GroupElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  FieldElement det = a_ * d_ - b_ * c_;
  if (!(det.a() == 1 && det.b() == 0)) throw DomainError("group element must have determinant 1");
}

GroupElement GroupElement::identity(long d) {
  return GroupElement(FieldElement::from_int(d, 1), FieldElement::from_int(d, 0), FieldElement::from_int(d, 0),
                      FieldElement::from_int(d, 1));
}

GroupElement GroupElement::from_oint(const FieldData& f, const OInt& a, const OInt& b, const OInt& c, const OInt& d) {
  return GroupElement(to_element(f, a), to_element(f, b), to_element(f, c), to_element(f, d));
}

GroupElement GroupElement::inverse() const { return GroupElement(d_, -b_, -c_, a_); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return GroupElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_) return true;
  return a_ == -o.a_ && b_ == -o.b_ && c_ == -o.c_ && d_ == -o.d_;
}

bool GroupElement::is_identity() const { return *this == identity(a_.d() != 0 ? a_.d() : d_.d()); }

std::vector<Mat2C> GroupElement::embedded(const FieldData& field) const {
  auto ea = embed(a_, field), eb = embed(b_, field), ec = embed(c_, field), ed = embed(d_, field);
  std::vector<Mat2C> out(static_cast<std::size_t>(field.places()));
  for (int i = 0; i < field.places(); ++i) out[i] = {ea[i], eb[i], ec[i], ed[i]};
  return out;
}

Point act(const std::vector<Mat2C>& g, const Point& z, const FieldData& field) {
  Point out = z;
  for (int i = 0; i < field.places(); ++i) {
    const Mat2C& m = g[i];
    const Complex x = z.coords[i].x;
    const double y = z.coords[i].y;
    if (field.local_degree(i) == 1) {
      const Complex w(x.real(), y);
      const Complex r = (m.a.real() * w + m.b.real()) / (m.c.real() * w + m.d.real());
      out.coords[i] = {Complex(r.real(), 0.0), r.imag()};
    } else {
      const Complex cxd = m.c * x + m.d;
      const double den = std::norm(cxd) + std::norm(m.c) * y * y;
      const Complex nx = ((m.a * x + m.b) * std::conj(cxd) + m.a * std::conj(m.c) * (y * y)) / den;
      out.coords[i] = {nx, y / den};
    }
  }
  return out;
}

Point act(const GroupElement& g, const Point& z, const FieldData& field) { return act(g.embedded(field), z, field); }

// ---- cusps -------------------------------------------------------------------

Cusp cusp_infinity(const FieldData& field) {
  Cusp c;
  c.rho = FieldElement::from_int(field.d, 1);
  c.sigma = FieldElement::from_int(field.d, 0);
  c.ideal = make_ideal(c.rho);
  c.assoc = GroupElement::identity(field.d);
  c.rho_int = {1, 0};
  c.sigma_int = {0, 0};
  return c;
}

Cusp make_cusp(const FieldData& f, const FieldElement& rho_in, const FieldElement& sigma_in) {
  if (rho_in.is_zero() && sigma_in.is_zero()) throw DomainError("cusp needs a nonzero pair");
  if (sigma_in.is_zero()) return cusp_infinity(f);

  // Clear denominators; integers times elements of ℤ[√d] are integral.
  BigInt L = denominator_lcm(f, {rho_in, sigma_in});
  FieldElement scale(f.d, Rational(L));
  OInt rho = to_oint(f, rho_in * scale), sigma = to_oint(f, sigma_in * scale);

  if (f.is_rational()) {
    long long g = std::gcd(std::llabs(rho.m), std::llabs(sigma.m));
    rho.m /= g;
    sigma.m /= g;
    if (rho.m < 0 || (rho.m == 0 && sigma.m < 0)) {
      rho = -rho;
      sigma = -sigma;
    }
  } else {
    long long idx = ideal_index(f, rho, sigma);
    if (idx != 1) {
      OInt g = ideal_generator(f, rho, sigma, idx);
      rho = exact_div(f, rho, g);
      sigma = exact_div(f, sigma, g);
    }
    if (f.is_real_quadratic()) {
      const OInt& lead = rho.is_zero() ? sigma : rho;
      if (embed(f, lead, 0).real() < 0) {
        rho = -rho;
        sigma = -sigma;
      }
    } else {
      std::pair<OInt, OInt> best{rho, sigma};
      for (const OInt& w : f.roots_of_unity) {
        std::pair<OInt, OInt> cand{mul(f, w, rho), mul(f, w, sigma)};
        if (cand > best) best = cand;
      }
      rho = best.first;
      sigma = best.second;
    }
  }

  // Bezout: ρη − σξ = 1.
  OInt eta, xi;
  if (f.is_rational()) {
    long long x, y;
    ext_gcd(rho.m, sigma.m, x, y);  // xρ + yσ = 1
    eta = {x, 0};
    xi = {-y, 0};
  } else {
    const OInt w{0, 1};
    ColumnHnf H = column_hnf({rho, mul(f, rho, w), -sigma, -mul(f, sigma, w)});
    if (H.cols[0][0] != 1 || H.cols[1][1] != 1) throw DomainError("cusp pair is not coprime");
    const long long t0 = 1, t1 = -H.cols[0][1];
    std::array<long long, 4> y{};
    for (int i = 0; i < 4; ++i) y[i] = to_ll(static_cast<__int128>(H.U[i][0]) * t0 + static_cast<__int128>(H.U[i][1]) * t1);
    eta = {y[0], y[1]};
    xi = {y[2], y[3]};
  }

  Cusp c;
  c.rho_int = rho;
  c.sigma_int = sigma;
  c.rho = to_element(f, rho);
  c.sigma = to_element(f, sigma);
  c.ideal = make_ideal(FieldElement::from_int(f.d, 1));
  c.assoc = GroupElement(c.rho, to_element(f, xi), c.sigma, to_element(f, eta));
  return c;
}

bool same_cusp(const Cusp& a, const Cusp& b) { return a.rho * b.sigma == b.rho * a.sigma; }

Cusp transform_cusp(const GroupElement& g, const Cusp& cusp, const FieldData& field) {
  return make_cusp(field, g.a() * cusp.rho + g.b() * cusp.sigma, g.c() * cusp.rho + g.d() * cusp.sigma);
}

double height(const Cusp& cusp, const Point& z, const FieldData& field) {
  double mu = 1.0;
  for (int i = 0; i < field.places(); ++i) {
    const Complex r = embed(field, cusp.rho_int, i), s = embed(field, cusp.sigma_int, i);
    const double y = z.coords[i].y;
    const double den = std::norm(r - s * z.coords[i].x) + std::norm(s) * y * y;
    const double t = y / den;
    mu *= field.local_degree(i) == 1 ? t : t * t;
  }
  return mu;
}

// ---- local coordinates ---------------------------------------------------------

std::array<double, 4> basis_matrix(const FieldData& f) {
  if (f.is_rational()) return {1.0, 0.0, 0.0, 1.0};
  if (f.is_real_quadratic()) return {1.0, f.omega_embed[0].real(), 1.0, f.omega_embed[1].real()};
  return {1.0, f.omega_embed[0].real(), 0.0, f.omega_embed[0].imag()};
}

LocalCoords local_coords(const Cusp& cusp, const Point& z, const FieldData& field) {
  const Point zs = cusp.is_infinity() ? z : act(cusp.assoc.inverse(), z, field);
  LocalCoords lc;
  lc.q = zs.norm_y(field);
  if (field.is_real_quadratic()) lc.Y = {std::log(zs.coords[0].y / zs.coords[1].y) / (4.0 * field.R)};
  lc.X = x_to_basis(x_vector(zs, field), field);
  return lc;
}

Point from_local_coords(const Cusp& cusp, const LocalCoords& lc, const FieldData& field) {
  if (!(lc.q > 0.0)) throw DomainError("local coordinates need q > 0");
  const std::vector<double> xv = basis_to_x(lc.X, field);
  Point zs;
  if (field.is_rational()) {
    zs.coords = {{Complex(xv[0], 0.0), lc.q}};
  } else if (field.is_real_quadratic()) {
    const double rq = std::sqrt(lc.q);
    const double e = std::exp(2.0 * field.R * lc.Y.at(0));
    zs.coords = {{Complex(xv[0], 0.0), rq * e}, {Complex(xv[1], 0.0), rq / e}};
  } else {
    zs.coords = {{Complex(xv[0], xv[1]), std::sqrt(lc.q)}};
  }
  return cusp.is_infinity() ? zs : act(cusp.assoc, zs, field);
}

GroupElement stabilizer_element(const Cusp& cusp, const std::vector<long>& unit_exps, int root_of_unity_index,
                                const std::vector<long>& translation, const FieldData& field) {
  const FieldElement u = stabilizer_unit(field, unit_exps, root_of_unity_index);
  const FieldElement m = translation.empty() ? FieldElement::from_int(field.d, 0)
                                             : element_from_coords(field, translation);
  const FieldElement ui = u.inverse();
  GroupElement M(u, m * ui, FieldElement::from_int(field.d, 0), ui);
  if (cusp.is_infinity()) return M;
  return cusp.assoc * M * cusp.assoc.inverse();
}

LocalCoords shift_local_coords(const LocalCoords& lc, const std::vector<long>& unit_exps, int root_of_unity_index,
                               const std::vector<long>& translation, const FieldData& field) {
  LocalCoords out = lc;
  const FieldElement u = stabilizer_unit(field, unit_exps, root_of_unity_index);
  const std::vector<Complex> ue = embed(u, field);
  std::vector<double> xv = basis_to_x(lc.X, field);
  if (field.is_real_quadratic()) {
    out.Y[0] += unit_exps.empty() ? 0 : unit_exps[0];
    for (int i = 0; i < 2; ++i) xv[i] *= (ue[i] * ue[i]).real();
  } else if (field.is_imaginary_quadratic()) {
    const Complex x = Complex(xv[0], xv[1]) * ue[0] * ue[0];
    xv = {x.real(), x.imag()};
  } else {
    xv[0] *= (ue[0] * ue[0]).real();
  }
  out.X = x_to_basis(xv, field);
  for (std::size_t i = 0; i < translation.size() && i < out.X.size(); ++i) out.X[i] += translation[i];
  return out;
}

std::pair<Point, GroupElement> reduce_mod_stabilizer(const Cusp& cusp, const Point& z, const FieldData& field) {
  LocalCoords lc = local_coords(cusp, z, field);
  std::vector<long> k;
  if (field.is_real_quadratic()) {
    k = {-static_cast<long>(std::floor(lc.Y[0] + 0.5))};
    lc = shift_local_coords(lc, k, 0, {}, field);
  }
  std::vector<long> m(lc.X.size());
  bool moved = !k.empty() && k[0] != 0;
  for (std::size_t i = 0; i < lc.X.size(); ++i) {
    m[i] = -static_cast<long>(std::floor(lc.X[i] + 0.5));
    lc.X[i] += m[i];
    moved = moved || m[i] != 0;
  }
  if (!moved) return {z, GroupElement::identity(field.d)};
  return {from_local_coords(cusp, lc, field), stabilizer_element(cusp, k, 0, m, field)};
}

// ---- measures -------------------------------------------------------------------

double horosphere_measure_density(const FieldData& f, double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  return std::sqrt(double(f.r1 + 4 * f.r2)) * std::ldexp(1.0, f.r1 - f.r2 - 1) / q * std::sqrt(double(f.D)) * f.R;
}

double volume_density(const FieldData& f, double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  return std::ldexp(1.0, f.r1 - f.r2 - 1) / (q * q) * std::sqrt(double(f.D)) * f.R;
}

double horosphere_volume(const FieldData& f, double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  return std::ldexp(1.0, f.r1 - f.r2) / (q * f.omega) * std::sqrt(double(f.r1 + 4 * f.r2)) *
         std::sqrt(double(f.D)) * f.R;
}

std::size_t scan_sphere_of_influence(const Point& z, const std::vector<Cusp>& candidates, const FieldData& field) {
  if (candidates.empty()) throw DomainError("empty candidate cusp list");
  std::size_t best = 0;
  double best_mu = height(candidates[0], z, field);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double mu = height(candidates[i], z, field);
    if (mu > best_mu) {
      best_mu = mu;
      best = i;
    }
  }
  return best;
}

double hyperbolic_distance(const Point& z, const Point& w, const FieldData& field) {
  double acc = 0.0;
  for (int i = 0; i < field.places(); ++i) {
    const double y1 = z.coords[i].y, y2 = w.coords[i].y;
    const double num = std::norm(z.coords[i].x - w.coords[i].x) + (y1 - y2) * (y1 - y2);
    const double d = 2.0 * std::asinh(std::sqrt(num / (4.0 * y1 * y2)));
    acc += d * d;
  }
  return std::sqrt(acc);
}

Complex laplacian(const std::function<Complex(const Point&)>& f, const Point& z, const FieldData& field, double h) {
  const Complex f0 = f(z);
  Complex total = 0.0;
  auto second = [&](auto&& shift) {
    Point p = z, m = z;
    shift(p, h);
    shift(m, -h);
    Complex fp = f(p), fm = f(m);
    return std::make_pair((fp - 2.0 * f0 + fm) / (h * h), (fp - fm) / (2.0 * h));
  };
  for (int i = 0; i < field.places(); ++i) {
    const double y = z.coords[i].y;
    auto [dxx, dx_] = second([i](Point& p, double t) { p.coords[i].x += t; });
    auto [dyy, dy] = second([i](Point& p, double t) { p.coords[i].y += t; });
    (void)dx_;
    if (field.local_degree(i) == 1) {
      total += y * y * (dxx + dyy);
    } else {
      auto [dii, di_] = second([i](Point& p, double t) { p.coords[i].x += Complex(0.0, t); });
      (void)di_;
      total += y * y * (dxx + dii + dyy) - y * dy;
    }
  }
  return total;
}

}  // namespace hilbert
