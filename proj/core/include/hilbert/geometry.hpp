#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "hilbert/field.hpp"

namespace hilbert {

/// One factor of H: the upper half plane (real place, x.imag() == 0) or
/// upper half space (complex place).
struct PlaceCoord {
  Complex x;
  double y = 1.0;
};

/// z = (z_1, …, z_r), real places first.
struct Point {
  std::vector<PlaceCoord> coords;

  double norm_y(const FieldData& field) const;  // N(y) = Π y_i^{N_i}
};

Point make_point(const FieldData& field, const std::vector<PlaceCoord>& coords);

struct Mat2C {
  Complex a, b, c, d;
};

/// [[a, b], [c, d]] with ad − bc = 1 over K, modulo ±1.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

  static GroupElement identity(long d);
  static GroupElement from_oint(const FieldData& f, const OInt& a, const OInt& b, const OInt& c, const OInt& d);

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& c() const { return c_; }
  const FieldElement& d() const { return d_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
  /// Equality in PSL(2): g == h or g == −h.
  bool operator==(const GroupElement& o) const;
  bool is_identity() const;

  /// Per-place complex matrices.
  std::vector<Mat2C> embedded(const FieldData& field) const;

 private:
  FieldElement a_, b_, c_, d_;
};

/// g·z. Möbius on real places, the quaternionic formula on complex places.
Point act(const GroupElement& g, const Point& z, const FieldData& field);
Point act(const std::vector<Mat2C>& g, const Point& z, const FieldData& field);

/// A cusp λ = ρ/σ stored as a coprime integral pair; ∞ is (1, 0).
struct Cusp {
  FieldElement rho, sigma;
  IdealRep ideal;       // ⟨ρ, σ⟩ = 𝔬
  GroupElement assoc;   // A = [[ρ, ξ], [σ, η]], det 1
  OInt rho_int, sigma_int;

  bool is_infinity() const { return sigma.is_zero(); }
};

/// Cusp for λ = rho/sigma (any representatives in K, not both zero).
Cusp make_cusp(const FieldData& field, const FieldElement& rho, const FieldElement& sigma);
Cusp cusp_infinity(const FieldData& field);
bool same_cusp(const Cusp& a, const Cusp& b);
/// γλ as a cusp.
Cusp transform_cusp(const GroupElement& g, const Cusp& cusp, const FieldData& field);

/// μ(λ, z) = N(y)/|N(−σz + ρ)|² (N(𝔞) = 1 for coprime pairs).
double height(const Cusp& cusp, const Point& z, const FieldData& field);

/// Local coordinates at a cusp. X holds the n integral-basis coordinates of
/// x* (real and imaginary parts are folded into the basis for complex places).
struct LocalCoords {
  double q = 1.0;
  std::vector<double> Y;  // r − 1 entries
  std::vector<double> X;  // n entries
};

LocalCoords local_coords(const Cusp& cusp, const Point& z, const FieldData& field);
Point from_local_coords(const Cusp& cusp, const LocalCoords& lc, const FieldData& field);

/// A·[[u, m u^{-1}], [0, u^{-1}]]·A^{-1} with u = ε^k·w_j. Acts on local
/// coordinates as Y ↦ Y + k, X ↦ O^{-1}E²O X + m.
GroupElement stabilizer_element(const Cusp& cusp, const std::vector<long>& unit_exps, int root_of_unity_index,
                                const std::vector<long>& translation, const FieldData& field);

/// Predicted action of stabilizer_element on local coordinates.
LocalCoords shift_local_coords(const LocalCoords& lc, const std::vector<long>& unit_exps, int root_of_unity_index,
                               const std::vector<long>& translation, const FieldData& field);

/// Folds Y and X into [−½, ½). Returns the reduced point and the stabilizer
/// element mapping z to it.
std::pair<Point, GroupElement> reduce_mod_stabilizer(const Cusp& cusp, const Point& z, const FieldData& field);

/// Density of the induced measure on B(q, λ) against dX dY.
double horosphere_measure_density(const FieldData& field, double q);
/// Density of dυ against dX dY dq.
double volume_density(const FieldData& field, double q);
/// Volume of the cusp cross section Γ_λ\B(q, λ).
double horosphere_volume(const FieldData& field, double q);

/// Argmax of the height over the candidates; first index wins ties.
std::size_t scan_sphere_of_influence(const Point& z, const std::vector<Cusp>& candidates, const FieldData& field);

/// Distance for the product metric (root-sum-square of factor distances).
double hyperbolic_distance(const Point& z, const Point& w, const FieldData& field);

/// Finite-difference Laplacian Σ_real y²(∂x² + ∂y²) + Σ_complex
/// (y²(∂x1² + ∂x2² + ∂y²) − y∂y) of f at z, central differences of step h.
Complex laplacian(const std::function<Complex(const Point&)>& f, const Point& z, const FieldData& field,
                  double h = 1e-3);

/// Integral-basis matrix O (rows indexed by real coordinates of x).
std::array<double, 4> basis_matrix(const FieldData& field);

}  // namespace hilbert
