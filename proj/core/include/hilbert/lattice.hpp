#pragma once

#include <functional>
#include <vector>

#include "hilbert/field.hpp"
#include "hilbert/geometry.hpp"

namespace hilbert {

/// Coprime pair (c, d) modulo the diagonal unit action. `a` is the inverse
/// height contribution |N(cz + d)|²/N(y) at the point it was built for.
struct LatticePair {
  OInt c, d;
  double a = 0.0;

  FieldElement c_element(const FieldData& f) const { return to_element(f, c); }
  FieldElement d_element(const FieldData& f) const { return to_element(f, d); }
};

/// |N(cz + d)|²/N(y), i.e. 1/μ of the cusp (d : −c) at z.
double pair_weight(const FieldData& field, const Point& z, const OInt& c, const OInt& d);

/// Unit-orbit representative: for real quadratic fields the unit power that
/// puts log(a_1/a_2) in [−2R, 2R), then a sign; for imaginary fields the
/// lexicographically largest multiple by a root of unity; for ℚ, c > 0 or (0, 1).
LatticePair canonicalize(const FieldData& field, const Point& z, const OInt& c, const OInt& d);

/// Calls visit(c, d, a) once per canonical coprime pair with a ≤ bound.
/// Visiting order is deterministic.
void for_each_pair(const FieldData& field, const Point& z, double bound,
                   const std::function<void(const OInt&, const OInt&, double)>& visit);

/// Pairs for the cusp λ (evaluated at A^{-1}z), sorted by (a, c, d).
std::vector<LatticePair> enumerate_pairs(const FieldData& field, const Cusp& cusp, const Point& z, double bound);

/// Cusp (d : −c) for a coprime pair.
Cusp pair_cusp(const FieldData& field, const OInt& c, const OInt& d);

/// Largest cusp height at z among cusps with height ≥ min_height; returns 0
/// when there is none. The maximizing pair is written to `best` if non-null.
double max_cusp_height(const FieldData& field, const Point& z, double min_height, LatticePair* best = nullptr);

}  // namespace hilbert
