#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "hilbert/field.hpp"
#include "hilbert/geometry.hpp"

namespace testing {

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  const double scale = std::abs(b);
  return std::abs(a - b) / (scale > 0 ? scale : 1.0);
}

/// Random point with x in the unit box and y in [ylo, yhi] at every place.
inline hilbert::Point random_point(const hilbert::FieldData& f, std::mt19937_64& rng, double ylo = 0.8,
                                   double yhi = 1.6) {
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(ylo, yhi);
  std::vector<hilbert::PlaceCoord> c;
  for (int i = 0; i < f.places(); ++i) {
    hilbert::PlaceCoord p;
    const double re = ux(rng);
    p.x = i < f.r1 ? hilbert::Complex(re, 0.0) : hilbert::Complex(re, ux(rng));
    p.y = uy(rng);
    c.push_back(p);
  }
  return hilbert::make_point(f, c);
}

/// Random element of SL(2, 𝔬) built as a word in elementary matrices.
inline hilbert::GroupElement random_group_element(const hilbert::FieldData& f, std::mt19937_64& rng, int length = 4) {
  std::uniform_int_distribution<int> coef(-2, 2);
  auto g = hilbert::GroupElement::identity(f.d);
  const hilbert::OInt one{1, 0}, zero{0, 0};
  for (int k = 0; k < length; ++k) {
    hilbert::OInt t{coef(rng), f.is_rational() ? 0 : coef(rng)};
    const auto e = (k % 2 == 0) ? hilbert::GroupElement::from_oint(f, one, t, zero, one)
                                : hilbert::GroupElement::from_oint(f, one, zero, t, one);
    g = g * e;
  }
  return g;
}

}  // namespace testing
