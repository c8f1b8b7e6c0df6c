#include <doctest.h>

#include <map>
#include <set>

#include "hilbert/lattice.hpp"
#include "support.hpp"

using namespace hilbert;

namespace {

using PairKey = std::pair<OInt, OInt>;

// Every coprime pair in a coefficient box, folded to its unit-orbit
// representative, with weight ≤ bound.
std::set<PairKey> brute_pairs(const FieldData& f, const Point& z, double bound, long box) {
  std::set<PairKey> out;
  const long nb = f.is_rational() ? 0 : box;
  for (long cm = -box; cm <= box; ++cm)
    for (long cn = -nb; cn <= nb; ++cn)
      for (long dm = -box; dm <= box; ++dm)
        for (long dn = -nb; dn <= nb; ++dn) {
          const OInt c{cm, cn}, d{dm, dn};
          if (c.is_zero() && d.is_zero()) continue;
          if (ideal_index(f, c, d) != 1) continue;
          if (pair_weight(f, z, c, d) > bound) continue;
          const auto p = canonicalize(f, z, c, d);
          out.insert({p.c, p.d});
        }
  return out;
}

std::set<PairKey> enumerated(const FieldData& f, const Point& z, double bound) {
  std::set<PairKey> out;
  for (const auto& p : enumerate_pairs(f, cusp_infinity(f), z, bound)) out.insert({p.c, p.d});
  return out;
}

}  // namespace

TEST_CASE("rational pairs at i") {
  const auto f = make_field(0);
  const auto z = make_point(f, {PlaceCoord{Complex(0, 0), 1.0}});
  const auto pairs = enumerate_pairs(f, cusp_infinity(f), z, 2.0);
  std::set<PairKey> got;
  for (const auto& p : pairs) got.insert({p.c, p.d});
  const std::set<PairKey> want{{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{1, 0}, {-1, 0}}};
  CHECK(got == want);
  CHECK(enumerate_pairs(f, cusp_infinity(f), z, 4.0).size() == 4);
  for (std::size_t i = 1; i < pairs.size(); ++i) CHECK(pairs[i - 1].a <= pairs[i].a);
}

TEST_CASE("small bound keeps only the trivial orbit") {
  for (long d : {0L, 5L, -1L}) {
    const auto f = make_field(d);
    std::vector<PlaceCoord> c(f.places(), PlaceCoord{Complex(0.1, 0), 3.0});
    const auto z = make_point(f, c);
    const auto pairs = enumerate_pairs(f, cusp_infinity(f), z, 1.0);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].c.is_zero());
  }
}

TEST_CASE("enumeration is complete against a coefficient box") {
  std::mt19937_64 rng(29);
  for (long d : {0L, 5L, -1L, -3L, 2L}) {
    const auto f = make_field(d);
    for (int t = 0; t < 3; ++t) {
      const auto z = testing::random_point(f, rng, 0.9, 1.5);
      const double bound = f.is_rational() ? 60.0 : 12.0;
      const long box = f.is_rational() ? 40 : 9;
      const auto brute = brute_pairs(f, z, bound, box);
      CAPTURE(d);
      CHECK(brute == brute_pairs(f, z, bound, box + 3));  // box saturated
      CHECK(enumerated(f, z, bound) == brute);
    }
  }
}

TEST_CASE("canonical form is idempotent and orbit invariant") {
  std::mt19937_64 rng(31);
  for (long d : {5L, 2L, -1L, -3L}) {
    const auto f = make_field(d);
    const auto z = testing::random_point(f, rng);
    for (const auto& p : enumerate_pairs(f, cusp_infinity(f), z, 10.0)) {
      const auto again = canonicalize(f, z, p.c, p.d);
      CHECK(again.c == p.c);
      CHECK(again.d == p.d);
      for (const auto& w : f.roots_of_unity) {
        OInt u = w;
        if (f.is_real_quadratic()) u = mul(f, w, mul(f, f.unit_int, f.unit_int));
        const auto moved = canonicalize(f, z, mul(f, u, p.c), mul(f, u, p.d));
        CHECK(moved.c == p.c);
        CHECK(moved.d == p.d);
      }
    }
  }
}

TEST_CASE("pair weights are inverse heights") {
  std::mt19937_64 rng(37);
  for (long d : {0L, 5L, -1L}) {
    const auto f = make_field(d);
    const auto z = testing::random_point(f, rng);
    for (const auto& p : enumerate_pairs(f, cusp_infinity(f), z, 8.0)) {
      const double mu = height(pair_cusp(f, p.c, p.d), z, f);
      CHECK(p.a * mu == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("max cusp height") {
  const auto f = make_field(0);
  const auto z = make_point(f, {PlaceCoord{Complex(0.2, 0), 3.0}});
  LatticePair best;
  CHECK(max_cusp_height(f, z, 1.0, &best) == doctest::Approx(3.0));
  CHECK(best.c.is_zero());
  const auto low = make_point(f, {PlaceCoord{Complex(0.5, 0), 0.02}});
  // the cusp ½ dominates: μ = y/|2z − 1|² = 1/(4y)
  CHECK(max_cusp_height(f, low, 1.0, &best) == doctest::Approx(12.5));
  CHECK(max_cusp_height(f, make_point(f, {PlaceCoord{Complex(0.3, 0), 1.0}}), 5.0) == 0.0);
}
