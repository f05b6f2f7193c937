#include <random>

#include "doctest.h"
#include "mumford/error.hpp"
#include "mumford/omega.hpp"
#include "test_support.hpp"

using namespace mumford;
using mumford::testing::q;

namespace {

FundamentalDomain unit_ball(long p) { return FundamentalDomain{Disc(p, q(0), 0), {}}; }

}  // namespace

TEST_CASE("local absolute value of f") {
  auto f = RationalFunctionDatum::dz_over_z();
  CHECK(local_abs(f, Disc(3, q(1), -1)) == 1);
  CHECK(local_abs(f, Disc(3, q(3), -2)) == 3);
  RationalFunctionDatum g(q(1), {{q(0), 1}, {q(9), 1}});
  CHECK(local_abs(g, Disc(3, q(1), -1)) == 1);
  CHECK_THROWS_AS(local_abs(f, Disc(3, q(0), -1)), Error);
}

TEST_CASE("polynomial factors split over Q") {
  // z^2 - 5z + 6 = (z-2)(z-3)
  RationalFunctionDatum f(q(1), {}, {{{q(6), q(-5), q(1)}, 1}});
  REQUIRE(f.roots().size() == 2);
  CHECK(f.roots()[0].root == 2);
  CHECK(f.roots()[1].root == 3);
  // 2z^2 - z = z(2z - 1): leading coefficient goes into the scale.
  RationalFunctionDatum g(q(1), {}, {{{q(0), q(-1), q(2)}, 1}});
  CHECK(g.scale() == 2);
  CHECK(g.roots()[1].root == q(1, 2));
  try {
    RationalFunctionDatum bad(q(1), {}, {{{q(-2), q(0), q(1)}, 1}});
    FAIL("irrational zeros accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAssumptionViolated);
  }
}

TEST_CASE("Tate profile") {
  auto G = testing::tate_group();
  auto prof = build_profile(3, RationalFunctionDatum::dz_over_z(), G.domain, 2);
  REQUIRE(prof.pieces.size() == 4);
  int ones = 0, threes = 0;
  for (const auto& piece : prof.pieces) {
    if (piece.density == 1) {
      ++ones;
      CHECK(piece.disc.radius_exp() == -1);
    }
    if (piece.density == 3) {
      ++threes;
      CHECK(piece.disc.radius_exp() == -2);
    }
  }
  CHECK(ones == 2);
  CHECK(threes == 2);
  CHECK(prof.total_mass() == q(4, 3));
  CHECK(prof.zero_cores.empty());
  CHECK(mass(prof, Disc(3, q(1), -1)) == q(1, 3));
  CHECK(mass(prof, Disc(3, q(3), -2)) == q(1, 3));
  CHECK(mass(prof, G.domain.outer) == q(4, 3));
  CHECK(mass(prof, Disc(3, q(4), -2)) == q(1, 9));
  check_partition(prof, G.domain);
}

TEST_CASE("constant density and zero-cores") {
  auto F = unit_ball(3);
  auto prof = build_profile(3, RationalFunctionDatum(q(1), {}), F, 3);
  CHECK(prof.pieces.size() == 1);
  CHECK(prof.total_mass() == F.measure());

  RationalFunctionDatum z(q(1), {{q(0), 1}});
  Rational prev(-1);
  for (long m = 1; m <= 6; ++m) {
    auto pz = build_profile(3, z, F, m);
    REQUIRE(pz.zero_cores.size() == 1);
    CHECK(pz.zero_cores[0].disc == Disc(3, q(0), -m));
    // integral of |z| over the ball |z| <= 3^-m: C(1) 3^(-2m) with C(1) = 3/4
    CHECK(pz.zero_cores[0].mass == q(3, 4) * rational_pow(3, -2 * m));
    // pieces: the spheres |z| = 3^-k, k < m, with density 3^-k
    Rational expected(0);
    for (long k = 0; k < m; ++k) expected += rational_pow(3, -k) * rational_pow(3, -k) * q(2, 3);
    CHECK(pz.total_mass() == expected);
    CHECK(pz.total_mass() + pz.zero_core_mass() == q(3, 4));
    if (prev > 0) CHECK(pz.zero_cores[0].mass * 2 <= prev);
    prev = pz.zero_cores[0].mass;
    check_partition(pz, F);
  }
  CHECK_THROWS_AS(mass(build_profile(3, z, F, 2), Disc(3, q(0), -3)), Error);
  CHECK_THROWS_AS(build_profile(3, RationalFunctionDatum(q(1), {{q(0), -1}}), F, 2), Error);
}

TEST_CASE("invariance audit") {
  auto G = testing::tate_group();
  auto f = RationalFunctionDatum::dz_over_z();
  auto prof = build_profile(3, f, G.domain, 2);
  auto rows = invariance_audit(prof, f, G);
  CHECK(rows.size() == 8);
  bool seen = false;
  for (const auto& row : rows) {
    CHECK(row.form_invariant);
    if (row.piece == Disc(3, q(1), -1) && row.generator == GroupWord::letter(1)) {
      seen = true;
      CHECK_FALSE(row.density_equal);
      CHECK(row.density == 1);
      CHECK(row.image_density == 9);
      CHECK_FALSE(row.isometric);
      CHECK(row.derivative == q(1, 9));
    }
  }
  CHECK(seen);

  SchottkyGroup trivial = G;
  trivial.generators[0] = MoebiusMap();
  for (const auto& row : invariance_audit(prof, f, trivial)) {
    CHECK(row.form_invariant);
    CHECK(row.density_equal);
    CHECK(row.isometric);
  }
  auto one = RationalFunctionDatum(q(1), {});
  auto flat = build_profile(3, one, G.domain, 2);
  for (const auto& row : invariance_audit(flat, one, trivial)) {
    CHECK(row.form_invariant);
    CHECK(row.density_equal);
    CHECK(row.isometric);
  }
}

TEST_CASE("profile JSON round trip") {
  auto G = testing::tate_group();
  auto prof = build_profile(3, RationalFunctionDatum::dz_over_z(), G.domain, 2);
  Json j = prof.to_json();
  CHECK(j["pieces"][0]["density"].is_string());
  auto back = MeasureProfile::from_json(3, j, G.domain);
  REQUIRE(back.pieces.size() == prof.pieces.size());
  for (size_t i = 0; i < prof.pieces.size(); ++i) {
    CHECK(back.pieces[i].disc == prof.pieces[i].disc);
    CHECK(back.pieces[i].density == prof.pieces[i].density);
  }
  Json broken = j;
  broken["pieces"].erase(0);
  CHECK_THROWS_AS(MeasureProfile::from_json(3, broken, G.domain), Error);
  auto datum = RationalFunctionDatum::from_json(RationalFunctionDatum::dz_over_z().to_json());
  CHECK(datum.roots().size() == 1);
  CHECK(datum.roots()[0].multiplicity == -1);
}

TEST_CASE("property: local constancy under refinement") {
  std::mt19937_64 rng(5);
  RationalFunctionDatum f(q(7, 2), {{q(0), -1}, {q(9), 2}, {q(1, 3), 1}, {q(5), -3}});
  int checked = 0;
  while (checked < 500) {
    Disc d(3, testing::random_rational(rng, 3, -2, 3), long(rng() % 5) - 3);
    bool clean = true;
    for (const auto& r : f.roots()) clean = clean && !d.contains(r.root);
    if (!clean) continue;
    Rational v = local_abs(f, d);
    Disc sub = d;
    for (int k = 0; k < 3; ++k) {
      auto kids = sub.children();
      sub = kids[rng() % kids.size()];
      CHECK(local_abs(f, sub) == v);
    }
    ++checked;
  }
}
