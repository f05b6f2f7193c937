#include <random>

#include "doctest.h"
#include "mumford/cyclotomic.hpp"
#include "mumford/padic.hpp"
#include "mumford/surd.hpp"
#include "test_support.hpp"

using namespace mumford;
using mumford::testing::q;

TEST_CASE("valuation and absolute value") {
  CHECK(valuation(3, q(9)) == 2);
  CHECK(valuation(3, q(8, 9)) == -2);
  CHECK(valuation(3, q(0)) == kInfiniteValuation);
  CHECK(abs_p(3, q(8, 9)) == 9);
  CHECK(abs_p(3, q(3)) == q(1, 3));
  CHECK(abs_p(5, q(10)) == q(1, 5));
  CHECK(abs_p(7, q(0)) == 0);
  CHECK(abs_uniformiser(3) == q(1, 3));
}

TEST_CASE("character phase") {
  CHECK(character_phase(3, q(1, 3)).phase == q(1, 3));
  CHECK(character_phase(3, q(2)).phase == 0);
  CHECK(character_phase(3, q(1, 9) + q(1, 3)).phase == q(4, 9));
  CHECK(character_phase(3, q(-1, 3)).phase == q(2, 3));
  CHECK(character_phase(5, q(7, 10)).phase == q(1, 5));
}

TEST_CASE("haar measure of discs and spheres") {
  CHECK(haar_measure(Disc(3, q(0), -2)) == q(1, 9));
  CHECK(haar_measure(Disc(3, q(1), 0)) == 1);
  Disc unit(3, q(0), 0);
  Disc inner(3, q(0), -1);
  CHECK(haar_measure(unit) - haar_measure(inner) == q(2, 3));
}

TEST_CASE("disc canonical form and containment") {
  Disc a(3, q(10), -1);  // |x - 10| <= 1/3, same as center 1
  Disc b(3, q(1), -1);
  CHECK(a == b);
  CHECK(a.contains(q(4)));
  CHECK_FALSE(a.contains(q(2)));
  Disc big(3, q(0), 0);
  CHECK(big.contains(a));
  CHECK_FALSE(a.contains(big));
  CHECK(Disc(3, q(3), -2).disjoint(Disc(3, q(6), -2)));
  auto kids = big.children();
  CHECK(kids.size() == 3);
  CHECK(Disc(3, q(1, 3), 1).contains(q(1, 3) + q(2)));
}

TEST_CASE("sphere integral closed form, worked values") {
  CHECK(sphere_character_integral(3, q(1), 0, 0) == q(2, 3));
  CHECK(sphere_character_integral(3, q(1, 3), 0, 0) == q(-1, 3));
  CHECK(sphere_character_integral(3, q(1, 9), 0, 0) == 0);
  CHECK(brute_sphere_decomposition(3, q(1), 0, 0, 0) == q(2, 3));
  CHECK(brute_sphere_decomposition(3, q(1, 3), 0, 0, 0) == q(-1, 3));
  CHECK(brute_sphere_decomposition(3, q(1, 9), 0, 0, 0) == 0);
}

TEST_CASE("ball integral closed form, worked values") {
  CHECK(ball_character_moment_integral(3, q(1), 0, 1) == q(3, 4));
  CHECK(ball_character_moment_integral(3, q(1), -1, 0) == 0);
  CHECK(ball_character_moment_integral(3, q(1), -1, 1) == q(-9, 4));
  // -9/4 = sphere k=-1 term plus the ell=0 ball.
  CHECK(sphere_character_integral(3, q(1), -1, 1) + ball_character_moment_integral(3, q(1), 0, 1) ==
        q(-9, 4));
  CHECK(brute_ball_decomposition(3, q(1), -1, 1) == q(-9, 4));
  // Deeper than -d the spheres vanish, so the value is frozen at ell = -d.
  CHECK(ball_character_moment_integral(3, q(1), -3, 2) == ball_character_moment_integral(3, q(1), -1, 2));
}

TEST_CASE("ball integral vanishes iff m = 0 and ell <= -d") {
  for (long p : {2, 3, 5}) {
    for (long va = -3; va <= 2; ++va) {
      Rational a = rational_pow(p, va);
      long d = va + 1;
      for (long ell = -5; ell <= 4; ++ell) {
        for (long m = 0; m <= 2; ++m) {
          bool vanishes = ball_character_moment_integral(p, a, ell, m) == 0;
          CHECK(vanishes == (m == 0 && ell <= -d));
        }
      }
    }
  }
}

TEST_CASE("property: ultrametric inequality") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    for (long p : {2, 3, 5}) {
      Rational x = testing::random_rational(rng, p, -4, 4);
      Rational y = testing::random_rational(rng, p, -4, 4);
      Rational ax = abs_p(p, x), ay = abs_p(p, y), axy = abs_p(p, Rational(x + y));
      CHECK(axy <= std::max(ax, ay));
      if (ax != ay) CHECK(axy == std::max(ax, ay));
    }
  }
}

TEST_CASE("property: character is additive") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    long p = (i % 3 == 0) ? 2 : (i % 3 == 1 ? 3 : 5);
    Rational x = testing::random_rational(rng, p, -5, 3);
    Rational y = testing::random_rational(rng, p, -5, 3);
    CHECK((character_phase(p, x) + character_phase(p, y)) == character_phase(p, Rational(x + y)));
  }
}

TEST_CASE("property: haar measure is additive over children") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    for (long p : {2, 3, 5}) {
      Disc d(p, testing::random_rational(rng, p, -3, 3), long(rng() % 7) - 3);
      Rational sum(0);
      for (const Disc& c : d.children()) {
        CHECK(d.contains(c));
        sum += c.haar();
      }
      CHECK(sum == d.haar());
    }
  }
}

TEST_CASE("property: sphere closed form equals residue-class enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> pick_k(-3, 3), pick_m(0, 2), pick_shift(-2, 1);
  for (int i = 0; i < 1000; ++i) {
    long p = std::array<long, 3>{2, 3, 5}[i % 3];
    long k = pick_k(rng);
    long m = pick_m(rng);
    // |a| between p^(k-2) and p^(k+3) so all three cases occur.
    long va = -(k + pick_shift(rng) + 1);
    Rational a = testing::random_rational_with_valuation(rng, p, va);
    CHECK(sphere_character_integral(p, a, k, m) == brute_sphere_decomposition(p, a, k, k, m));
  }
}

TEST_CASE("property: ball closed form equals telescoped spheres and the brute oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> pick_ell(-4, 3), pick_m(0, 2), pick_v(-3, 2);
  for (int i = 0; i < 300; ++i) {
    long p = std::array<long, 3>{2, 3, 5}[i % 3];
    long ell = pick_ell(rng), m = pick_m(rng);
    Rational a = testing::random_rational_with_valuation(rng, p, pick_v(rng));
    Rational closed = ball_character_moment_integral(p, a, ell, m);
    CHECK(closed == brute_ball_decomposition(p, a, ell, m));
    // Telescoping: spheres ell..K plus the ball from K+1.
    long big_k = std::max(ell, -valuation(p, a)) + 1;
    Rational tele = ball_character_moment_integral(p, a, big_k + 1, m);
    for (long k = ell; k <= big_k; ++k) tele += sphere_character_integral(p, a, k, m);
    CHECK(closed == tele);
  }
}

TEST_CASE("cyclotomic canonical form detects exact zeros") {
  Cyclotomic<Rational> z(3);
  z.add(q(0), q(1));
  z.add(q(1, 3), q(1));
  z.add(q(2, 3), q(1));
  CHECK(z.is_zero());
  Cyclotomic<Rational> w(3);
  for (long e = 0; e < 9; e += 1)
    if (e % 3 == 1) w.add(q(e, 9), q(2));  // 1/9, 4/9, 7/9 -> zeta_9 * (1 + zeta_3 + zeta_3^2) = 0
  CHECK(w.is_zero());
  Cyclotomic<Rational> u = Cyclotomic<Rational>::monomial(5, q(3, 25), q(1));
  CHECK_FALSE(u.is_zero());
  CHECK(u.times(u.conj()).is_scalar());
  CHECK(u.times(u.conj()).scalar_part() == 1);
}

TEST_CASE("radical sums merge square-related radicands") {
  auto a = ExactComplex::single(3, q(12), q(0), q(1));  // sqrt(12) = 2 sqrt(3)
  auto b = ExactComplex::single(3, q(3), q(0), q(-2));
  CHECK((a + b).is_zero());
  auto c = ExactComplex::single(3, q(3), q(1, 9), q(1));
  auto prod = c.times(c.conj());
  CHECK(prod.is_scalar());
  CHECK(prod.scalar_part() == 3);
}

TEST_CASE("surd arithmetic and certified bounds") {
  Surd half = surd_pow(3, q(1, 2));
  Surd sq = half * half;
  CHECK(sq.is_rational());
  CHECK(sq.rational_value() == 3);
  Surd s = surd_pow(3, q(-5, 2)) + Surd(3, q(1));
  CHECK(s.lower_bound() <= s.upper_bound());
  CHECK(std::abs(s.to_double() - (1.0 + std::pow(3.0, -2.5))) < 1e-15);
  CHECK(to_double(s.upper_bound() - s.lower_bound()) < 1e-25);
  Surd r = surd_pow(3, q(-1, 2));
  Surd g = geometric_tail(r);  // r/(1-r)
  double rd = std::pow(3.0, -0.5);
  CHECK(std::abs(g.to_double() - rd / (1 - rd)) < 1e-14);
  CHECK(geometric_tail(Surd(3, q(1, 3))) == Surd(3, q(1, 2)));
}
