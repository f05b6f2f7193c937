#pragma once

#include <random>

#include "mumford/padic.hpp"
#include "mumford/schottky.hpp"

namespace mumford::testing {

// Random nonzero rational with valuation exactly v: ±(n/d) p^v, p not dividing n, d.
inline Rational random_rational_with_valuation(std::mt19937_64& rng, long p, long v) {
  std::uniform_int_distribution<long> pick(1, 500);
  long n, d;
  do n = pick(rng); while (n % p == 0);
  do d = pick(rng); while (d % p == 0);
  Rational q(n, d);
  q.canonicalize();
  if (rng() & 1) q = -q;
  return q * rational_pow(p, v);
}

inline Rational random_rational(std::mt19937_64& rng, long p, long v_min, long v_max) {
  std::uniform_int_distribution<long> pick(v_min, v_max);
  return random_rational_with_valuation(rng, p, pick(rng));
}

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Tate curve over Q_3 with multiplier 9: F = {1/9 < |z| <= 1}.
inline SchottkyGroup tate_group() {
  SchottkyGroup G{3, {MoebiusMap(9, 0, 0, 1)}, {Disc(3, q(0), 0), {}}};
  G.domain.holes = {P1Disc(Disc(3, q(0), 0), true), P1Disc(Disc(3, q(0), -2))};
  return G;
}

// Genus two over Q_3: the Tate generator plus z -> (2z+1)/(z-1), which sends
// the outside of D(1,-1) onto D(2,-1). F is the sphere |z| = 1/3.
inline SchottkyGroup genus_two_group() {
  SchottkyGroup G{3, {MoebiusMap(9, 0, 0, 1), MoebiusMap(2, 1, 1, -1)}, {Disc(3, q(0), 0), {}}};
  G.domain.holes = {P1Disc(Disc(3, q(0), 0), true), P1Disc(Disc(3, q(1), -1)), P1Disc(Disc(3, q(0), -2)),
                    P1Disc(Disc(3, q(2), -1))};
  return G;
}

}  // namespace mumford::testing

#include "mumford/spectrum.hpp"

namespace mumford::testing {

inline OperatorConfig tate_config(EvalMode mode = EvalMode::kTransport, long resolution = 2,
                                  Cutoff cutoff = Cutoff::of_tolerance(q(1, 1000000000))) {
  auto G = tate_group();
  auto prof = build_profile(3, RationalFunctionDatum::dz_over_z(), G.domain, resolution);
  return OperatorConfig(G, prof, q(1), q(1), mode, cutoff);
}

inline OperatorConfig genus_two_config(EvalMode mode = EvalMode::kTransport,
                                       Cutoff cutoff = Cutoff::of_tolerance(q(1, 1000000000))) {
  auto G = genus_two_group();
  auto prof = build_profile(3, RationalFunctionDatum::dz_over_z(), G.domain, 2);
  return OperatorConfig(G, prof, q(1), q(2), mode, cutoff);
}

}  // namespace mumford::testing
