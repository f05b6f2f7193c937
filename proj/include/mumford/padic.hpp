#pragma once

#include <compare>
#include <limits>
#include <vector>

#include "mumford/rational.hpp"

namespace mumford {

// Residue degree of the base field. Everything here works over Q_p, so the
// uniformiser is p itself and |pi| = p^-f = 1/p.
inline constexpr long kResidueDegree = 1;

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

bool is_prime(long n);

// Exact p-adic valuation of a nonzero integer (kInfiniteValuation for 0).
long valuation(long p, const Integer& z);
long valuation(long p, const Rational& x);

// |x|_p = p^-v(x), and 0 for x = 0.
Rational abs_p(long p, const Rational& x);

// |pi| = p^-f.
Rational abs_uniformiser(long p);

// A point of the additive character chi(x) = exp(2 pi i phase).
struct CharacterPhase {
  Rational phase;  // in [0,1), denominator a power of p

  CharacterPhase operator+(const CharacterPhase& other) const;
  CharacterPhase operator-() const;
  bool operator==(const CharacterPhase& other) const { return phase == other.phase; }
};

// p-adic fractional part {x}_p: the unique c/p^k in [0,1) with x - c/p^k in Z_p.
Rational padic_fractional_part(long p, const Rational& x);

// chi(x) = exp(2 pi i {x}_p), the character trivial exactly on Z_p.
CharacterPhase character_phase(long p, const Rational& x);

// Closed ball {x : |x - center| <= p^radius_exp}. The center is stored in a
// canonical form, so two Disc values are equal iff they are the same set.
class Disc {
 public:
  Disc(long p, const Rational& center, long radius_exp);

  long prime() const { return p_; }
  const Rational& center() const { return center_; }
  long radius_exp() const { return radius_exp_; }
  Rational radius() const { return rational_pow(p_, radius_exp_); }
  // Level m means radius p^-m.
  long level() const { return -radius_exp_; }

  bool contains(const Rational& x) const;
  bool contains(const Disc& other) const;
  bool disjoint(const Disc& other) const;

  // The p discs of radius p^(radius_exp-1) partitioning this one.
  std::vector<Disc> children() const;
  Disc parent() const { return Disc(p_, center_, radius_exp_ + 1); }

  // Haar measure with mu(Z_p) = 1.
  Rational haar() const { return radius(); }

  auto operator<=>(const Disc& other) const;
  bool operator==(const Disc& other) const = default;

 private:
  long p_;
  Rational center_;
  long radius_exp_;
};

inline auto Disc::operator<=>(const Disc& other) const {
  if (auto c = radius_exp_ <=> other.radius_exp_; c != 0) return c;
  int s = cmp(center_, other.center_);
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// Haar measure of a disc.
Rational haar_measure(const Disc& disc);

// Integral of chi(a x) |x|^m over the sphere |x| = |pi|^k.
Rational sphere_character_integral(long p, const Rational& a, long k, long m);

// Integral of chi(a x) |x|^m over the ball |x| <= |pi|^ell, m >= 0, a != 0.
// With |a| = |pi|^(d-1) the value vanishes iff m = 0 and ell <= -d.
Rational ball_character_moment_integral(long p, const Rational& a, long ell, long m);

// Independent oracle: sums the sphere integrals for k in [k_min, k_max] by
// enumerating residue classes fine enough that chi(a x) is constant on each.
Rational brute_sphere_decomposition(long p, const Rational& a, long k_min, long k_max, long m);

// Same enumeration for the ball |x| <= |pi|^ell; spheres on which chi(a x) is
// trivial are summed as the exact geometric tail.
Rational brute_ball_decomposition(long p, const Rational& a, long ell, long m);

}  // namespace mumford
