#include "mumford/padic.hpp"

#include "mumford/cyclotomic.hpp"
#include "mumford/error.hpp"

namespace mumford {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long valuation(long p, const Integer& z) {
  if (z == 0) return kInfiniteValuation;
  Integer pz(p);
  Integer rest = z;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t()));
}

long valuation(long p, const Rational& x) {
  if (sgn(x) == 0) return kInfiniteValuation;
  return valuation(p, x.get_num()) - valuation(p, x.get_den());
}

Rational abs_p(long p, const Rational& x) {
  if (sgn(x) == 0) return Rational(0);
  return rational_pow(p, -valuation(p, x));
}

Rational abs_uniformiser(long p) { return rational_pow(p, -kResidueDegree); }

CharacterPhase CharacterPhase::operator+(const CharacterPhase& other) const {
  return CharacterPhase{frac(phase + other.phase)};
}

CharacterPhase CharacterPhase::operator-() const { return CharacterPhase{frac(-phase)}; }

Rational padic_fractional_part(long p, const Rational& x) {
  long v = valuation(p, x);
  if (v >= 0) return Rational(0);
  // x = a / (p^k b) with p not dividing b; {x} = c/p^k with c = a b^-1 mod p^k.
  const unsigned long k = static_cast<unsigned long>(-v);
  Integer pk = ipow(Integer(p), k);
  Integer b = x.get_den() / pk;
  Integer b_inv;
  mpz_invert(b_inv.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t());
  Integer c = x.get_num() * b_inv;
  mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
  Rational out(c, pk);
  out.canonicalize();
  return out;
}

CharacterPhase character_phase(long p, const Rational& x) {
  return CharacterPhase{padic_fractional_part(p, x)};
}

Disc::Disc(long p, const Rational& center, long radius_exp) : p_(p), radius_exp_(radius_exp) {
  // x in D(c,t) iff p^t x and p^t c differ by an element of Z_p.
  Rational scaled = center * rational_pow(p, radius_exp);
  center_ = padic_fractional_part(p, scaled) * rational_pow(p, -radius_exp);
}

bool Disc::contains(const Rational& x) const {
  return valuation(p_, Rational(x - center_)) >= -radius_exp_;
}

bool Disc::contains(const Disc& other) const {
  return other.radius_exp_ <= radius_exp_ && contains(other.center_);
}

bool Disc::disjoint(const Disc& other) const { return !contains(other) && !other.contains(*this); }

std::vector<Disc> Disc::children() const {
  std::vector<Disc> out;
  out.reserve(static_cast<size_t>(p_));
  Rational step = rational_pow(p_, -radius_exp_);  // |step| = p^radius_exp
  for (long i = 0; i < p_; ++i) out.emplace_back(p_, center_ + Rational(i) * step, radius_exp_ - 1);
  return out;
}

Rational haar_measure(const Disc& disc) { return disc.haar(); }

Rational sphere_character_integral(long p, const Rational& a, long k, long m) {
  // |x| = |pi|^k = p^-k; compare |a| with |pi|^-k = p^k.
  const long va = valuation(p, a);
  const Rational pi_abs = abs_uniformiser(p);
  const long km1 = k * (m + 1);
  if (va == kInfiniteValuation || -va <= k) {
    return rational_pow(p, -km1) * (1 - pi_abs);
  }
  if (-va == k + 1) {
    return -rational_pow(p, -km1 - 1);
  }
  return Rational(0);
}

Rational ball_character_moment_integral(long p, const Rational& a, long ell, long m) {
  if (m < 0) throw Error(ErrorCode::kInvalidArgument, "moment order must be >= 0");
  if (sgn(a) == 0) throw Error(ErrorCode::kInvalidArgument, "character argument must be nonzero");
  // |a| = |pi|^(d-1).
  const long d = valuation(p, a) + 1;
  const Rational pi_abs = abs_uniformiser(p);
  const Rational c_m = (1 - pi_abs) / (1 - rational_pow(p, -(m + 1)));
  if (ell >= 1 - d) return c_m * rational_pow(p, -ell * (m + 1));
  // Spheres with k < -d contribute nothing, so every ell <= -d gives the
  // ell = -d value.
  return c_m * rational_pow(p, -(1 - d) * (m + 1)) - rational_pow(p, -(1 - d * (m + 1)));
}

namespace {

// Sum of chi(a x)|x|^m dx over |x| = p^-k by residue classes mod p^K.
Cyclotomic<Rational> enumerate_sphere(long p, const Rational& a, long k, long m) {
  const long va = valuation(p, a);
  long big_k = k + 1;
  if (va != kInfiniteValuation && -va > big_k) big_k = -va;
  const unsigned long digits = static_cast<unsigned long>(big_k - k);
  Integer count = ipow(Integer(p), digits);
  if (count > 2000000) throw Error(ErrorCode::kInvalidArgument, "residue enumeration too large");
  const Rational weight = rational_pow(p, -k * m) * rational_pow(p, -big_k);
  const Rational pk = rational_pow(p, k);
  Cyclotomic<Rational> sum(p);
  const long n = count.get_si();
  for (long u = 1; u < n; ++u) {
    if (u % p == 0) continue;
    Rational x = pk * Rational(u);
    sum.add(padic_fractional_part(p, Rational(a * x)), weight);
  }
  return sum;
}

Rational require_rational(const Cyclotomic<Rational>& z) {
  if (!z.is_scalar()) throw Error(ErrorCode::kNumericalBreakdown, "character sum is not rational");
  return z.scalar_part();
}

}  // namespace

Rational brute_sphere_decomposition(long p, const Rational& a, long k_min, long k_max, long m) {
  Cyclotomic<Rational> total(p);
  for (long k = k_min; k <= k_max; ++k) total += enumerate_sphere(p, a, k, m);
  return require_rational(total);
}

Rational brute_ball_decomposition(long p, const Rational& a, long ell, long m) {
  // For k >= -v(a) the character is trivial on the whole sphere.
  const long va = valuation(p, a);
  const long k_trivial = std::max(ell, -va);
  Rational head = k_trivial > ell ? brute_sphere_decomposition(p, a, ell, k_trivial - 1, m) : Rational(0);
  // sum_{k >= k_trivial} (1 - 1/p) p^(-k(m+1))
  Rational q = rational_pow(p, -(m + 1));
  Rational tail = (1 - Rational(1, p)) * rational_pow(p, -k_trivial * (m + 1)) / (1 - q);
  return head + tail;
}

}  // namespace mumford
