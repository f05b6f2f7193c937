#include "mumford/cyclotomic.hpp"

#include "mumford/error.hpp"

namespace mumford {

namespace {

// Extracts the square part of a positive integer: n = s^2 * rest.
void strip_squares(Integer& n, Integer& s, long prime) {
  auto strip = [&](long q) {
    Integer qq = Integer(q) * q;
    while (mpz_divisible_p(n.get_mpz_t(), qq.get_mpz_t())) {
      n /= qq;
      s *= q;
    }
  };
  static const std::vector<long> small_primes = [] {
    std::vector<long> out;
    for (long q = 2; q < 1000; ++q)
      if (is_prime(q)) out.push_back(q);
    return out;
  }();
  if (n == 1) return;
  strip(prime);
  for (long q : small_primes) {
    if (n == 1) return;
    if (q != prime) strip(q);
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    s *= root;
    n = 1;
  }
}

}  // namespace

std::pair<Rational, Rational> split_square(long p, const Rational& r) {
  if (sgn(r) <= 0) throw Error(ErrorCode::kInvalidArgument, "radicand must be positive");
  // num/den = (num*den) / den^2
  Integer n = r.get_num() * r.get_den();
  Integer s = 1;
  strip_squares(n, s, p);
  Rational factor(s, r.get_den());
  factor.canonicalize();
  return {factor, Rational(n)};
}

ExactComplex exact_complex(long p, const Rational& magnitude_squared, const CharacterPhase& phase) {
  return ExactComplex::single(p, magnitude_squared, phase.phase, Rational(1));
}

}  // namespace mumford
