#pragma once

#include <map>
#include <string>
#include <utility>

#include "mumford/rational.hpp"

namespace mumford {

// Exact element of Q(p^(1/N)): a finite sum of c * p^e with rational c and
// rational e. Exponents are stored modulo 1 (integer parts are folded into the
// coefficient), so sums of terms with equal fractional exponent combine and the
// representation is canonical. Kernel values |x|^-alpha and weights
// |pi|^(alpha_g l) for rational alpha, alpha_g live here.
class Surd {
 public:
  Surd() = default;
  explicit Surd(long p) : p_(p) {}
  Surd(long p, const Rational& value);

  // c * p^e.
  static Surd term(long p, const Rational& coefficient, const Rational& exponent);

  long prime() const { return p_; }
  bool is_zero() const { return terms_.empty(); }
  // True when the value lies in Q (only the exponent-0 term is present).
  bool is_rational() const;
  // Requires is_rational().
  Rational rational_value() const;

  const std::map<Rational, Rational>& terms() const { return terms_; }

  Surd& operator+=(const Surd& other);
  Surd& operator-=(const Surd& other);
  Surd& operator*=(const Rational& factor);
  Surd operator+(const Surd& other) const { return Surd(*this) += other; }
  Surd operator-(const Surd& other) const { return Surd(*this) -= other; }
  Surd operator-() const;
  Surd operator*(const Surd& other) const;
  Surd operator*(const Rational& factor) const { return Surd(*this) *= factor; }
  bool operator==(const Surd& other) const;

  double to_double() const;
  // Certified rational enclosure.
  Rational lower_bound(unsigned bits = 96) const;
  Rational upper_bound(unsigned bits = 96) const;

  // Every coefficient is >= 0 (so the value is provably >= 0).
  bool termwise_nonnegative() const;

  std::string to_string() const;

 private:
  void add_term(const Rational& coefficient, const Rational& exponent);
  void adopt_prime(long p);

  long p_ = 0;
  std::map<Rational, Rational> terms_;  // fractional exponent -> coefficient
};

inline Surd operator*(const Rational& factor, const Surd& s) { return s * factor; }

// r / (1 - r) for a single-term r = c p^e with 0 < r < 1; exact because
// r^b is rational when e has denominator b.
Surd geometric_tail(const Surd& ratio);

// Exact p^e for rational e as a single term.
inline Surd surd_pow(long p, const Rational& e) { return Surd::term(p, Rational(1), e); }

}  // namespace mumford
