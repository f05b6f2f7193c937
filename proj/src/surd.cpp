#include "mumford/surd.hpp"

#include <cmath>
#include <sstream>

#include "mumford/error.hpp"

namespace mumford {

Surd::Surd(long p, const Rational& value) : p_(p) { add_term(value, Rational(0)); }

Surd Surd::term(long p, const Rational& coefficient, const Rational& exponent) {
  Surd s(p);
  s.add_term(coefficient, exponent);
  return s;
}

void Surd::adopt_prime(long p) {
  if (p_ == 0) {
    p_ = p;
  } else if (p != 0 && p != p_) {
    throw Error(ErrorCode::kInvalidArgument, "mixing surds over different primes");
  }
}

void Surd::add_term(const Rational& coefficient, const Rational& exponent) {
  if (sgn(coefficient) == 0) return;
  Integer whole = floor(exponent);
  Rational f = exponent - Rational(whole);
  Rational c = coefficient * rational_pow(p_, whole.get_si());
  auto [it, inserted] = terms_.try_emplace(f, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Surd::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && sgn(terms_.begin()->first) == 0);
}

Rational Surd::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::kInvalidArgument, "surd is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Surd& Surd::operator+=(const Surd& other) {
  adopt_prime(other.p_);
  for (const auto& [e, c] : other.terms_) add_term(c, e);
  return *this;
}

Surd& Surd::operator-=(const Surd& other) {
  adopt_prime(other.p_);
  for (const auto& [e, c] : other.terms_) add_term(-c, e);
  return *this;
}

Surd& Surd::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= factor;
  return *this;
}

Surd Surd::operator-() const {
  Surd out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Surd Surd::operator*(const Surd& other) const {
  Surd out(p_ ? p_ : other.p_);
  out.adopt_prime(other.p_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) out.add_term(c1 * c2, e1 + e2);
  return out;
}

bool Surd::operator==(const Surd& other) const { return (*this - other).is_zero(); }

double Surd::to_double() const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += mumford::to_double(c) * std::pow(double(p_), mumford::to_double(e));
  return sum;
}

Rational Surd::lower_bound(unsigned bits) const {
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    auto [lo, hi] = pow_bounds(p_, e, bits);
    sum += sgn(c) > 0 ? c * lo : c * hi;
  }
  return sum;
}

Rational Surd::upper_bound(unsigned bits) const {
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    auto [lo, hi] = pow_bounds(p_, e, bits);
    sum += sgn(c) > 0 ? c * hi : c * lo;
  }
  return sum;
}

bool Surd::termwise_nonnegative() const {
  for (const auto& [e, c] : terms_)
    if (sgn(c) < 0) return false;
  return true;
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << mumford::to_string(c);
    if (sgn(e) != 0) os << "*" << p_ << "^(" << mumford::to_string(e) << ")";
  }
  return os.str();
}

Surd geometric_tail(const Surd& ratio) {
  if (ratio.terms().size() != 1)
    throw Error(ErrorCode::kInvalidArgument, "geometric_tail needs a single-term ratio");
  const long p = ratio.prime();
  const auto& [e, c] = *ratio.terms().begin();
  const unsigned long b = e.get_den().get_ui();
  // r/(1-r) = r (1 + r + ... + r^(b-1)) / (1 - r^b), with r^b rational.
  Surd power(p, Rational(1));
  Surd numerator(p);
  for (unsigned long i = 0; i < b; ++i) {
    power = power * ratio;
    numerator += power;
  }
  Rational rb = power.rational_value();
  if (rb >= 1) throw Error(ErrorCode::kInvalidArgument, "geometric ratio must be < 1");
  return numerator * Rational(1 / (1 - rb));
}

}  // namespace mumford
