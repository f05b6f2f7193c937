#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>

namespace mumford {

using Integer = mpz_class;
using Rational = mpq_class;

// Serialized as "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "n", "-n", "n/d". Throws Error(kParseError) on malformed input.
Rational parse_rational(std::string_view text);

Integer ipow(const Integer& base, unsigned long exponent);

// p^e for any integer e.
Rational rational_pow(long p, long e);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

// floor and fractional part in [0,1).
Integer floor(const Rational& q);
Rational frac(const Rational& q);

// Certified rational enclosure [lo, hi] of p^e for rational e, with hi - lo
// relative width about 2^-bits.
std::pair<Rational, Rational> pow_bounds(long p, const Rational& e, unsigned bits = 96);

}  // namespace mumford
