#include "mumford/rational.hpp"

#include <cctype>

#include "mumford/error.hpp"

namespace mumford {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start) throw Error(ErrorCode::kParseError, "bad rational '" + std::string(whole) + "'");
  for (size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorCode::kParseError, "bad rational '" + std::string(whole) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rational_pow(long p, long e) {
  Integer pe = ipow(Integer(p), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(pe);
  Rational q(Integer(1), pe);
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

std::pair<Rational, Rational> pow_bounds(long p, const Rational& e, unsigned bits) {
  Integer whole = floor(e);
  Rational f = e - Rational(whole);
  Rational scale = rational_pow(p, whole.get_si());
  if (sgn(f) == 0) return {scale, scale};
  // p^(r/b) = root_b(p^r); bracket root_b(p^r * 2^(b*bits)) / 2^bits.
  unsigned long r = f.get_num().get_ui();
  unsigned long b = f.get_den().get_ui();
  Integer radicand = ipow(Integer(p), r) << static_cast<mp_bitcnt_t>(b * bits);
  Integer root;
  mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), b);
  Integer denom = Integer(1) << bits;
  Rational lo(root, denom);
  Rational hi(root + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo * scale, hi * scale};
}

}  // namespace mumford
