#include "mumford/schottky.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mumford/error.hpp"

namespace mumford {

namespace {

Integer content_of(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  Integer g = gcd(gcd(a, b), gcd(c, d));
  return g;
}

MoebiusMap generator_letter(const std::vector<MoebiusMap>& gens, int l) {
  if (l == 0 || static_cast<size_t>(std::abs(l)) > gens.size())
    throw Error(ErrorCode::kInvalidArgument, "letter out of range");
  const MoebiusMap& g = gens[static_cast<size_t>(std::abs(l) - 1)];
  return l > 0 ? g : g.inverse();
}

}  // namespace

MoebiusMap::MoebiusMap(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (det() == 0) throw Error(ErrorCode::kInvalidArgument, "singular Moebius matrix");
  Integer g = content_of(a_, b_, c_, d_);
  if (g != 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
    d_ /= g;
  }
  // First nonzero of (c, d) is made positive.
  const Integer& lead = c_ != 0 ? c_ : d_;
  if (lead < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

MoebiusMap MoebiusMap::from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                      const Rational& d) {
  Integer l = 1;
  for (const Rational* q : {&a, &b, &c, &d}) l = lcm(l, q->get_den());
  auto scale = [&](const Rational& q) { return Integer(q.get_num() * (l / q.get_den())); };
  return MoebiusMap(scale(a), scale(b), scale(c), scale(d));
}

std::optional<Rational> MoebiusMap::pole() const {
  if (c_ == 0) return std::nullopt;
  Rational z(-d_, c_);
  z.canonicalize();
  return z;
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
  return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                    c_ * o.b_ + d_ * o.d_);
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

Rational MoebiusMap::apply(const Rational& x) const {
  Rational den = Rational(c_) * x + Rational(d_);
  if (sgn(den) == 0) throw Error(ErrorCode::kPoleHit, "point " + mumford::to_string(x) + " is the pole");
  return (Rational(a_) * x + Rational(b_)) / den;
}

P1Point MoebiusMap::apply(const P1Point& x) const {
  if (!x) {
    if (c_ == 0) return std::nullopt;
    Rational z(a_, c_);
    z.canonicalize();
    return z;
  }
  Rational den = Rational(c_) * *x + Rational(d_);
  if (sgn(den) == 0) return std::nullopt;
  return (Rational(a_) * *x + Rational(b_)) / den;
}

std::string MoebiusMap::to_string() const {
  std::ostringstream os;
  os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
  return os.str();
}

Rational moebius_apply(const MoebiusMap& g, const Rational& x) { return g.apply(x); }

Rational derivative_abs(long p, const MoebiusMap& g, const Rational& x) {
  Rational den = Rational(g.c()) * x + Rational(g.d());
  if (sgn(den) == 0) throw Error(ErrorCode::kPoleHit, "derivative at the pole");
  Rational a = abs_p(p, den);
  return abs_p(p, Rational(g.det())) / (a * a);
}

DistanceIdentity moebius_distance_identity_check(long p, const MoebiusMap& g, const Rational& x,
                                                 const Rational& y) {
  Rational gx = g.apply(x), gy = g.apply(y);
  Rational lhs = abs_p(p, Rational(gx - gy));
  Rational dxy = abs_p(p, Rational(x - y));
  return {lhs * lhs, derivative_abs(p, g, x) * derivative_abs(p, g, y) * dxy * dxy};
}

GroupWord::GroupWord(const std::vector<int>& letters) {
  for (int l : letters) {
    if (l == 0) throw Error(ErrorCode::kInvalidArgument, "letter 0 is not a generator");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

GroupWord GroupWord::operator*(const GroupWord& other) const {
  std::vector<int> all = letters_;
  all.insert(all.end(), other.letters_.begin(), other.letters_.end());
  return GroupWord(all);
}

GroupWord GroupWord::then(int l) const {
  GroupWord w = *this;
  if (!w.letters_.empty() && w.letters_.back() == -l)
    w.letters_.pop_back();
  else
    w.letters_.push_back(l);
  return w;
}

MoebiusMap GroupWord::evaluate(const std::vector<MoebiusMap>& generators) const {
  MoebiusMap m;
  for (int l : letters_) m = m.compose(generator_letter(generators, l));
  return m;
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += "*";
    out += "g" + std::to_string(std::abs(letters_[i]));
    if (letters_[i] < 0) out += "^-1";
  }
  return out;
}

GroupWord GroupWord::parse(const std::string& text) {
  if (text == "1" || text.empty()) return GroupWord();
  std::vector<int> letters;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, '*')) {
    if (tok.size() < 2 || tok[0] != 'g') throw Error(ErrorCode::kParseError, "bad word token '" + tok + "'");
    bool inv = false;
    auto caret = tok.find('^');
    std::string num = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (caret != std::string::npos) {
      if (tok.substr(caret) != "^-1") throw Error(ErrorCode::kParseError, "bad exponent in '" + tok + "'");
      inv = true;
    }
    int i = 0;
    try {
      i = std::stoi(num);
    } catch (...) {
      throw Error(ErrorCode::kParseError, "bad generator index in '" + tok + "'");
    }
    if (i <= 0) throw Error(ErrorCode::kParseError, "bad generator index in '" + tok + "'");
    letters.push_back(inv ? -i : i);
  }
  return GroupWord(letters);
}

Integer reduced_word_count(long g, long ell) {
  if (ell == 0) return 1;
  return Integer(2 * g) * ipow(Integer(2 * g - 1), static_cast<unsigned long>(ell - 1));
}

namespace {

std::vector<int> letter_order(long g) {
  std::vector<int> out;
  for (int i = 1; i <= g; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

}  // namespace

std::vector<std::vector<GroupWord>> enumerate_words(long g, long max_length) {
  if (max_length < 0) throw Error(ErrorCode::kInvalidArgument, "negative word length");
  std::vector<std::vector<GroupWord>> out(1, {GroupWord()});
  const auto order = letter_order(g);
  for (long ell = 1; ell <= max_length; ++ell) {
    std::vector<GroupWord> next;
    for (const GroupWord& w : out.back()) {
      int last = w.is_identity() ? 0 : w.letters().back();
      for (int l : order)
        if (l != -last) next.push_back(w.then(l));
    }
    out.push_back(std::move(next));
  }
  return out;
}

WordTable::WordTable(const std::vector<MoebiusMap>& generators, long max_length) : max_length_(max_length) {
  if (max_length < 0) throw Error(ErrorCode::kInvalidArgument, "negative word length");
  by_length_.push_back({WordEntry{GroupWord(), MoebiusMap()}});
  const auto order = letter_order(static_cast<long>(generators.size()));
  std::vector<MoebiusMap> letter_maps;
  for (int l : order) letter_maps.push_back(generator_letter(generators, l));
  for (long ell = 1; ell <= max_length; ++ell) {
    std::vector<WordEntry> next;
    for (const WordEntry& e : by_length_.back()) {
      int last = e.word.is_identity() ? 0 : e.word.letters().back();
      for (size_t k = 0; k < order.size(); ++k)
        if (order[k] != -last) next.push_back({e.word.then(order[k]), e.map.compose(letter_maps[k])});
    }
    by_length_.push_back(std::move(next));
  }
}

size_t WordTable::size() const {
  size_t n = 0;
  for (const auto& v : by_length_) n += v.size();
  return n;
}

bool P1Disc::contains(const P1Disc& other) const {
  if (!complement_) return !other.complement_ && inner_.contains(other.inner_);
  if (!other.complement_) return inner_.disjoint(other.inner_);
  return other.inner_.contains(inner_);
}

bool P1Disc::disjoint(const P1Disc& other) const {
  if (!complement_ && !other.complement_) return inner_.disjoint(other.inner_);
  if (complement_ && other.complement_) return false;
  const P1Disc& aff = complement_ ? other : *this;
  const P1Disc& co = complement_ ? *this : other;
  return co.inner_.contains(aff.inner_);
}

std::string P1Disc::to_string() const {
  std::string s = "D(" + mumford::to_string(inner_.center()) + "," + std::to_string(inner_.radius_exp()) + ")";
  return complement_ ? "P1\\" + s : s;
}

namespace {

// e with |x| = p^e, for x itself a power of p.
long power_exponent(long p, const Rational& x) { return valuation(p, x); }

}  // namespace

Disc disc_image(const MoebiusMap& g, const Disc& disc) {
  const long p = disc.prime();
  if (auto z = g.pole(); z && disc.contains(*z))
    throw Error(ErrorCode::kPoleInsideDisc, "pole of " + g.to_string() + " lies in the disc");
  const Rational& c = disc.center();
  const long e = power_exponent(p, derivative_abs(p, g, c));
  return Disc(p, g.apply(c), disc.radius_exp() + e);
}

P1Disc disc_image(const MoebiusMap& g, const P1Disc& disc) {
  const Disc& in = disc.inner();
  const long p = in.prime();
  auto z = g.pole();
  P1Disc image_of_inner = [&]() {
    if (!z || !in.contains(*z)) return P1Disc(disc_image(g, in), false);
    // g(w) = a/c + k/(w - pole) with k = -det/c^2; the outside of the inner
    // disc goes onto the closed disc of radius |k| p^-(t+1) about a/c.
    Rational k = Rational(-g.det()) / Rational(g.c() * g.c());
    Rational ac(g.a(), g.c());
    ac.canonicalize();
    long r = -valuation(p, k) - in.radius_exp() - 1;
    return P1Disc(Disc(p, ac, r), true);
  }();
  return disc.is_complement() ? image_of_inner.complement() : image_of_inner;
}

Rational disc_distance(const Disc& a, const Disc& b) {
  if (!a.disjoint(b)) throw Error(ErrorCode::kDiscsIntersect, "discs are not disjoint");
  return abs_p(a.prime(), Rational(a.center() - b.center()));
}

bool FundamentalDomain::contains(const Rational& x) const {
  if (!outer.contains(x)) return false;
  for (const P1Disc& h : holes)
    if (h.contains(x)) return false;
  return true;
}

bool FundamentalDomain::contains(const P1Point& x) const { return x && contains(*x); }

bool FundamentalDomain::contains(const Disc& disc) const {
  if (!outer.contains(disc)) return false;
  P1Disc d(disc);
  for (const P1Disc& h : holes)
    if (!h.disjoint(d)) return false;
  return true;
}

Rational FundamentalDomain::measure() const {
  Rational m = outer.haar();
  for (const P1Disc& h : holes)
    if (h.is_affine()) m -= h.inner().haar();
  return m;
}

std::vector<Disc> FundamentalDomain::discs_at_level(long level) const {
  std::vector<Disc> out;
  std::vector<Disc> stack{outer};
  while (!stack.empty()) {
    Disc d = stack.back();
    stack.pop_back();
    if (d.level() > level) continue;
    bool inside_hole = false;
    for (const P1Disc& h : holes)
      if (h.contains(P1Disc(d))) inside_hole = true;
    if (inside_hole) continue;
    if (d.level() == level) {
      if (contains(d)) out.push_back(d);
      continue;
    }
    for (const Disc& c : d.children()) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational FundamentalDomain::separation() const {
  Rational best(-1);
  for (const P1Disc& h : holes) {
    Rational r = h.inner().radius();
    if (best < 0 || r < best) best = r;
  }
  if (best < 0) best = outer.radius();
  return best * outer.prime();
}

bool is_hyperbolic(long p, const MoebiusMap& g) {
  Rational t = Rational(g.trace() * g.trace()) / Rational(g.det());
  return abs_p(p, t) > 1;
}

namespace {

[[noreturn]] void domain_fail(const std::string& clause, const std::string& detail) {
  throw Error(ErrorCode::kDomainInvalid, "clause " + clause + ": " + detail);
}

// Hole whose complement the word's rightmost letter maps into a hole.
const P1Disc& entry_hole(const SchottkyGroup& G, const GroupWord& w) {
  int last = w.letters().back();
  long i = std::abs(last) - 1;
  return last > 0 ? G.source_hole(i) : G.target_hole(i);
}

}  // namespace

DomainReport verify_fundamental_domain(const SchottkyGroup& G, long depth) {
  const long g = G.genus();
  const FundamentalDomain& F = G.domain;
  DomainReport report;
  report.depth = depth;
  if (g < 1) domain_fail("(structure)", "at least one generator is required");
  if (static_cast<long>(F.holes.size()) != 2 * g) domain_fail("(structure)", "expected 2g holes");
  for (const MoebiusMap& m : G.generators)
    if (!is_hyperbolic(G.p, m)) domain_fail("(hyperbolic)", "generator " + m.to_string() + " is not hyperbolic");
  long co_holes = 0;
  for (const P1Disc& h : F.holes) {
    if (h.inner().prime() != G.p) domain_fail("(structure)", "hole over the wrong prime");
    if (h.is_complement()) {
      ++co_holes;
      if (!(h.inner() == F.outer)) domain_fail("(structure)", "the hole around infinity must be the outside of the outer disc");
    } else if (!F.outer.contains(h.inner()) || h.inner() == F.outer) {
      domain_fail("(i)", "hole " + h.to_string() + " is not strictly inside the outer disc");
    }
  }
  if (co_holes != 1) domain_fail("(structure)", "exactly one hole must contain infinity");

  // (i)
  for (size_t i = 0; i < F.holes.size(); ++i)
    for (size_t j = i + 1; j < F.holes.size(); ++j)
      if (!F.holes[i].disjoint(F.holes[j]))
        domain_fail("(i)", "holes " + F.holes[i].to_string() + " and " + F.holes[j].to_string() + " overlap");
  if (sgn(F.measure()) <= 0) domain_fail("(i)", "F has no measure");

  // (ii)
  std::vector<Rational> samples;
  for (const P1Disc& h : F.holes)
    if (h.is_affine()) samples.push_back(h.inner().center());
  for (long lvl = F.outer.level(); lvl <= F.outer.level() + 4 && samples.size() < 64; ++lvl) {
    auto discs = F.discs_at_level(lvl);
    for (const Disc& d : discs) {
      if (samples.size() >= 64) break;
      samples.push_back(d.center());
    }
  }
  for (long i = 0; i < g; ++i) {
    const MoebiusMap& m = G.generators[static_cast<size_t>(i)];
    P1Disc image = disc_image(m, G.source_hole(i).complement());
    // Onto, not just into: a smaller image leaves a gap between F and its translate.
    if (!G.target_hole(i).contains(image) || !image.contains(G.target_hole(i)))
      domain_fail("(ii)", "generator " + std::to_string(i + 1) + " sends the outside of " +
                              G.source_hole(i).to_string() + " to " + image.to_string() + ", not onto " +
                              G.target_hole(i).to_string());
    for (const Rational& x : samples) {
      if (G.source_hole(i).contains(x)) continue;
      ++report.sample_points;
      if (!G.target_hole(i).contains(m.apply(P1Point(x))))
        domain_fail("(ii)", "sample point " + mumford::to_string(x) + " escapes the paired hole");
    }
  }

  // (iii)
  WordTable table(G.generators, depth);
  for (long ell = 1; ell <= depth; ++ell) {
    for (const WordEntry& e : table.by_length()[static_cast<size_t>(ell)]) {
      ++report.tiles_checked;
      auto lands = [&](const P1Disc& start) {
        P1Disc image = disc_image(e.map, start.complement());
        for (const P1Disc& h : F.holes)
          if (h.contains(image)) return true;
        return false;
      };
      bool ok = lands(entry_hole(G, e.word));
      for (size_t k = 0; !ok && k < F.holes.size(); ++k) ok = lands(F.holes[k]);
      if (!ok) domain_fail("(iii)", "translate by " + e.word.to_string() + " meets F");
    }
  }

  // Infinity must not reduce into F.
  P1Point z;  // infinity
  GroupWord w;
  std::set<std::string> seen;
  for (long step = 0; step < 4 * depth + 16; ++step) {
    if (F.contains(z)) domain_fail("(limit set)", "infinity lies in the translate " + w.to_string() + " F");
    std::string key = z ? mumford::to_string(*z) : "inf";
    if (!seen.insert(key).second) break;
    bool moved = false;
    for (long i = 0; i < g && !moved; ++i) {
      const MoebiusMap& m = G.generators[static_cast<size_t>(i)];
      if (G.target_hole(i).contains(z)) {
        z = m.inverse().apply(z);
        w = w.then(static_cast<int>(i + 1));
        moved = true;
      } else if (G.source_hole(i).contains(z)) {
        z = m.apply(z);
        w = w.then(-static_cast<int>(i + 1));
        moved = true;
      }
    }
    if (!moved) domain_fail("(limit set)", "point outside F and every hole");
  }
  report.infinity_witness = w.to_string();
  return report;
}

Reduction reduce_to_domain(const SchottkyGroup& G, const Rational& z, long cap) {
  Rational cur = z;
  GroupWord witness;
  const long g = G.genus();
  for (long step = 0; step <= cap; ++step) {
    if (G.domain.contains(cur)) return {cur, witness};
    bool moved = false;
    for (long i = 0; i < g && !moved; ++i) {
      const MoebiusMap& m = G.generators[static_cast<size_t>(i)];
      P1Point next;
      if (G.target_hole(i).contains(cur)) {
        next = m.inverse().apply(P1Point(cur));
        witness = witness.then(static_cast<int>(i + 1));
        moved = true;
      } else if (G.source_hole(i).contains(cur)) {
        next = m.apply(P1Point(cur));
        witness = witness.then(-static_cast<int>(i + 1));
        moved = true;
      }
      if (moved) {
        if (!next) throw Error(ErrorCode::kReductionDiverged, "orbit of " + mumford::to_string(z) + " reaches infinity");
        cur = *next;
      }
    }
    if (!moved) throw Error(ErrorCode::kDomainInvalid, "point outside F and every hole");
  }
  throw Error(ErrorCode::kReductionDiverged,
              "no reduction of " + mumford::to_string(z) + " within " + std::to_string(cap) + " steps");
}

Rational delta(const SchottkyGroup& G, const Disc& disc, const GroupWord& word) {
  if (word.is_identity()) return Rational(1);
  return disc_distance(disc, disc_image(word.evaluate(G.generators), disc));
}

}  // namespace mumford
