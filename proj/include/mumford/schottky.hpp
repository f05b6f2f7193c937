#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mumford/padic.hpp"

namespace mumford {

// A point of P^1(Q): std::nullopt is infinity.
using P1Point = std::optional<Rational>;

// z -> (a z + b) / (c z + d) with integer entries, content reduced to 1 and
// the sign fixed so that equal maps have equal entries.
class MoebiusMap {
 public:
  MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}
  MoebiusMap(Integer a, Integer b, Integer c, Integer d);
  // Rational entries are scaled to integers first.
  static MoebiusMap from_rationals(const Rational& a, const Rational& b, const Rational& c,
                                   const Rational& d);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }
  Integer det() const { return a_ * d_ - b_ * c_; }
  Integer trace() const { return a_ + d_; }

  bool is_identity() const { return *this == MoebiusMap(); }
  bool is_affine() const { return c_ == 0; }
  // -d/c, or nothing when the pole is infinity.
  std::optional<Rational> pole() const;

  // this o other.
  MoebiusMap compose(const MoebiusMap& other) const;
  MoebiusMap inverse() const;

  // Throws kPoleHit when x is the pole.
  Rational apply(const Rational& x) const;
  P1Point apply(const P1Point& x) const;

  bool operator==(const MoebiusMap& other) const = default;
  std::string to_string() const;

 private:
  Integer a_, b_, c_, d_;
};

Rational moebius_apply(const MoebiusMap& g, const Rational& x);

// |g'(x)| = |det| / |c x + d|^2.
Rational derivative_abs(long p, const MoebiusMap& g, const Rational& x);

// (|gx - gy|, |g'(x)|^(1/2) |g'(y)|^(1/2) |x - y|). Both sides are powers of p
// with possibly half-integral exponent, so they are returned squared.
struct DistanceIdentity {
  Rational lhs_squared;
  Rational rhs_squared;
  bool holds() const { return lhs_squared == rhs_squared; }
};
DistanceIdentity moebius_distance_identity_check(long p, const MoebiusMap& g, const Rational& x,
                                                 const Rational& y);

// Reduced word in the free generators. Letter +i stands for generator i and
// -i for its inverse (i counted from 1). The word l1 l2 ... ln acts as the
// composition g_l1 o g_l2 o ... o g_ln.
class GroupWord {
 public:
  GroupWord() = default;
  static GroupWord letter(int l) { return GroupWord(std::vector<int>{l}); }
  // Reduces the input.
  explicit GroupWord(const std::vector<int>& letters);

  const std::vector<int>& letters() const { return letters_; }
  long length() const { return static_cast<long>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& other) const;
  // Append a single letter on the right, cancelling if needed.
  GroupWord then(int l) const;

  MoebiusMap evaluate(const std::vector<MoebiusMap>& generators) const;

  auto operator<=>(const GroupWord& other) const = default;
  bool operator==(const GroupWord& other) const = default;

  // "1" for the identity, otherwise e.g. "g1*g2^-1".
  std::string to_string() const;
  static GroupWord parse(const std::string& text);

 private:
  std::vector<int> letters_;
};

// Number of reduced words of length ell in g generators: 2g(2g-1)^(ell-1).
Integer reduced_word_count(long g, long ell);

// All reduced words of length 0..L, grouped by length, breadth first. Within a
// length the order is lexicographic in the letter order +1,-1,+2,-2,...
std::vector<std::vector<GroupWord>> enumerate_words(long g, long max_length);

struct WordEntry {
  GroupWord word;
  MoebiusMap map;
};

// Words up to a length together with their Moebius maps, built incrementally.
class WordTable {
 public:
  WordTable(const std::vector<MoebiusMap>& generators, long max_length);
  long max_length() const { return max_length_; }
  const std::vector<std::vector<WordEntry>>& by_length() const { return by_length_; }
  size_t size() const;

 private:
  long max_length_;
  std::vector<std::vector<WordEntry>> by_length_;
};

// A disc of P^1: either a closed affine disc, or the complement of one (which
// then contains infinity).
class P1Disc {
 public:
  explicit P1Disc(Disc inner, bool complement = false) : inner_(std::move(inner)), complement_(complement) {}

  const Disc& inner() const { return inner_; }
  bool is_complement() const { return complement_; }
  bool is_affine() const { return !complement_; }

  bool contains(const Rational& x) const { return inner_.contains(x) != complement_; }
  bool contains(const P1Point& x) const { return x ? contains(*x) : complement_; }
  bool contains(const P1Disc& other) const;
  bool disjoint(const P1Disc& other) const;
  P1Disc complement() const { return P1Disc(inner_, !complement_); }

  bool operator==(const P1Disc& other) const = default;
  std::string to_string() const;

 private:
  Disc inner_;
  bool complement_;
};

// Image of an affine disc whose closure avoids the pole: an affine disc with
// center g(c) and radius |g'(c)| * radius. Throws kPoleInsideDisc otherwise.
Disc disc_image(const MoebiusMap& g, const Disc& disc);

// Image of any P^1 disc.
P1Disc disc_image(const MoebiusMap& g, const P1Disc& disc);

// |c1 - c2| for disjoint discs; throws kDiscsIntersect otherwise.
Rational disc_distance(const Disc& a, const Disc& b);

// Good fundamental domain: the outer disc minus 2g holes. Holes are listed as
// D_1..D_g followed by their partners D'_1..D'_g; generator i maps the
// complement of D_i onto D'_i. Exactly one hole is the complement of the outer
// disc, which puts infinity outside F.
struct FundamentalDomain {
  Disc outer;
  std::vector<P1Disc> holes;

  bool contains(const Rational& x) const;
  bool contains(const P1Point& x) const;
  // The disc lies inside F.
  bool contains(const Disc& disc) const;
  // Haar measure of F.
  Rational measure() const;
  // All discs of the given level lying inside F, in ascending order.
  std::vector<Disc> discs_at_level(long level) const;
  // p * min over holes of the radius of the affine disc bounding the hole.
  // Every point of a hole is at least this far from every point of F.
  Rational separation() const;
};

struct SchottkyGroup {
  long p;
  std::vector<MoebiusMap> generators;
  FundamentalDomain domain;

  long genus() const { return static_cast<long>(generators.size()); }
  const P1Disc& source_hole(long i) const { return domain.holes[static_cast<size_t>(i)]; }
  const P1Disc& target_hole(long i) const { return domain.holes[static_cast<size_t>(genus() + i)]; }
};

struct DomainReport {
  long depth = 0;
  long tiles_checked = 0;
  long sample_points = 0;
  // Longest chain of generator moves certifying that infinity is a limit point.
  std::string infinity_witness;
};

// Checks (i) hole disjointness, (ii) the hole pairing, (iii) that every
// translate wF with 1 <= l(w) <= depth misses F, plus hyperbolicity and that
// infinity is a limit point. Throws kDomainInvalid naming the failed clause.
DomainReport verify_fundamental_domain(const SchottkyGroup& group, long depth = 6);

// |tr^2/det|_p > 1.
bool is_hyperbolic(long p, const MoebiusMap& g);

struct Reduction {
  Rational point;     // in F
  GroupWord witness;  // witness(point) = z
};

// Moves z into F by generator steps. Throws kReductionDiverged past the cap.
Reduction reduce_to_domain(const SchottkyGroup& group, const Rational& z, long cap = 10000);

// 1 for the identity word, otherwise dist(B, wB).
Rational delta(const SchottkyGroup& group, const Disc& disc, const GroupWord& word);

}  // namespace mumford
