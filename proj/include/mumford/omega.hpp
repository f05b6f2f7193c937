#pragma once

#include <optional>
#include <vector>

#include "mumford/json_io.hpp"
#include "mumford/padic.hpp"
#include "mumford/schottky.hpp"

namespace mumford {

// (z - root)^multiplicity; negative multiplicity is a pole.
struct RootFactor {
  Rational root;
  long multiplicity;
};

// poly(z)^multiplicity with coefficients from the constant term up. Kept only
// until construction, where it is split into rational roots.
struct PolynomialFactor {
  std::vector<Rational> coefficients;
  long multiplicity;
};

// f(z) = scale * prod (z - a_i)^n_i, the density of |omega| = |f| |dz|.
class RationalFunctionDatum {
 public:
  RationalFunctionDatum() : scale_(1) {}
  // Polynomial factors are split over Q. A zero that is not rational throws
  // kAssumptionViolated.
  RationalFunctionDatum(Rational scale, std::vector<RootFactor> roots,
                        std::vector<PolynomialFactor> polynomials = {});

  // The invariant form dz/z of the Tate curve.
  static RationalFunctionDatum dz_over_z();

  const Rational& scale() const { return scale_; }
  const std::vector<RootFactor>& roots() const { return roots_; }

  // |f(x)| at a point that is neither a zero nor a pole.
  Rational abs_value(long p, const Rational& x) const;

  Json to_json() const;
  static RationalFunctionDatum from_json(const Json& j);

 private:
  Rational scale_;
  std::vector<RootFactor> roots_;  // merged by root, sorted
};

// |f| on a disc containing no root: constant, equal to its value at the center.
Rational local_abs(const RationalFunctionDatum& datum, const Disc& disc);

struct ProfilePiece {
  Disc disc;
  Rational density;
};

struct ZeroCore {
  Disc disc;
  Rational root;
  long multiplicity;
  Rational mass;  // |omega|(disc), reported only
};

// Locally constant density of |omega| on F. Pieces are maximal discs of F on
// which the density is constant; zero-cores are the level-m discs around zeros
// and are not part of the state space.
struct MeasureProfile {
  long p = 0;
  long resolution = 0;
  std::vector<ProfilePiece> pieces;
  std::vector<ZeroCore> zero_cores;
  std::optional<RationalFunctionDatum> datum;

  Rational total_mass() const;
  Rational zero_core_mass() const;
  // Piece containing the disc, if any.
  const ProfilePiece* piece_containing(const Disc& disc) const;
  const ProfilePiece* piece_containing(const Rational& x) const;
  // Density at a point of a piece; throws kNotAdmissible elsewhere.
  Rational density_at(const Rational& x) const;

  Json to_json() const;
  // Checks that pieces and zero-cores partition F.
  static MeasureProfile from_json(long p, const Json& j, const FundamentalDomain& F);
};

// Maximal constant-density discs down to level m, zero-cores at level m.
MeasureProfile build_profile(long p, const RationalFunctionDatum& datum, const FundamentalDomain& F, long m);

// Pieces and zero-cores cover F exactly, disjointly.
void check_partition(const MeasureProfile& profile, const FundamentalDomain& F);

// |omega|(D) for D made of whole pieces (or inside one piece).
Rational mass(const MeasureProfile& profile, const Disc& disc);

struct InvarianceRow {
  Disc piece;
  GroupWord generator;
  Rational form_lhs;       // |f(g y)| |g'(y)|
  Rational form_rhs;       // |f(y)|
  Rational density;        // C_B
  Rational image_density;  // C_{gB}
  Rational derivative;     // |g'| on B
  bool form_invariant;     // lhs == rhs
  bool density_equal;      // C_B == C_{gB}
  bool isometric;          // |g'| == 1
};

// One row per (piece, generator letter +-i).
std::vector<InvarianceRow> invariance_audit(const MeasureProfile& profile, const RationalFunctionDatum& datum,
                                            const SchottkyGroup& group);

}  // namespace mumford
