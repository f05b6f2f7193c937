#pragma once

#include <utility>
#include <vector>

#include "mumford/cyclotomic.hpp"
#include "mumford/omega.hpp"
#include "mumford/schottky.hpp"

namespace mumford {

// psi_{B,j}(x) = mu(B)^(-1/2) chi(p^(d-1) j x) on B, 0 elsewhere, where the
// radius of B is p^d. The lift of j in F_p is j itself.
struct Wavelet {
  Disc support;
  long j;

  bool operator==(const Wavelet& other) const = default;
};

enum class Normalization { kHaar, kOmega };

// Phase of the character part at x (meaningful for x in the support).
CharacterPhase wavelet_phase(const Wavelet& w, const Rational& x);

// Haar normalisation.
ExactComplex wavelet_eval(const Wavelet& w, const Rational& x);
// Either normalisation; kOmega uses (C_B mu(B))^(-1/2).
ExactComplex wavelet_eval(const Wavelet& w, const Rational& x, const MeasureProfile& profile, Normalization norm);

// Support inside one density piece, hence away from zero-cores.
bool is_admissible(const MeasureProfile& profile, const Disc& support);

// All wavelets whose support B is admissible with level(B) <= max_level,
// ordered by support then j.
std::vector<Wavelet> admissible_wavelets(const MeasureProfile& profile, long max_level);

struct InvariantWavelet {
  Wavelet base;
  const SchottkyGroup* group;
};

// psi(reduce(z)).
ExactComplex invariant_eval(const InvariantWavelet& w, const Rational& z);

// Integral of psi against |omega|; exactly 0 for admissible supports.
ExactComplex wavelet_mean(const Wavelet& w, const MeasureProfile& profile, Normalization norm = Normalization::kHaar);

// <w1, w2> = integral of w1 conj(w2) |omega|.
ExactComplex inner_product(const Wavelet& a, const Wavelet& b, const MeasureProfile& profile,
                           Normalization norm = Normalization::kOmega);

// Level-m discs of F inside density pieces, ascending.
std::vector<Disc> level_states(const MeasureProfile& profile, long m);

// A function constant on each level-m state.
struct LevelFunction {
  long level = 0;
  std::vector<Disc> states;
  std::vector<ExactComplex> values;

  size_t index_of(const Rational& x) const;  // throws kNotLocallyConstant when x is in no state
  const ExactComplex& at(const Rational& x) const { return values[index_of(x)]; }
};

LevelFunction zero_function(const MeasureProfile& profile, long m);
LevelFunction constant_function(const MeasureProfile& profile, long m, const Rational& c);
LevelFunction indicator_function(const MeasureProfile& profile, long m, const Disc& disc);
// Requires level(support) < m.
LevelFunction wavelet_function(const MeasureProfile& profile, long m, const Wavelet& w,
                               Normalization norm = Normalization::kOmega);

struct Analysis {
  ExactComplex constant;  // the |omega|-mean
  std::vector<std::pair<Wavelet, ExactComplex>> coefficients;  // omega-normalised wavelets
  LevelFunction residual;  // orthogonal to constants and all admissible wavelets
};

// u = constant + sum c_w psi_w + residual, exactly.
Analysis analyze(const LevelFunction& u, const MeasureProfile& profile);
LevelFunction synthesize(const Analysis& a, const MeasureProfile& profile);

struct Census {
  long level;
  long dim;
  long n_constants;
  long n_wavelets;
  long gap;
  long maximal_discs;  // number of density pieces reaching this level
};

Census completeness_census(const MeasureProfile& profile, long m);

}  // namespace mumford
