#pragma once

#include <optional>
#include <vector>

#include "mumford/cyclotomic.hpp"
#include "mumford/json_io.hpp"
#include "mumford/omega.hpp"
#include "mumford/schottky.hpp"
#include "mumford/surd.hpp"
#include "mumford/wavelets.hpp"

namespace mumford {

// Complex values whose coefficients carry rational powers of p.
using SurdComplex = RadicalSum<Surd>;
SurdComplex lift(const ExactComplex& z);

// transport: a translated quantity is defined to equal its F-representative.
// ambient: distances and densities are recomputed in the field.
enum class EvalMode { kTransport, kAmbient };
const char* mode_name(EvalMode mode);
EvalMode parse_mode(const std::string& text);

// Either a word length or a tolerance for the discarded part of group sums.
struct Cutoff {
  std::optional<long> length;
  std::optional<Rational> tolerance;

  static Cutoff of_length(long l) { return {l, std::nullopt}; }
  static Cutoff of_tolerance(const Rational& eps) { return {std::nullopt, eps}; }
};

// p^alpha_g > 2g, decided exactly for rational alpha_g.
bool growth_condition(long p, long genus, const Rational& alpha_g);

class OperatorConfig {
 public:
  // Throws kValidationError when the growth condition fails.
  OperatorConfig(SchottkyGroup group, MeasureProfile profile, Rational alpha, Rational alpha_g,
                 EvalMode mode = EvalMode::kTransport, Cutoff cutoff = Cutoff::of_tolerance(Rational(1, 1000000000000)));

  long p() const { return group_.p; }
  long genus() const { return group_.genus(); }
  const SchottkyGroup& group() const { return group_; }
  const FundamentalDomain& domain() const { return group_.domain; }
  const MeasureProfile& profile() const { return profile_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& alpha_g() const { return alpha_g_; }
  EvalMode mode() const { return mode_; }
  OperatorConfig with_mode(EvalMode mode) const {
    OperatorConfig copy = *this;
    copy.mode_ = mode;
    return copy;
  }
  const Cutoff& cutoff() const { return cutoff_; }
  // Word length actually used by every group sum.
  long cutoff_length() const { return length_; }
  // Haar measure of F and its inverse.
  const Rational& mu() const { return mu_; }
  Rational mu_inv() const { return Rational(1 / mu_); }
  // (2g-1) p^(-alpha_g), the growth ratio of the word sums.
  Surd rho() const;
  // |z|^(-alpha) p^(-alpha_g l) for a nonzero z.
  Surd weight(const Rational& z, long word_length) const;
  MoebiusMap letter_map(int letter) const;
  // The hole containing every translate w F with w starting with this letter.
  const P1Disc& letter_hole(int letter) const;

 private:
  SchottkyGroup group_;
  MeasureProfile profile_;
  Rational alpha_, alpha_g_;
  EvalMode mode_;
  Cutoff cutoff_;
  long length_ = 0;
  Rational mu_;
};

// mu(F)^-1 p^(-alpha_g l(beta^-1 gamma)) |beta x - gamma y|^(-alpha).
Surd kernel(const OperatorConfig& cfg, const GroupWord& beta, const Rational& x, const GroupWord& gamma,
            const Rational& y);

// sum_{l > L} 2g (2g-1)^(l-1) p^(-alpha_g l), exact.
Surd word_tail(const OperatorConfig& cfg, long L);
// Lower bound for |beta x - beta w y| over x, y in F and w != 1.
Rational separation(const OperatorConfig& cfg, const MoebiusMap& beta = MoebiusMap());
// 2 ||u|| mu^-1 |omega|(F) d_min^-alpha word_tail(L): bounds the discarded
// part of an operator value.
Surd tail_bound(const OperatorConfig& cfg, long L, const Rational& sup_norm = Rational(1),
                const MoebiusMap& beta = MoebiusMap());
// Smallest L with tail_bound(L) <= eps.
long length_for_tolerance(const OperatorConfig& cfg, const Rational& eps);

// sum over w != 1 of p^(-alpha_g l(w)) |beta c_X - beta w c_S|^(-alpha), one
// value per source disc S (all inside F). Subtrees of words whose images stay
// in one disc away from beta X are summed in closed form, as are chains of a
// repeated affine letter once their distances scale geometrically; anything
// left beyond the cutoff is reported through `truncated`.
struct TranslateSums {
  std::vector<Surd> per_source;
  bool truncated = false;
};
TranslateSums translate_sums(const OperatorConfig& cfg, const MoebiusMap& beta, const Disc& target,
                             const std::vector<Disc>& sources);

// A value with a certified absolute error (0 when the sum closed exactly).
template <class T>
struct Certified {
  T value;
  Rational error;
  bool exact() const { return sgn(error) == 0; }
};

// Exact rational text when the value is rational, the surd form otherwise.
std::string surd_text(const Surd& s);

// Bounds on a certified real value.
Rational certified_lower(const Certified<Surd>& c);
Rational certified_upper(const Certified<Surd>& c);

// Hu(beta x) for u constant on its states. In transport mode beta is ignored.
Certified<SurdComplex> apply_operator(const OperatorConfig& cfg, const LevelFunction& u, const GroupWord& beta,
                                      const Rational& x);

// integral over B of |x - y|^(-alpha) (psi(y) - psi(x)) dy for the Haar-normalised
// wavelet, summed sphere by sphere.
SurdComplex vladimirov_local_integral(const Wavelet& w, const Rational& alpha, const Rational& x);

// C_B mu^-1 p^d sum_w p^(-alpha_g l(w)) delta(B, wB)^(-alpha).
Certified<Surd> lambda_paper(const OperatorConfig& cfg, const Disc& B);

// -H psi / psi for psi = psi_{B,j}, checked constant over one sample point per
// child of B (throws kRatioNotConstant otherwise).
Certified<Surd> lambda_exact(const OperatorConfig& cfg, const Disc& B, long j = 1);

// Same eigenvalue assembled from its three parts: the local integral, the rest
// of F, and the translates. An independent path for cross-checks.
Certified<Surd> lambda_structural(const OperatorConfig& cfg, const Disc& B);

struct SpectrumEntry {
  long radius_exp;
  Rational density;
  Certified<Surd> lambda_paper;
  Certified<Surd> lambda_exact;
  long multiplicity;
  std::vector<Disc> witnesses;
  bool class_constant;  // every witness gives the same lambda_exact
};

// Classes (radius, density) of admissible supports at levels < m.
std::vector<SpectrumEntry> spectrum(const OperatorConfig& cfg, long m);

// Eigenvalue attached to phi(B). ambient: recomputed for phi(F) with the form
// pulled along phi; transport: the eigenvalue of the F-representative of phi(B).
Certified<Surd> lambda_transform(const OperatorConfig& cfg, const MoebiusMap& phi, const Disc& B);

// 1/2 sum_w double integral of H(x, w y)(u(y) - u(x)) conj(v(y) - v(x)).
Certified<SurdComplex> dirichlet_form(const OperatorConfig& cfg, const LevelFunction& u, const LevelFunction& v);

struct GeneratorMatrix {
  long level = 0;
  std::vector<Disc> states;
  std::vector<std::vector<Surd>> q;  // exact; diagonal is minus the off-diagonal row sum
  Rational row_error;               // certified bound per row entry sum
  bool exact = true;

  size_t size() const { return states.size(); }
  double entry(size_t i, size_t j) const { return q[i][j].to_double(); }
};

// Rates Q_{D,D'} = mu^-1 |omega|(D') sum_w p^(-alpha_g l(w)) |c_D - w c_D'|^(-alpha)
// over (w, D') != (1, D). m must be at least the profile resolution.
GeneratorMatrix generator_matrix(const OperatorConfig& cfg, long m);

struct AuditOptions {
  long random_instances = 10000;
  unsigned long long seed = 1;
};

// Exact checks of the structural statements the operator relies on. Each
// section lists instances, counts and a verdict; failures are findings.
Json audit_lemmas(const OperatorConfig& cfg, const AuditOptions& options = {});

}  // namespace mumford
