#include "mumford/wavelets.hpp"

#include <algorithm>
#include <functional>

#include "mumford/error.hpp"

namespace mumford {

CharacterPhase wavelet_phase(const Wavelet& w, const Rational& x) {
  const long p = w.support.prime();
  return character_phase(p, Rational(rational_pow(p, w.support.radius_exp() - 1) * w.j * x));
}

ExactComplex wavelet_eval(const Wavelet& w, const Rational& x) {
  const long p = w.support.prime();
  if (!w.support.contains(x)) return ExactComplex(p);
  return exact_complex(p, 1 / w.support.haar(), wavelet_phase(w, x));
}

ExactComplex wavelet_eval(const Wavelet& w, const Rational& x, const MeasureProfile& profile, Normalization norm) {
  if (norm == Normalization::kHaar) return wavelet_eval(w, x);
  const long p = w.support.prime();
  if (!w.support.contains(x)) return ExactComplex(p);
  const ProfilePiece* piece = profile.piece_containing(w.support);
  if (!piece) throw Error(ErrorCode::kNotAdmissible, "wavelet support is not inside a density piece");
  return exact_complex(p, 1 / (piece->density * w.support.haar()), wavelet_phase(w, x));
}

bool is_admissible(const MeasureProfile& profile, const Disc& support) {
  return profile.piece_containing(support) != nullptr;
}

std::vector<Disc> level_states(const MeasureProfile& profile, long m) {
  std::vector<Disc> out;
  for (const ProfilePiece& piece : profile.pieces) {
    if (piece.disc.level() > m) continue;
    std::vector<Disc> layer{piece.disc};
    while (!layer.empty() && layer.front().level() < m) {
      std::vector<Disc> next;
      for (const Disc& d : layer)
        for (const Disc& c : d.children()) next.push_back(c);
      layer = std::move(next);
    }
    out.insert(out.end(), layer.begin(), layer.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Wavelet> admissible_wavelets(const MeasureProfile& profile, long max_level) {
  std::vector<Disc> supports;
  if (profile.pieces.empty()) return {};
  long coarsest = profile.pieces.front().disc.level();
  for (const ProfilePiece& piece : profile.pieces) coarsest = std::min(coarsest, piece.disc.level());
  for (long lvl = coarsest; lvl <= max_level; ++lvl) {
    auto discs = level_states(profile, lvl);
    supports.insert(supports.end(), discs.begin(), discs.end());
  }
  std::vector<Wavelet> out;
  for (const Disc& b : supports)
    for (long j = 1; j < b.prime(); ++j) out.push_back({b, j});
  return out;
}

ExactComplex invariant_eval(const InvariantWavelet& w, const Rational& z) {
  return wavelet_eval(w.base, reduce_to_domain(*w.group, z).point);
}

namespace {

// Sum over the children of the support of value * mass.
ExactComplex integrate_children(const Disc& support, const MeasureProfile& profile,
                                const std::function<ExactComplex(const Rational&)>& f) {
  ExactComplex total(support.prime());
  for (const Disc& c : support.children()) total += f(c.center()).scaled(mass(profile, c));
  return total;
}

}  // namespace

ExactComplex wavelet_mean(const Wavelet& w, const MeasureProfile& profile, Normalization norm) {
  if (!is_admissible(profile, w.support)) {
    for (const ZeroCore& z : profile.zero_cores)
      if (!w.support.disjoint(z.disc))
        throw Error(ErrorCode::kNotAdmissible, "wavelet support meets a zero-core");
    throw Error(ErrorCode::kNotAdmissible, "wavelet support is not inside a density piece");
  }
  return integrate_children(w.support, profile,
                            [&](const Rational& x) { return wavelet_eval(w, x, profile, norm); });
}

ExactComplex inner_product(const Wavelet& a, const Wavelet& b, const MeasureProfile& profile, Normalization norm) {
  if (!is_admissible(profile, a.support) || !is_admissible(profile, b.support))
    throw Error(ErrorCode::kNotAdmissible, "wavelet support is not inside a density piece");
  const long p = a.support.prime();
  if (a.support.disjoint(b.support)) return ExactComplex(p);
  // Both are constant on the children of the smaller support.
  const Disc& small = a.support.radius_exp() <= b.support.radius_exp() ? a.support : b.support;
  return integrate_children(small, profile, [&](const Rational& x) {
    return wavelet_eval(a, x, profile, norm).times(wavelet_eval(b, x, profile, norm).conj());
  });
}

size_t LevelFunction::index_of(const Rational& x) const {
  // states are sorted by center at a fixed level; a linear scan keeps this simple.
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i].contains(x)) return i;
  throw Error(ErrorCode::kNotLocallyConstant, "point " + to_string(x) + " lies in no level-" +
                                                  std::to_string(level) + " state");
}

LevelFunction zero_function(const MeasureProfile& profile, long m) {
  LevelFunction u;
  u.level = m;
  u.states = level_states(profile, m);
  u.values.assign(u.states.size(), ExactComplex(profile.p));
  return u;
}

LevelFunction constant_function(const MeasureProfile& profile, long m, const Rational& c) {
  LevelFunction u = zero_function(profile, m);
  ExactComplex value = ExactComplex::single(profile.p, Rational(1), Rational(0), c);
  for (auto& v : u.values) v = value;
  return u;
}

LevelFunction indicator_function(const MeasureProfile& profile, long m, const Disc& disc) {
  LevelFunction u = zero_function(profile, m);
  for (size_t i = 0; i < u.states.size(); ++i)
    if (disc.contains(u.states[i])) u.values[i] = exact_complex(profile.p, Rational(1), CharacterPhase{Rational(0)});
  return u;
}

LevelFunction wavelet_function(const MeasureProfile& profile, long m, const Wavelet& w, Normalization norm) {
  if (w.support.level() >= m) throw Error(ErrorCode::kNotLocallyConstant, "wavelet is finer than the level");
  LevelFunction u = zero_function(profile, m);
  for (size_t i = 0; i < u.states.size(); ++i)
    u.values[i] = wavelet_eval(w, u.states[i].center(), profile, norm);
  return u;
}

Analysis analyze(const LevelFunction& u, const MeasureProfile& profile) {
  const long p = profile.p;
  std::vector<Rational> masses;
  for (const Disc& s : u.states) masses.push_back(mass(profile, s));
  Analysis a{ExactComplex(p), {}, u};
  const Rational total = profile.total_mass();
  for (size_t i = 0; i < u.states.size(); ++i) a.constant += u.values[i].scaled(masses[i]);
  if (sgn(total) > 0) a.constant = a.constant.scaled(Rational(1 / total));
  for (auto& v : a.residual.values) v -= a.constant;
  for (const Wavelet& w : admissible_wavelets(profile, u.level - 1)) {
    ExactComplex c(p);
    std::vector<ExactComplex> psi;
    for (size_t i = 0; i < u.states.size(); ++i) {
      psi.push_back(wavelet_eval(w, u.states[i].center(), profile, Normalization::kOmega));
      c += u.values[i].times(psi.back().conj()).scaled(masses[i]);
    }
    if (c.is_zero()) continue;
    for (size_t i = 0; i < u.states.size(); ++i) a.residual.values[i] -= c.times(psi[i]);
    a.coefficients.emplace_back(w, c);
  }
  return a;
}

LevelFunction synthesize(const Analysis& a, const MeasureProfile& profile) {
  LevelFunction u = a.residual;
  for (size_t i = 0; i < u.states.size(); ++i) {
    u.values[i] += a.constant;
    for (const auto& [w, c] : a.coefficients)
      u.values[i] += c.times(wavelet_eval(w, u.states[i].center(), profile, Normalization::kOmega));
  }
  return u;
}

Census completeness_census(const MeasureProfile& profile, long m) {
  Census c{m, 0, 0, 0, 0, 0};
  c.dim = static_cast<long>(level_states(profile, m).size());
  c.n_constants = c.dim > 0 ? 1 : 0;
  c.n_wavelets = static_cast<long>(admissible_wavelets(profile, m - 1).size());
  for (const ProfilePiece& piece : profile.pieces) c.maximal_discs += piece.disc.level() <= m ? 1 : 0;
  c.gap = c.dim - c.n_constants - c.n_wavelets;
  return c;
}

}  // namespace mumford
