#include "mumford/spectrum.hpp"

#include <algorithm>
#include <map>

#include "mumford/error.hpp"
#include "mumford/parallel.hpp"

namespace mumford {

SurdComplex lift(const ExactComplex& z) {
  SurdComplex out(z.prime());
  for (const auto& [key, cyc] : z.entries())
    for (const auto& [phase, c] : cyc.coefficients()) out.add_term(key, phase, Surd(z.prime(), c));
  return out;
}

const char* mode_name(EvalMode mode) { return mode == EvalMode::kTransport ? "transport" : "ambient"; }

EvalMode parse_mode(const std::string& text) {
  if (text == "transport") return EvalMode::kTransport;
  if (text == "ambient") return EvalMode::kAmbient;
  throw Error(ErrorCode::kParseError, "mode must be transport or ambient, got '" + text + "'");
}

bool growth_condition(long p, long genus, const Rational& alpha_g) {
  if (sgn(alpha_g) <= 0) return false;
  // p^(a/b) > 2g  <=>  p^a > (2g)^b
  const unsigned long a = alpha_g.get_num().get_ui();
  const unsigned long b = alpha_g.get_den().get_ui();
  return ipow(Integer(p), a) > ipow(Integer(2 * genus), b);
}

OperatorConfig::OperatorConfig(SchottkyGroup group, MeasureProfile profile, Rational alpha, Rational alpha_g,
                               EvalMode mode, Cutoff cutoff)
    : group_(std::move(group)),
      profile_(std::move(profile)),
      alpha_(std::move(alpha)),
      alpha_g_(std::move(alpha_g)),
      mode_(mode),
      cutoff_(std::move(cutoff)) {
  if (sgn(alpha_) <= 0) throw Error(ErrorCode::kValidationError, "alpha must be positive");
  if (sgn(alpha_g_) <= 0) throw Error(ErrorCode::kValidationError, "alpha_g must be positive");
  if (!growth_condition(p(), genus(), alpha_g_))
    throw Error(ErrorCode::kValidationError, "growth condition p^alpha_g > 2g fails for p=" + std::to_string(p()) +
                                                 ", g=" + std::to_string(genus()) + ", alpha_g=" + to_string(alpha_g_));
  if (profile_.p != p()) throw Error(ErrorCode::kValidationError, "profile prime differs from the group prime");
  mu_ = domain().measure();
  if (cutoff_.length) {
    if (*cutoff_.length < 1) throw Error(ErrorCode::kValidationError, "cutoff length must be at least 1");
    length_ = *cutoff_.length;
  } else {
    if (!cutoff_.tolerance || sgn(*cutoff_.tolerance) <= 0)
      throw Error(ErrorCode::kValidationError, "cutoff tolerance must be positive");
    length_ = length_for_tolerance(*this, *cutoff_.tolerance);
  }
}

Surd OperatorConfig::rho() const { return Surd::term(p(), Rational(2 * genus() - 1), Rational(-alpha_g_)); }

Surd OperatorConfig::weight(const Rational& z, long word_length) const {
  if (sgn(z) == 0) throw Error(ErrorCode::kCoincidentPoints, "kernel evaluated at coincident points");
  return Surd::term(p(), Rational(1), Rational(alpha_ * valuation(p(), z) - alpha_g_ * word_length));
}

MoebiusMap OperatorConfig::letter_map(int letter) const {
  const auto& g = group_.generators.at(static_cast<size_t>(std::abs(letter) - 1));
  return letter > 0 ? g : g.inverse();
}

const P1Disc& OperatorConfig::letter_hole(int letter) const {
  return letter > 0 ? group_.target_hole(letter - 1) : group_.source_hole(-letter - 1);
}

Surd kernel(const OperatorConfig& cfg, const GroupWord& beta, const Rational& x, const GroupWord& gamma,
            const Rational& y) {
  const auto& gens = cfg.group().generators;
  Rational bx = beta.evaluate(gens).apply(x);
  Rational gy = gamma.evaluate(gens).apply(y);
  if (bx == gy) throw Error(ErrorCode::kCoincidentPoints, "beta x equals gamma y");
  return cfg.weight(Rational(bx - gy), (beta.inverse() * gamma).length()) * cfg.mu_inv();
}

Surd word_tail(const OperatorConfig& cfg, long L) {
  const long g = cfg.genus();
  Surd rho_l = Surd::term(cfg.p(), Rational(ipow(Integer(2 * g - 1), static_cast<unsigned long>(L))),
                          Rational(-cfg.alpha_g() * L));
  return rho_l * geometric_tail(cfg.rho()) * Rational(2 * g, 2 * g - 1);
}

Rational separation(const OperatorConfig& cfg, const MoebiusMap& beta) {
  std::optional<Rational> best;
  for (const P1Disc& hole : cfg.domain().holes) {
    Rational r = disc_image(beta, hole).inner().radius();
    if (!best || r < *best) best = r;
  }
  return *best * cfg.p();
}

Surd tail_bound(const OperatorConfig& cfg, long L, const Rational& sup_norm, const MoebiusMap& beta) {
  Rational d = separation(cfg, beta);
  Surd d_pow = Surd::term(cfg.p(), Rational(1), Rational(-cfg.alpha() * valuation(cfg.p(), d)));
  return word_tail(cfg, L) * d_pow * Rational(2 * sup_norm * cfg.mu_inv() * cfg.profile().total_mass());
}

long length_for_tolerance(const OperatorConfig& cfg, const Rational& eps) {
  for (long L = 1; L <= 100000; ++L)
    if (tail_bound(cfg, L).upper_bound() <= eps) return L;
  throw Error(ErrorCode::kNumericalBreakdown, "no word length reaches tolerance " + to_string(eps));
}

std::string surd_text(const Surd& s) {
  if (s.is_zero()) return "0";
  if (s.is_rational()) return to_string(s.rational_value());
  return s.to_string();
}

Rational certified_lower(const Certified<Surd>& c) { return Rational(c.value.lower_bound() - c.error); }
Rational certified_upper(const Certified<Surd>& c) { return Rational(c.value.upper_bound() + c.error); }

namespace {

// Upper bound for sqrt(q), q >= 0.
Rational sqrt_upper(const Rational& q) {
  mpf_class f(q, 192);
  mpf_class s(0, 192);
  mpf_sqrt(s.get_mpf_t(), f.get_mpf_t());
  Rational r(s);
  return Rational(r + Rational(1, Integer(1) << 64));
}

Rational abs_upper(const ExactComplex& z) {
  Rational total(0);
  for (const auto& [key, cyc] : z.entries()) {
    Rational coeff(0);
    for (const auto& [phase, c] : cyc.coefficients()) coeff += abs(c);
    total += sqrt_upper(key) * coeff;
  }
  return total;
}

Rational sup_norm(const LevelFunction& u) {
  Rational best(0);
  for (const auto& v : u.values) best = std::max(best, abs_upper(v));
  return best;
}

struct Prefix {
  GroupWord word;
  MoebiusMap map;  // the word's own map
};

long finest_piece_level(const MeasureProfile& profile) {
  long m = profile.pieces.empty() ? 0 : profile.pieces.front().disc.level();
  for (const auto& piece : profile.pieces) m = std::max(m, piece.disc.level());
  return m;
}

const ProfilePiece& piece_of(const OperatorConfig& cfg, const Disc& B) {
  const ProfilePiece* piece = cfg.profile().piece_containing(B);
  if (!piece) throw Error(ErrorCode::kNotAdmissible, "disc " + to_string(B.center()) + "/" +
                                                         std::to_string(B.radius_exp()) +
                                                         " is not inside a density piece");
  return *piece;
}

}  // namespace

TranslateSums translate_sums(const OperatorConfig& cfg, const MoebiusMap& beta, const Disc& target,
                             const std::vector<Disc>& sources) {
  const long p = cfg.p();
  const long g = cfg.genus();
  const long L = cfg.cutoff_length();
  const Disc beta_target = disc_image(beta, target);
  const P1Disc beta_target_p1(beta_target);
  const Rational anchor = beta.apply(target.center());
  // sum_{n >= 1} (2g-1)^(n-1) p^(-alpha_g n)
  const Surd branch_sum = geometric_tail(cfg.rho()) * Rational(1, 2 * g - 1);

  TranslateSums out;
  out.per_source.assign(sources.size(), Surd(p));

  std::vector<Prefix> frontier{{GroupWord(), MoebiusMap()}};
  for (long n = 0; !frontier.empty(); ++n) {
    std::vector<Prefix> next;
    for (const Prefix& P : frontier) {
      const MoebiusMap Q = beta.compose(P.map);
      const int last = P.word.is_identity() ? 0 : P.word.letters().back();

      // Chain acceleration: P = P0 g^j with g affine and expanding, and every
      // relevant image already dominated by its distance from Q(z*).
      bool accelerate = false;
      Surd chain_ratio(p);
      if (last != 0) {
        const MoebiusMap step = cfg.letter_map(last);
        if (step.is_affine() && Q.is_affine() && step.a() != step.d()) {
          Rational ad(step.a(), step.d());
          ad.canonicalize();
          const long v = valuation(p, ad);
          if (v < 0) {
            Rational fixed(step.b(), step.d() - step.a());
            fixed.canonicalize();
            const Rational qfixed = Q.apply(fixed);
            const Rational R = std::max(abs_p(p, Rational(qfixed - anchor)), beta_target.radius());
            bool ok = true;
            for (const Disc& S : sources) {
              if (!ok) break;
              ok = !S.contains(fixed) && abs_p(p, Rational(Q.apply(S.center()) - qfixed)) > R;
            }
            for (int l = 1; ok && l <= g; ++l)
              for (int letter : {l, -l}) {
                if (letter == last || letter == -last) continue;
                const P1Disc& hole = cfg.letter_hole(letter);
                ok = ok && hole.is_affine() && !hole.inner().contains(fixed) &&
                     abs_p(p, Rational(Q.apply(hole.inner().center()) - qfixed)) > R;
              }
            if (ok) {
              accelerate = true;
              chain_ratio = Surd::term(p, Rational(1), Rational(cfg.alpha() * v - cfg.alpha_g()));
            }
          }
        }
      }

      std::vector<Surd> local(sources.size(), Surd(p));
      Surd local_common(p);
      if (n >= 1) {
        for (size_t k = 0; k < sources.size(); ++k) {
          Disc img = disc_image(Q, sources[k]);
          if (!img.disjoint(beta_target))
            throw Error(ErrorCode::kAssumptionViolated, "translate " + P.word.to_string() + " of a source meets the target");
          local[k] = cfg.weight(Rational(anchor - Q.apply(sources[k].center())), n);
        }
      }
      for (int l = 1; l <= g; ++l)
        for (int letter : {l, -l}) {
          if (last != 0 && letter == -last) continue;
          if (accelerate && letter == last) continue;
          P1Disc img = disc_image(Q, cfg.letter_hole(letter));
          if (img.is_affine() && img.disjoint(beta_target_p1)) {
            local_common += cfg.weight(Rational(anchor - img.inner().center()), n) * branch_sum;
          } else if (n < L) {
            next.push_back({P.word.then(letter), P.map.compose(cfg.letter_map(letter))});
          } else {
            out.truncated = true;
          }
        }
      Surd scale(p, Rational(1));
      if (accelerate) scale = scale + geometric_tail(chain_ratio);
      for (size_t k = 0; k < sources.size(); ++k) out.per_source[k] += (local[k] + local_common) * scale;
    }
    frontier = std::move(next);
  }
  return out;
}

Certified<SurdComplex> apply_operator(const OperatorConfig& cfg, const LevelFunction& u, const GroupWord& beta_word,
                                      const Rational& x) {
  const long p = cfg.p();
  const MoebiusMap beta =
      cfg.mode() == EvalMode::kTransport ? MoebiusMap() : beta_word.evaluate(cfg.group().generators);
  const size_t xi = u.index_of(x);
  const Disc& X = u.states[xi];
  TranslateSums sums = translate_sums(cfg, beta, X, u.states);
  const Rational bx = beta.apply(X.center());
  const SurdComplex ux = lift(u.values[xi]);
  SurdComplex value(p);
  for (size_t k = 0; k < u.states.size(); ++k) {
    if (k == xi) continue;  // u(y) - u(x) vanishes on the state of x
    Surd w = sums.per_source[k] + cfg.weight(Rational(bx - beta.apply(u.states[k].center())), 0);
    w *= Rational(mass(cfg.profile(), u.states[k]) * cfg.mu_inv());
    value += (lift(u.values[k]) - ux).scaled(w);
  }
  Rational err(0);
  if (sums.truncated) err = tail_bound(cfg, cfg.cutoff_length(), sup_norm(u), beta).upper_bound();
  return {value, err};
}

SurdComplex vladimirov_local_integral(const Wavelet& w, const Rational& alpha, const Rational& x) {
  const Disc& B = w.support;
  const long p = B.prime();
  if (!B.contains(x)) throw Error(ErrorCode::kInvalidArgument, "x is not in the wavelet support");
  const SurdComplex psi_x = lift(wavelet_eval(w, x));
  SurdComplex total(p);
  // Only the sphere |x - y| = p^d contributes: psi is constant on the child of x.
  const Surd dist = Surd::term(p, Rational(1), Rational(-alpha * B.radius_exp()));
  for (const Disc& child : B.children()) {
    if (child.contains(x)) continue;
    SurdComplex piece = lift(wavelet_eval(w, child.center())) - psi_x;
    total += piece.scaled(dist * child.haar());
  }
  return total;
}

Certified<Surd> lambda_paper(const OperatorConfig& cfg, const Disc& B) {
  const ProfilePiece& piece = piece_of(cfg, B);
  TranslateSums sums = translate_sums(cfg, MoebiusMap(), B, {B});
  const Rational factor = piece.density * cfg.mu_inv() * rational_pow(cfg.p(), B.radius_exp());
  Surd value = (Surd(cfg.p(), Rational(1)) + sums.per_source[0]) * factor;
  Rational err(0);
  if (sums.truncated) {
    Rational d = separation(cfg);
    Surd d_pow = Surd::term(cfg.p(), Rational(1), Rational(-cfg.alpha() * valuation(cfg.p(), d)));
    err = (word_tail(cfg, cfg.cutoff_length()) * d_pow * factor).upper_bound();
  }
  return {value, err};
}

Certified<Surd> lambda_exact(const OperatorConfig& cfg, const Disc& B, long j) {
  const ProfilePiece& piece = piece_of(cfg, B);
  const long m = std::max(B.level() + 1, finest_piece_level(cfg.profile()));
  const Wavelet w{B, j};
  LevelFunction u = wavelet_function(cfg.profile(), m, w, Normalization::kOmega);
  const Rational inv_norm_sq = piece.density * B.haar();  // 1 / |psi(x)|^2
  std::optional<Certified<Surd>> result;
  for (const Disc& child : B.children()) {
    const Rational x = child.center();
    auto hv = apply_operator(cfg, u, GroupWord(), x);
    SurdComplex ratio = (-hv.value).times(u.at(x).conj()).scaled(inv_norm_sq);
    if (!ratio.is_scalar())
      throw Error(ErrorCode::kRatioNotConstant, "H psi / psi is not real at x = " + to_string(x));
    Surd lambda = ratio.scalar_part();
    if (lambda.prime() == 0) lambda = Surd(cfg.p());
    if (result && !(result->value == lambda))
      throw Error(ErrorCode::kRatioNotConstant, "H psi / psi varies over the children of B");
    Rational err(0);
    if (hv.error > 0) err = tail_bound(cfg, cfg.cutoff_length()).upper_bound();
    result = Certified<Surd>{lambda, err};
  }
  return *result;
}

Certified<Surd> lambda_structural(const OperatorConfig& cfg, const Disc& B) {
  const long p = cfg.p();
  const ProfilePiece& home = piece_of(cfg, B);
  // local part: C_B p^(d(1-alpha))
  Surd total = Surd::term(p, home.density, Rational(B.radius_exp() * (1 - cfg.alpha())));
  // the rest of F at distance |c_B - y|
  std::vector<Disc> sources;
  std::vector<Rational> masses;
  for (const ProfilePiece& piece : cfg.profile().pieces) {
    if (!piece.disc.contains(B)) {
      sources.push_back(piece.disc);
      masses.push_back(piece.density * piece.disc.haar());
      continue;
    }
    // piece minus B, as the siblings along the path from B up to the piece
    Disc cur = B;
    while (cur.radius_exp() < piece.disc.radius_exp()) {
      Disc parent = cur.parent();
      for (const Disc& sib : parent.children())
        if (!(sib == cur)) {
          sources.push_back(sib);
          masses.push_back(piece.density * sib.haar());
        }
      cur = parent;
    }
  }
  for (size_t k = 0; k < sources.size(); ++k)
    total += cfg.weight(Rational(B.center() - sources[k].center()), 0) * masses[k];
  // translates of F; B itself is one of the sources through its piece
  std::vector<Disc> pieces;
  for (const ProfilePiece& piece : cfg.profile().pieces) pieces.push_back(piece.disc);
  TranslateSums sums = translate_sums(cfg, MoebiusMap(), B, pieces);
  for (size_t k = 0; k < pieces.size(); ++k)
    total += sums.per_source[k] * Rational(cfg.profile().pieces[k].density * pieces[k].haar());
  total *= cfg.mu_inv();
  Rational err(0);
  if (sums.truncated) err = tail_bound(cfg, cfg.cutoff_length()).upper_bound();
  return {total, err};
}

std::vector<SpectrumEntry> spectrum(const OperatorConfig& cfg, long m) {
  std::map<std::pair<long, Rational>, std::vector<Disc>, std::greater<>> classes;
  for (const Wavelet& w : admissible_wavelets(cfg.profile(), m - 1)) {
    if (w.j != 1) continue;
    classes[{w.support.radius_exp(), cfg.profile().piece_containing(w.support)->density}].push_back(w.support);
  }
  std::vector<SpectrumEntry> out;
  for (auto& [key, discs] : classes) {
    std::sort(discs.begin(), discs.end());
    std::vector<Certified<Surd>> exact(discs.size(), Certified<Surd>{Surd(cfg.p()), Rational(0)});
    parallel_for(discs.size(), [&](size_t i) { exact[i] = lambda_exact(cfg, discs[i], 1); });
    bool constant = true;
    for (const auto& e : exact) constant = constant && e.value == exact[0].value;
    for (long j = 2; j < cfg.p(); ++j)
      if (!(lambda_exact(cfg, discs[0], j).value == exact[0].value))
        throw Error(ErrorCode::kRatioNotConstant, "eigenvalue depends on the character index");
    SpectrumEntry entry{key.first,
                        key.second,
                        lambda_paper(cfg, discs[0]),
                        exact[0],
                        static_cast<long>(discs.size()) * (cfg.p() - 1),
                        discs,
                        constant};
    out.push_back(std::move(entry));
  }
  return out;
}

Certified<Surd> lambda_transform(const OperatorConfig& cfg, const MoebiusMap& phi, const Disc& B) {
  const long p = cfg.p();
  if (phi.is_identity()) return lambda_paper(cfg, B);
  if (auto pole = phi.pole(); pole && cfg.domain().contains(*pole))
    throw Error(ErrorCode::kPoleInsideDomain, "phi has its pole in F");
  if (cfg.mode() == EvalMode::kTransport) {
    Disc image = disc_image(phi, B);
    Reduction red = reduce_to_domain(cfg.group(), image.center());
    MoebiusMap back = red.witness.inverse().evaluate(cfg.group().generators);
    Disc rep = disc_image(back, image);
    if (!cfg.domain().contains(rep))
      throw Error(ErrorCode::kNotAdmissible, "phi(B) is not carried onto a disc of F by one group element");
    return lambda_paper(cfg, rep);
  }
  const ProfilePiece& piece = piece_of(cfg, B);
  if (!cfg.profile().datum)
    throw Error(ErrorCode::kAssumptionViolated, "the ambient transform needs the rational-function datum");
  const Disc image = disc_image(phi, B);
  const Rational c_form = local_abs(*cfg.profile().datum, image);
  const Rational c_deriv = derivative_abs(p, phi, B.center());
  Rational mu_image(0);
  for (const ProfilePiece& pc : cfg.profile().pieces) mu_image += pc.disc.haar() * derivative_abs(p, phi, pc.disc.center());
  for (const ZeroCore& z : cfg.profile().zero_cores) mu_image += z.disc.haar() * derivative_abs(p, phi, z.disc.center());
  TranslateSums sums = translate_sums(cfg, phi, B, {B});
  const Rational factor = piece.density * c_form * c_deriv / mu_image * rational_pow(p, image.radius_exp());
  Surd value = (Surd(p, Rational(1)) + sums.per_source[0]) * factor;
  Rational err(0);
  if (sums.truncated) {
    Rational d = separation(cfg, phi);
    Surd d_pow = Surd::term(p, Rational(1), Rational(-cfg.alpha() * valuation(p, d)));
    err = (word_tail(cfg, cfg.cutoff_length()) * d_pow * factor).upper_bound();
  }
  return {value, err};
}

GeneratorMatrix generator_matrix(const OperatorConfig& cfg, long m) {
  if (m < finest_piece_level(cfg.profile()))
    throw Error(ErrorCode::kInvalidArgument, "level " + std::to_string(m) + " is coarser than the density profile");
  const long p = cfg.p();
  GeneratorMatrix G;
  G.level = m;
  G.states = level_states(cfg.profile(), m);
  const size_t n = G.states.size();
  std::vector<Rational> masses;
  for (const Disc& s : G.states) masses.push_back(mass(cfg.profile(), s));
  G.q.assign(n, std::vector<Surd>(n, Surd(p)));
  std::vector<char> truncated(n, 0);
  parallel_for(n, [&](size_t i) {
    TranslateSums sums = translate_sums(cfg, MoebiusMap(), G.states[i], G.states);
    truncated[i] = sums.truncated;
    Surd diag(p);
    for (size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      Surd w = sums.per_source[k] + cfg.weight(Rational(G.states[i].center() - G.states[k].center()), 0);
      w *= Rational(masses[k] * cfg.mu_inv());
      diag -= w;
      G.q[i][k] = std::move(w);
    }
    G.q[i][i] = diag;
  });
  G.exact = std::none_of(truncated.begin(), truncated.end(), [](char t) { return t != 0; });
  G.row_error = G.exact ? Rational(0) : tail_bound(cfg, cfg.cutoff_length()).upper_bound();
  return G;
}

Certified<SurdComplex> dirichlet_form(const OperatorConfig& cfg, const LevelFunction& u, const LevelFunction& v) {
  if (u.level != v.level || u.states != v.states)
    throw Error(ErrorCode::kNotLocallyConstant, "Dirichlet form needs both functions on the same states");
  GeneratorMatrix G = generator_matrix(cfg, u.level);
  const long p = cfg.p();
  SurdComplex total(p);
  for (size_t i = 0; i < G.size(); ++i) {
    const Rational mi = mass(cfg.profile(), G.states[i]);
    for (size_t k = 0; k < G.size(); ++k) {
      if (k == i) continue;
      ExactComplex du = u.values[k] - u.values[i];
      ExactComplex dv = v.values[k] - v.values[i];
      if (du.is_zero() || dv.is_zero()) continue;
      total += lift(du.times(dv.conj())).scaled(G.q[i][k] * Rational(mi / 2));
    }
  }
  Rational err(0);
  if (!G.exact) err = Rational(G.row_error * cfg.profile().total_mass() * sup_norm(u) * sup_norm(v));
  return {total, err};
}

}  // namespace mumford
