// One line per acceptance criterion; exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "mumford/heat.hpp"
#include "test_support.hpp"

using namespace mumford;
using mumford::testing::q;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Eigen::VectorXd real_part(const LevelFunction& u) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(u.values.size()));
  for (size_t i = 0; i < u.values.size(); ++i) v(static_cast<Eigen::Index>(i)) = u.values[i].to_complex().real();
  return v;
}

Outcome integrals() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> pick_k(-3, 3), pick_m(0, 2), pick_shift(-2, 1), pick_ell(-4, 3);
  long bad = 0;
  for (int i = 0; i < 1000; ++i) {
    long p = std::array<long, 3>{2, 3, 5}[i % 3];
    long k = pick_k(rng), m = pick_m(rng);
    Rational a = testing::random_rational_with_valuation(rng, p, -(k + pick_shift(rng) + 1));
    if (sphere_character_integral(p, a, k, m) != brute_sphere_decomposition(p, a, k, k, m)) ++bad;
    long ell = pick_ell(rng);
    if (ball_character_moment_integral(p, a, ell, m) != brute_ball_decomposition(p, a, ell, m)) ++bad;
  }
  return {bad == 0, "1000 sphere + 1000 ball instances, " + std::to_string(bad) + " mismatches"};
}

Outcome worked_eigenvalue() {
  auto cfg = testing::tate_config();
  auto lp = lambda_paper(cfg, Disc(3, q(1), -1));
  bool ok = lp.exact() && lp.value.is_rational() && lp.value.rational_value() == q(15, 26);
  return {ok, "lambda_paper(D(1,-1)) = " + surd_text(lp.value)};
}

Outcome eigen_relation() {
  auto cfg = testing::tate_config(EvalMode::kTransport, 4);
  long points = 0, bad = 0, wavelets = 0;
  std::map<std::pair<long, Rational>, Surd> per_class;
  for (const Wavelet& w : admissible_wavelets(cfg.profile(), 3)) {
    ++wavelets;
    const long m = w.support.level() + 1;
    auto u = wavelet_function(cfg.profile(), m, w);
    auto lam = lambda_exact(cfg, w.support, w.j);
    const Rational bound = tail_bound(cfg, cfg.cutoff_length(), Rational(1)).upper_bound();
    auto key = std::make_pair(w.support.radius_exp(), cfg.profile().density_at(w.support.center()));
    auto [it, fresh] = per_class.emplace(key, lam.value);
    if (!fresh && !(it->second == lam.value)) ++bad;  // class constant and j-independent
    for (const Disc& c : w.support.children()) {
      ++points;
      auto hv = apply_operator(cfg, u, GroupWord(), c.center());
      auto diff = hv.value - lift(u.at(c.center())).scaled(-lam.value);
      if (std::abs(diff.to_complex()) > to_double(Rational(bound + hv.error + lam.error))) ++bad;
    }
    int outside = 0;
    for (const Disc& s : cfg.domain().discs_at_level(m)) {
      if (w.support.contains(s)) continue;
      ++points;
      auto hv = apply_operator(cfg, u, GroupWord(), s.center());
      if (std::abs(hv.value.to_complex()) > to_double(Rational(bound + hv.error))) ++bad;
      if (++outside == 4) break;
    }
  }
  return {bad == 0, std::to_string(wavelets) + " wavelets, " + std::to_string(points) + " sample points, " +
                        std::to_string(per_class.size()) + " classes, " + std::to_string(bad) + " violations"};
}

Outcome orthonormality() {
  auto cfg = testing::tate_config();
  auto ws = admissible_wavelets(cfg.profile(), 3);
  ExactComplex one = ExactComplex::single(3, q(1), q(0), q(1));
  long bad = 0;
  for (size_t a = 0; a < ws.size(); ++a)
    for (size_t b = 0; b < ws.size(); ++b) {
      auto ip = inner_product(ws[a], ws[b], cfg.profile());
      if (a == b ? !(ip == one) : !ip.is_zero()) ++bad;
    }
  return {bad == 0, std::to_string(ws.size()) + "x" + std::to_string(ws.size()) + " Gram matrix, " +
                        std::to_string(bad) + " wrong entries"};
}

struct Chain {
  OperatorConfig cfg = testing::tate_config();
  GeneratorMatrix G = generator_matrix(cfg, 2);
  HeatSemigroup S{cfg, G};
};

Outcome semigroup(const Chain& c) {
  bool ok = c.G.exact;
  for (size_t i = 0; i < c.G.size(); ++i) {
    Surd row(3);
    for (size_t k = 0; k < c.G.size(); ++k) {
      row += c.G.q[i][k];
      if (k != i && c.G.q[i][k].lower_bound() < 0) ok = false;
    }
    if (!row.is_zero()) ok = false;
  }
  const auto n = static_cast<Eigen::Index>(c.S.size());
  auto a = c.S.transition(0.3).p, b = c.S.transition(0.7).p, p1 = c.S.transition(1.0).p;
  const double ck = (a * b - p1).cwiseAbs().maxCoeff();
  const double ones = (p1 * Eigen::VectorXd::Ones(n) - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  ok = ok && ck <= 1e-9 && ones <= 1e-12;

  std::vector<std::complex<double>> expected{0.0};
  for (const auto& blk : c.S.blocks()) {
    if (!(blk.lambda == lambda_exact(c.cfg, blk.support).value)) ok = false;
    for (int j = 1; j < 3; ++j) expected.emplace_back(-blk.lambda.to_double(), 0.0);
  }
  auto gap = c.S.gap_eigenvalues();
  for (auto e : gap) expected.push_back(e);
  Eigen::EigenSolver<Eigen::MatrixXd> es(c.S.generator(), false);
  std::vector<std::complex<double>> got;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) got.push_back(es.eigenvalues()(i));
  if (got.size() != expected.size()) return {false, "eigenvalue count mismatch"};
  double worst = 0;
  for (auto e : expected) {
    auto best = std::min_element(got.begin(), got.end(), [&](auto x, auto y) { return std::abs(x - e) < std::abs(y - e); });
    worst = std::max(worst, std::abs(*best - e) / std::max(1.0, std::abs(e)));
    got.erase(best);
  }
  ok = ok && worst <= 1e-8;
  std::string gaps;
  for (auto e : gap) gaps += (gaps.empty() ? "" : " ") + std::to_string(e.real());
  char buf[200];
  std::snprintf(buf, sizeof buf, "CK %.1e, row sums %.1e, wavelet eigenvalues rel %.1e; gap block: ", ck, ones, worst);
  return {ok, buf + gaps};
}

Outcome heat_decay(const Chain& c) {
  double worst = 0;
  for (const auto& w : admissible_wavelets(c.cfg.profile(), 1)) {
    Eigen::VectorXd h0 = real_part(wavelet_function(c.cfg.profile(), 2, w));
    const double lambda = lambda_exact(c.cfg, w.support).value.to_double();
    std::vector<double> grid;
    for (int k = 1; k <= 50; ++k) grid.push_back(5.0 / lambda * k / 50);
    auto sol = solve_cauchy(c.S, h0, grid);
    Eigen::Index at;
    h0.cwiseAbs().maxCoeff(&at);
    // Least-squares slope of log|h| through the origin.
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < grid.size(); ++k) {
      const double y = std::log(sol.values[k](at) / h0(at));
      sxy += grid[k] * y;
      sxx += grid[k] * grid[k];
    }
    worst = std::max(worst, std::abs(-sxy / sxx - lambda) / lambda);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "fitted decay rate vs lambda_exact, worst relative error %.1e", worst);
  return {worst <= 1e-6, buf};
}

Outcome resolvent(const Chain& c) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0, 1);
  const auto n = static_cast<Eigen::Index>(c.S.size());
  long bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) h(i) = U(rng);
    auto u = resolvent_solve(c.S.generator(), 1.0, h);
    if (u.minCoeff() < -1e-12 || u.cwiseAbs().maxCoeff() > h.cwiseAbs().maxCoeff() + 1e-12) ++bad;
  }
  return {bad == 0, "100 nonnegative right-hand sides, " + std::to_string(bad) + " violations"};
}

Outcome monte_carlo(const Chain& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto paths = sample_paths(c.S.generator(), 100000, 1.0, 2024);
  auto check = empirical_validation(paths, c.S, {1.0}).front();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto again = sample_paths(c.S.generator(), 100000, 1.0, 2024);
  bool same = true;
  for (size_t r = 0; r < paths.size() && same; ++r)
    same = paths[r].jump_times == again[r].jump_times && paths[r].states == again[r].states;
  char buf[160];
  std::snprintf(buf, sizeof buf, "1e5 paths, max |z| = %.2f (limit 4), seed-deterministic: %s, %.1f s", check.max_abs_z,
                same ? "yes" : "no", secs);
  return {check.pass && same && secs < 60, buf};
}

Outcome audit() {
  auto cfg = testing::tate_config();
  Json r = audit_lemmas(cfg, AuditOptions{10000, 1});
  const bool ok = r["moebius_distance_identity"]["failures"] == 0 &&
                  r["moebius_distance_identity"]["instances"] == 10000 &&
                  r["translate_distance_lower_bound"]["failures"] == 0 &&
                  r["translate_distance_lower_bound"]["instances"] == 10000 &&
                  r["translate_distance_equivariance"]["reference_instance"]["lhs"] == "1/9" &&
                  r["translate_distance_equivariance"]["reference_instance"]["rhs"] == "1" &&
                  !r["local_integral_alpha"]["rows"].empty() &&
                  r["translate_invariance"]["verdict_transport"] == "holds" &&
                  r["translate_invariance"]["rows"][0]["ambient_factor"] == "19/5";
  return {ok, "distance identity and lower bound: 0 failures in 1e4 each; equivariance instance 1/9 vs 1; "
              "ambient transform factor " +
                  r["translate_invariance"]["rows"][0]["ambient_factor"].get<std::string>()};
}

Outcome census() {
  long bad = 0;
  for (long g = 1; g <= 3; ++g) {
    auto words = enumerate_words(g, 8);
    for (long l = 1; l <= 8; ++l) {
      long expect = 2 * g;
      for (long k = 1; k < l; ++k) expect *= 2 * g - 1;
      if (static_cast<long>(words[static_cast<size_t>(l)].size()) != expect) ++bad;
    }
  }
  return {bad == 0, "g = 1..3, lengths 1..8, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
  Chain chain;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"exact character integrals match the residue-class oracle", integrals},
      {"worked eigenvalue 15/26", worked_eigenvalue},
      {"eigen-relation for every admissible wavelet up to level 3", eigen_relation},
      {"omega-normalised wavelets are orthonormal", orthonormality},
      {"generator and semigroup", [&] { return semigroup(chain); }},
      {"heat decay rate", [&] { return heat_decay(chain); }},
      {"resolvent positivity and contraction", [&] { return resolvent(chain); }},
      {"Monte Carlo against P_1", [&] { return monte_carlo(chain); }},
      {"exact audits", audit},
      {"word census", census},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %s (%s) [%.1f s]\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
