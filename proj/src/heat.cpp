#include "mumford/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "mumford/parallel.hpp"

namespace mumford {

Eigen::MatrixXd to_dense(const GeneratorMatrix& G) {
  const auto n = static_cast<Eigen::Index>(G.size());
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) q(i, k) = G.entry(static_cast<size_t>(i), static_cast<size_t>(k));
  return q;
}

namespace {

// Discs inside `root` from its own level down to level m-1.
void collect_supports(const Disc& root, long m, std::vector<Disc>& out) {
  if (root.level() >= m) return;
  out.push_back(root);
  for (const Disc& c : root.children()) collect_supports(c, m, out);
}

double max_row_drift(const Eigen::MatrixXd& p) {
  double drift = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) drift = std::max(drift, std::abs(p.row(i).sum() - 1.0));
  return drift;
}

void finish(TransitionMatrix& out) {
  out.row_sum_drift = max_row_drift(out.p);
  out.min_entry = out.p.size() ? out.p.minCoeff() : 0.0;
  if (out.row_sum_drift > 1e-9)
    throw Error(ErrorCode::kNumericalBreakdown, "row sums of P_t drift by " + std::to_string(out.row_sum_drift));
  if (out.min_entry < -1e-9)
    throw Error(ErrorCode::kNumericalBreakdown, "P_t has entry " + std::to_string(out.min_entry));
  // Rounding noise only; real negatives were rejected above.
  out.p = out.p.cwiseMax(0.0);
}

}  // namespace

HeatSemigroup::HeatSemigroup(const OperatorConfig& cfg, const GeneratorMatrix& G) : q_(to_dense(G)) {
  const MeasureProfile& prof = cfg.profile();
  const size_t n = G.size();
  std::vector<Rational> masses;
  for (const Disc& s : G.states) masses.push_back(mass(prof, s));

  // Pieces that carry states, in order of first appearance.
  std::vector<const ProfilePiece*> pieces;
  std::vector<Rational> piece_mass;
  piece_of_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const ProfilePiece* pc = prof.piece_containing(G.states[i]);
    if (!pc) throw Error(ErrorCode::kNotAdmissible, "state outside every density piece");
    auto it = std::find(pieces.begin(), pieces.end(), pc);
    if (it == pieces.end()) {
      pieces.push_back(pc);
      piece_mass.push_back(Rational(0));
      it = pieces.end() - 1;
    }
    piece_of_[i] = static_cast<size_t>(it - pieces.begin());
    piece_mass[piece_of_[i]] += masses[i];
  }
  piece_weight_.resize(n);
  for (size_t i = 0; i < n; ++i) piece_weight_[i] = to_double(Rational(masses[i] / piece_mass[piece_of_[i]]));

  // Lumped block, read from the first state of each piece. The other states
  // of the piece must agree, which is what makes the block invariant.
  const auto np = static_cast<Eigen::Index>(pieces.size());
  m_ = Eigen::MatrixXd::Zero(np, np);
  std::vector<char> seen(pieces.size(), 0);
  for (size_t i = 0; i < n; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(np);
    for (size_t k = 0; k < n; ++k)
      if (piece_of_[k] != piece_of_[i]) row(static_cast<Eigen::Index>(piece_of_[k])) += q_(i, k);
    auto a = static_cast<Eigen::Index>(piece_of_[i]);
    row(a) = -row.sum();
    if (!seen[piece_of_[i]]) {
      m_.row(a) = row.transpose();
      seen[piece_of_[i]] = 1;
    } else if ((m_.row(a).transpose() - row).cwiseAbs().maxCoeff() > 1e-9 * (1 + row.cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::kNumericalBreakdown, "rates out of a density piece depend on the state");
    }
  }

  // Wavelet blocks.
  for (const ProfilePiece* pc : pieces) {
    std::vector<Disc> supports;
    collect_supports(pc->disc, G.level, supports);
    for (const Disc& B : supports) {
      WaveletBlock blk{B, {}, {}, {}, {}, Surd(cfg.p())};
      const auto kids = B.children();
      Rational mB(0);
      std::vector<Rational> m_child(kids.size(), Rational(0));
      for (size_t i = 0; i < n; ++i) {
        if (!B.contains(G.states[i])) continue;
        size_t c = 0;
        while (!kids[c].contains(G.states[i])) ++c;
        blk.states.push_back(i);
        blk.child_of.push_back(c);
        m_child[c] += masses[i];
        mB += masses[i];
      }
      // v = 1_{child 0} - (m_c0/m_B) 1_B, exact; lambda = -(Qv)(x)/v(x) for x in child 0.
      const Rational share(m_child[0] / mB);
      size_t x = 0;
      for (size_t s = 0; s < blk.states.size(); ++s) {
        blk.state_weight_child.push_back(to_double(Rational(masses[blk.states[s]] / m_child[blk.child_of[s]])));
        blk.state_weight_disc.push_back(to_double(Rational(masses[blk.states[s]] / mB)));
        if (blk.child_of[s] == 0) x = blk.states[s];
      }
      Surd qv(cfg.p());
      for (size_t s = 0; s < blk.states.size(); ++s) {
        Rational v = blk.child_of[s] == 0 ? Rational(1 - share) : Rational(-share);
        qv += G.q[x][blk.states[s]] * v;
      }
      blk.lambda = -(qv * Rational(1 / Rational(1 - share)));
      blocks_.push_back(std::move(blk));
    }
  }
}

std::vector<std::complex<double>> HeatSemigroup::gap_eigenvalues() const {
  std::vector<std::complex<double>> ev;
  if (m_.rows() < 2) return ev;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m_, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  // Drop the eigenvalue belonging to the constants.
  auto zero = std::min_element(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  ev.erase(zero);
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

double HeatSemigroup::spectral_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) gap = std::min(gap, b.lambda.to_double());
  for (const auto& e : gap_eigenvalues()) gap = std::min(gap, -e.real());
  return gap;
}

Eigen::VectorXd HeatSemigroup::apply(double t, const Eigen::VectorXd& u) const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(m_.rows());
  for (Eigen::Index i = 0; i < n; ++i) avg(static_cast<Eigen::Index>(piece_of_[i])) += piece_weight_[i] * u(i);
  Eigen::VectorXd evolved = (m_ * t).exp() * avg;
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = evolved(static_cast<Eigen::Index>(piece_of_[i]));
  for (const auto& b : blocks_) {
    const double decay = std::exp(-b.lambda.to_double() * t);
    std::vector<double> child_avg(b.support.prime(), 0.0);
    double disc_avg = 0;
    for (size_t s = 0; s < b.states.size(); ++s) {
      const double v = u(static_cast<Eigen::Index>(b.states[s]));
      child_avg[b.child_of[s]] += b.state_weight_child[s] * v;
      disc_avg += b.state_weight_disc[s] * v;
    }
    for (size_t s = 0; s < b.states.size(); ++s)
      out(static_cast<Eigen::Index>(b.states[s])) += decay * (child_avg[b.child_of[s]] - disc_avg);
  }
  return out;
}

TransitionMatrix HeatSemigroup::transition(double t) const {
  if (t < 0) throw Error(ErrorCode::kInvalidArgument, "negative time");
  const auto n = static_cast<Eigen::Index>(size());
  TransitionMatrix out;
  out.t = t;
  out.provenance = "eigendecomposition";
  if (t == 0) {
    out.p = Eigen::MatrixXd::Identity(n, n);
    finish(out);
    return out;
  }
  const Eigen::MatrixXd e = (m_ * t).exp();
  out.p.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k)
      out.p(i, k) = e(static_cast<Eigen::Index>(piece_of_[i]), static_cast<Eigen::Index>(piece_of_[k])) * piece_weight_[k];
  for (const auto& b : blocks_) {
    const double decay = std::exp(-b.lambda.to_double() * t);
    for (size_t s = 0; s < b.states.size(); ++s)
      for (size_t r = 0; r < b.states.size(); ++r) {
        double w = -b.state_weight_disc[r];
        if (b.child_of[s] == b.child_of[r]) w += b.state_weight_child[r];
        out.p(static_cast<Eigen::Index>(b.states[s]), static_cast<Eigen::Index>(b.states[r])) += decay * w;
      }
  }
  finish(out);
  return out;
}

TransitionMatrix HeatSemigroup::transition_dense(double t) const {
  if (t < 0) throw Error(ErrorCode::kInvalidArgument, "negative time");
  TransitionMatrix out;
  out.t = t;
  out.provenance = "scaling-and-squaring";
  out.p = (q_ * t).exp();
  finish(out);
  return out;
}

HeatSolution solve_cauchy(const HeatSemigroup& S, const Eigen::VectorXd& h0, const std::vector<double>& times) {
  HeatSolution sol;
  sol.times = times;
  for (double t : times) {
    if (t < 0) throw Error(ErrorCode::kInvalidArgument, "negative time");
    sol.values.push_back(t == 0 ? h0 : S.apply(t, h0));
  }
  return sol;
}

Eigen::VectorXd resolvent_solve(const Eigen::MatrixXd& q, double eta, const Eigen::VectorXd& h) {
  if (!(eta > 0)) throw Error(ErrorCode::kInvalidArgument, "resolvent needs eta > 0");
  const Eigen::MatrixXd a = eta * Eigen::MatrixXd::Identity(q.rows(), q.cols()) - q;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::kSingularSystem, "eta I - Q is singular");
  Eigen::VectorXd u = lu.solve(h);
  const double residual = (a * u - h).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * (1 + h.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::kSingularSystem, "resolvent residual " + std::to_string(residual));
  return u;
}

bool is_irreducible(const Eigen::MatrixXd& q) {
  const Eigen::Index n = q.rows();
  if (n == 0) return false;
  auto reach = [&](bool forward) {
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index k = 0; k < n; ++k) {
        double rate = forward ? q(i, k) : q(k, i);
        if (k != i && rate > 0 && !seen[static_cast<size_t>(k)]) {
          seen[static_cast<size_t>(k)] = 1;
          stack.push_back(k);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reach(true) && reach(false);
}

StationaryReport stationary_distribution(const Eigen::MatrixXd& q, const std::vector<double>& masses) {
  if (!is_irreducible(q)) throw Error(ErrorCode::kReducible, "generator graph is not strongly connected");
  const Eigen::Index n = q.rows();
  Eigen::MatrixXd a = q.transpose();
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1;
  StationaryReport r;
  r.pi = Eigen::FullPivLU<Eigen::MatrixXd>(a).solve(b);
  r.residual = (r.pi.transpose() * q).cwiseAbs().maxCoeff();
  if (!masses.empty()) {
    r.mass_normalized = Eigen::Map<const Eigen::VectorXd>(masses.data(), static_cast<Eigen::Index>(masses.size()));
    r.mass_normalized /= r.mass_normalized.sum();
    r.total_variation = 0.5 * (r.pi - r.mass_normalized).cwiseAbs().sum();
  }
  return r;
}

size_t PathSample::state_at(double t) const {
  auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  return states[static_cast<size_t>(it - jump_times.begin()) - 1];
}

namespace {

unsigned long long splitmix64(unsigned long long x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

unsigned long long replica_seed(unsigned long long seed, unsigned long long index) {
  return splitmix64(splitmix64(seed) ^ index);
}

std::vector<PathSample> sample_paths(const Eigen::MatrixXd& q, size_t n_paths, double t_max, unsigned long long seed,
                                     size_t start_state) {
  const auto n = static_cast<size_t>(q.rows());
  if (n_paths == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one path");
  if (start_state >= n) throw Error(ErrorCode::kInvalidArgument, "start state out of range");
  // Exit rates and cumulative jump tables.
  std::vector<double> rate(n, 0.0);
  std::vector<std::vector<double>> cum(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    double acc = 0;
    for (size_t k = 0; k < n; ++k) {
      if (k != i) acc += std::max(0.0, q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      cum[i][k] = acc;
    }
    rate[i] = acc;
  }
  std::vector<PathSample> paths(n_paths);
  parallel_for(n_paths, [&](size_t r) {
    PathSample& path = paths[r];
    path.seed = replica_seed(seed, r);
    std::mt19937_64 rng(path.seed);
    double t = 0;
    size_t s = start_state;
    path.jump_times.push_back(0);
    path.states.push_back(s);
    while (rate[s] > 0) {
      t += -std::log1p(-unit(rng)) / rate[s];
      if (t > t_max) break;
      const double target = unit(rng) * rate[s];
      size_t k = static_cast<size_t>(std::upper_bound(cum[s].begin(), cum[s].end(), target) - cum[s].begin());
      // target < rate[s] = cum[s][n-1], so k < n and Q_sk > 0.
      s = k;
      path.jump_times.push_back(t);
      path.states.push_back(s);
    }
  });
  return paths;
}

DistributionCheck compare_distribution(const std::vector<long>& counts, const std::vector<double>& expected,
                                       double sigma) {
  DistributionCheck c;
  c.counts = counts;
  c.expected = expected;
  double total = 0;
  for (long k : counts) total += static_cast<double>(k);
  c.pass = true;
  for (size_t i = 0; i < counts.size(); ++i) {
    const double np = total * expected[i];
    const double var = np * (1 - expected[i]);
    const double diff = static_cast<double>(counts[i]) - np;
    double z;
    if (var > 0) {
      z = diff / std::sqrt(var);
    } else {
      z = std::abs(diff) < 0.5 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (np > 0) c.chi_square += diff * diff / np;
    c.z.push_back(z);
    c.max_abs_z = std::max(c.max_abs_z, std::abs(z));
    if (std::abs(z) > sigma) c.pass = false;
  }
  return c;
}

std::vector<DistributionCheck> empirical_validation(const std::vector<PathSample>& paths, const HeatSemigroup& S,
                                                    const std::vector<double>& checkpoints, double sigma) {
  const size_t n = S.size();
  std::vector<DistributionCheck> out;
  for (double t : checkpoints) {
    TransitionMatrix P = S.transition(t);
    std::vector<double> expected(n, 0.0);
    std::vector<long> counts(n, 0);
    for (const auto& path : paths) {
      const auto start = static_cast<Eigen::Index>(path.states.front());
      for (size_t k = 0; k < n; ++k) expected[k] += P.p(start, static_cast<Eigen::Index>(k));
      ++counts[path.state_at(t)];
    }
    for (double& e : expected) e /= static_cast<double>(paths.size());
    DistributionCheck c = compare_distribution(counts, expected, sigma);
    c.t = t;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<double> occupation_fractions(const PathSample& path, size_t n_states, double t_max) {
  std::vector<double> occ(n_states, 0.0);
  for (size_t k = 0; k < path.states.size(); ++k) {
    const double a = path.jump_times[k];
    const double b = k + 1 < path.jump_times.size() ? path.jump_times[k + 1] : t_max;
    if (a >= t_max) break;
    occ[path.states[k]] += std::min(b, t_max) - a;
  }
  for (double& o : occ) o /= t_max;
  return occ;
}

Json distribution_check_json(const DistributionCheck& c) {
  return {{"t", c.t},         {"counts", c.counts},       {"expected", c.expected}, {"z", c.z},
          {"chi_square", c.chi_square}, {"max_abs_z", c.max_abs_z}, {"pass", c.pass}};
}

}  // namespace mumford
