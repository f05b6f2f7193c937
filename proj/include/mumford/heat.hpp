#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mumford/json_io.hpp"
#include "mumford/spectrum.hpp"

namespace mumford {

// Doubles from the exact generator, rounded once per entry.
Eigen::MatrixXd to_dense(const GeneratorMatrix& G);

struct TransitionMatrix {
  double t = 0;
  Eigen::MatrixXd p;
  std::string provenance;     // "eigendecomposition" or "scaling-and-squaring"
  double row_sum_drift = 0;   // max |row sum - 1|
  double min_entry = 0;       // most negative entry before clamping
};

// Wavelet span of one support B: functions constant on the children of B
// with zero |omega|-mean over B. Q acts there as -lambda.
struct WaveletBlock {
  Disc support;
  std::vector<size_t> states;             // indices of level-m states inside B
  std::vector<size_t> child_of;           // child index for each of those states
  std::vector<double> state_weight_child; // mass(state)/mass(child)
  std::vector<double> state_weight_disc;  // mass(state)/mass(B)
  Surd lambda;                            // exact, read off the generator
};

// exp(tQ) on the level-m chain. The state space splits into the functions
// constant on each density piece (Q-invariant, small dense block) and the
// wavelet blocks, where the exponential is a scalar.
class HeatSemigroup {
 public:
  HeatSemigroup(const OperatorConfig& cfg, const GeneratorMatrix& G);

  size_t size() const { return q_.rows(); }
  const Eigen::MatrixXd& generator() const { return q_; }
  const std::vector<WaveletBlock>& blocks() const { return blocks_; }
  // Lumped generator on pieces.
  const Eigen::MatrixXd& piece_generator() const { return m_; }
  // Nonzero eigenvalues of the piece block (the part no wavelet reaches),
  // sorted by real part, descending.
  std::vector<std::complex<double>> gap_eigenvalues() const;
  // Smallest decay rate over wavelet blocks and the gap block.
  double spectral_gap() const;

  // u -> P_t u for one vector.
  Eigen::VectorXd apply(double t, const Eigen::VectorXd& u) const;
  // Throws kNumericalBreakdown when a row sum drifts more than 1e-9.
  TransitionMatrix transition(double t) const;
  // Eigen's dense matrix exponential, for cross-checks.
  TransitionMatrix transition_dense(double t) const;

 private:
  Eigen::MatrixXd q_;
  std::vector<size_t> piece_of_;       // piece index per state
  std::vector<double> piece_weight_;   // mass(state)/mass(piece)
  Eigen::MatrixXd m_;
  std::vector<WaveletBlock> blocks_;
};

struct HeatSolution {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;  // one vector per time
};

// h(t) = P_t h0 for real h0.
HeatSolution solve_cauchy(const HeatSemigroup& S, const Eigen::VectorXd& h0, const std::vector<double>& times);

// (eta I - Q) u = h by LU. Throws kSingularSystem when the residual is not small.
Eigen::VectorXd resolvent_solve(const Eigen::MatrixXd& q, double eta, const Eigen::VectorXd& h);

struct StationaryReport {
  Eigen::VectorXd pi;
  Eigen::VectorXd mass_normalized;  // |omega|(state) / |omega|(states)
  double total_variation = 0;       // between the two
  double residual = 0;              // max |pi Q|
};

// Off-diagonal graph strongly connected.
bool is_irreducible(const Eigen::MatrixXd& q);
// pi Q = 0, sum pi = 1. Throws kReducible.
StationaryReport stationary_distribution(const Eigen::MatrixXd& q, const std::vector<double>& masses = {});

// Right-continuous step path: state states[k] on [jump_times[k], jump_times[k+1]).
// jump_times[0] = 0 is the start.
struct PathSample {
  unsigned long long seed;
  std::vector<double> jump_times;
  std::vector<size_t> states;

  size_t state_at(double t) const;
};

// Seed for replica i, independent of scheduling.
unsigned long long replica_seed(unsigned long long seed, unsigned long long index);

// Exact simulation up to t_max: exponential holding with rate -Q_ii, then a
// jump to k with probability Q_ik / -Q_ii. Replicas run in parallel.
std::vector<PathSample> sample_paths(const Eigen::MatrixXd& q, size_t n_paths, double t_max, unsigned long long seed,
                                     size_t start_state = 0);

struct DistributionCheck {
  double t = 0;
  std::vector<long> counts;
  std::vector<double> expected;  // probabilities
  std::vector<double> z;         // (count - n p) / sqrt(n p (1 - p))
  double chi_square = 0;
  double max_abs_z = 0;
  bool pass = false;
};

// Counts against probabilities, per state at sigma binomial deviations.
DistributionCheck compare_distribution(const std::vector<long>& counts, const std::vector<double>& expected,
                                       double sigma = 4);

// Per checkpoint, states of all paths at t against the average of
// P_t rows over the start states.
std::vector<DistributionCheck> empirical_validation(const std::vector<PathSample>& paths, const HeatSemigroup& S,
                                                    const std::vector<double>& checkpoints, double sigma = 4);

// Fraction of [0, t_max] spent in each state.
std::vector<double> occupation_fractions(const PathSample& path, size_t n_states, double t_max);

Json distribution_check_json(const DistributionCheck& c);

}  // namespace mumford
