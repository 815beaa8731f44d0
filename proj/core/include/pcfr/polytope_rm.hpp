#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pcfr/nfg.hpp"

namespace pcfr {

class PerturbationTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeBound : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vertex basis of the perturbed simplex {x in simplex : x_i >= p_i}.
///
/// The vertices are the columns of B_p = p 1^T + tau I with
/// tau = 1 - sum_i p_i > 0. Only p and tau are stored; the dense matrix is
/// materialized on request for the generic path.
class PerturbationBasis {
 public:
  explicit PerturbationBasis(std::vector<double> lower_bounds);

  std::size_t size() const { return lower_.size(); }
  double tau() const { return tau_; }
  std::span<const double> lower_bounds() const { return lower_; }

  Eigen::MatrixXd matrix() const;
  Eigen::VectorXd column(std::size_t j) const;

 private:
  std::vector<double> lower_;
  double tau_ = 1.0;
};

// Throws NegativeBound or PerturbationTooLarge.
PerturbationBasis basis_matrix(std::vector<double> lower_bounds);

enum class Averaging { kUniform, kLinear };

struct RmPlusOptions {
  // Off gives plain regret matching (cumulative regrets are never clamped).
  bool clamp = true;
  Averaging averaging = Averaging::kUniform;
};

/// Learner state for regret matching over a polytope with n vertices living
/// in a d-dimensional ambient space.
struct RmPlusState {
  RmPlusState(Eigen::Index num_vertices, Eigen::Index ambient_dim, RmPlusOptions options = {});

  Eigen::VectorXd regrets;  // one entry per vertex
  Eigen::VectorXd average;  // running average action, ambient space
  std::int64_t iterations = 0;
  double weight_sum = 0.0;
  RmPlusOptions options;
};

// Convex weights over the vertices: [r]^+ / sum [r]^+, or uniform if that
// sum is zero.
Eigen::VectorXd vertex_weights(const Eigen::VectorXd& regrets);

// x_t = B [r]^+ / Lambda, or the uniform combination of the columns of B.
Eigen::VectorXd rm_plus_step(const RmPlusState& state, const Eigen::MatrixXd& vertices);

// r <- [r + phi]^+ and folds `action` into the running average.
void observe_and_update(RmPlusState& state, const Eigen::VectorXd& action,
                        const Eigen::VectorXd& vertex_regrets);

// x_t = p + tau [r]^+ / Lambda, or p + tau / n when Lambda = 0.
Eigen::VectorXd perturbed_action(const RmPlusState& state, const PerturbationBasis& basis);

// Plays perturbed_action, then applies r <- [r + tau phi + 1 (p^T phi)]^+
// where phi holds regrets against the pure actions e_1..e_n. Returns the
// action that was played.
Eigen::VectorXd perturbed_step_and_update(RmPlusState& state, const PerturbationBasis& basis,
                                          const Eigen::VectorXd& pure_regrets);

// gamma * sqrt(n) / sqrt(T).
double regret_bound(double gamma, std::size_t num_vertices, std::int64_t iterations);

/// Accumulates instantaneous vertex regrets and reports the signed maximum
/// average regret (1/T) max_i sum_t phi_{i,t}.
class RegretMeter {
 public:
  explicit RegretMeter(Eigen::Index num_vertices) : sums_(Eigen::VectorXd::Zero(num_vertices)) {}

  void add(const Eigen::VectorXd& phi) {
    sums_ += phi;
    ++count_;
  }
  std::int64_t count() const { return count_; }
  double max_average_regret() const;

 private:
  Eigen::VectorXd sums_;
  std::int64_t count_ = 0;
};

double measured_regret(std::span<const Eigen::VectorXd> history);

namespace kernel {

// In-place counterparts of perturbed_action / the perturbed regret update,
// used per infoset by the CFR solver.
void perturbed_regret_match(std::span<const double> regrets, std::span<const double> lower,
                            double tau, std::span<double> out);
void perturbed_regret_update(std::span<double> regrets, std::span<const double> pure_regrets,
                             std::span<const double> lower, double tau, bool clamp = true);

}  // namespace kernel

struct SelfPlayOptions {
  RmPlusOptions rm;
  // Player 2 responds to player 1's fresh action within the same iteration.
  bool alternating = false;
  std::int64_t iterations = 1;
  // Iterations after which a checkpoint is recorded; empty means powers of two.
  std::vector<std::int64_t> checkpoints;
};

struct SelfPlayCheckpoint {
  std::int64_t iteration = 0;
  double regret_p1 = 0.0;  // measured max average regret, own payoff
  double regret_p2 = 0.0;
  double bound_p1 = 0.0;
  double bound_p2 = 0.0;
  NfgExploitability exploitability;
  Eigen::VectorXd average_x;
  Eigen::VectorXd average_y;
};

// Both players run RM+ over their vertex sets against each other.
std::vector<SelfPlayCheckpoint> self_play(const GeneralizedNFG& game, const SelfPlayOptions& options);

std::vector<std::int64_t> power_of_two_checkpoints(std::int64_t iterations);

}  // namespace pcfr
