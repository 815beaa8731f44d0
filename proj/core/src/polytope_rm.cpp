#include "pcfr/polytope_rm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pcfr {

PerturbationBasis::PerturbationBasis(std::vector<double> lower_bounds)
    : lower_(std::move(lower_bounds)) {
  if (lower_.empty()) throw std::invalid_argument("perturbation basis needs at least one action");
  double sum = 0.0;
  for (double p : lower_) {
    if (!(p >= 0.0)) throw NegativeBound("perturbation lower bound " + std::to_string(p) + " < 0");
    sum += p;
  }
  if (!(sum < 1.0)) {
    throw PerturbationTooLarge("perturbation lower bounds sum to " + std::to_string(sum) +
                               ", must be < 1");
  }
  tau_ = 1.0 - sum;
}

Eigen::MatrixXd PerturbationBasis::matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::Map<const Eigen::VectorXd> p(lower_.data(), n);
  Eigen::MatrixXd b = p * Eigen::RowVectorXd::Ones(n);
  b.diagonal().array() += tau_;
  return b;
}

Eigen::VectorXd PerturbationBasis::column(std::size_t j) const {
  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(lower_.data(), static_cast<Eigen::Index>(size()));
  c[static_cast<Eigen::Index>(j)] += tau_;
  return c;
}

PerturbationBasis basis_matrix(std::vector<double> lower_bounds) {
  return PerturbationBasis(std::move(lower_bounds));
}

RmPlusState::RmPlusState(Eigen::Index num_vertices, Eigen::Index ambient_dim, RmPlusOptions opts)
    : regrets(Eigen::VectorXd::Zero(num_vertices)),
      average(Eigen::VectorXd::Zero(ambient_dim)),
      options(opts) {}

Eigen::VectorXd vertex_weights(const Eigen::VectorXd& regrets) {
  Eigen::VectorXd w = regrets.cwiseMax(0.0);
  const double lambda = w.sum();
  if (lambda > 0.0) return w / lambda;
  return Eigen::VectorXd::Constant(regrets.size(), 1.0 / static_cast<double>(regrets.size()));
}

Eigen::VectorXd rm_plus_step(const RmPlusState& state, const Eigen::MatrixXd& vertices) {
  return vertices * vertex_weights(state.regrets);
}

namespace {

void fold_into_average(RmPlusState& state, const Eigen::VectorXd& action) {
  ++state.iterations;
  const auto t = static_cast<double>(state.iterations);
  if (state.options.averaging == Averaging::kUniform) {
    state.average = ((t - 1.0) / t) * state.average + (1.0 / t) * action;
  } else {
    state.weight_sum += t;
    state.average += (t / state.weight_sum) * (action - state.average);
  }
}

}  // namespace

void observe_and_update(RmPlusState& state, const Eigen::VectorXd& action,
                        const Eigen::VectorXd& vertex_regrets) {
  state.regrets += vertex_regrets;
  if (state.options.clamp) state.regrets = state.regrets.cwiseMax(0.0);
  fold_into_average(state, action);
}

Eigen::VectorXd perturbed_action(const RmPlusState& state, const PerturbationBasis& basis) {
  Eigen::VectorXd x(state.regrets.size());
  kernel::perturbed_regret_match({state.regrets.data(), static_cast<std::size_t>(state.regrets.size())},
                                 basis.lower_bounds(), basis.tau(),
                                 {x.data(), static_cast<std::size_t>(x.size())});
  return x;
}

Eigen::VectorXd perturbed_step_and_update(RmPlusState& state, const PerturbationBasis& basis,
                                          const Eigen::VectorXd& pure_regrets) {
  Eigen::VectorXd x = perturbed_action(state, basis);
  kernel::perturbed_regret_update(
      {state.regrets.data(), static_cast<std::size_t>(state.regrets.size())},
      {pure_regrets.data(), static_cast<std::size_t>(pure_regrets.size())}, basis.lower_bounds(),
      basis.tau(), state.options.clamp);
  fold_into_average(state, x);
  return x;
}

double regret_bound(double gamma, std::size_t num_vertices, std::int64_t iterations) {
  return gamma * std::sqrt(static_cast<double>(num_vertices)) /
         std::sqrt(static_cast<double>(iterations));
}

double RegretMeter::max_average_regret() const {
  if (count_ == 0) return 0.0;
  return sums_.maxCoeff() / static_cast<double>(count_);
}

double measured_regret(std::span<const Eigen::VectorXd> history) {
  if (history.empty()) throw std::invalid_argument("measured_regret needs a nonempty history");
  RegretMeter meter(history.front().size());
  for (const auto& phi : history) meter.add(phi);
  return meter.max_average_regret();
}

namespace kernel {

void perturbed_regret_match(std::span<const double> regrets, std::span<const double> lower,
                            double tau, std::span<double> out) {
  const std::size_t n = regrets.size();
  double lambda = 0.0;
  for (double r : regrets) lambda += std::max(r, 0.0);
  if (lambda > 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lower[i] + tau * (std::max(regrets[i], 0.0) / lambda);
  } else {
    const double share = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lower[i] + tau * share;
  }
}

void perturbed_regret_update(std::span<double> regrets, std::span<const double> pure_regrets,
                             std::span<const double> lower, double tau, bool clamp) {
  double shared = 0.0;  // p^T phi
  for (std::size_t j = 0; j < pure_regrets.size(); ++j) shared += lower[j] * pure_regrets[j];
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    const double r = regrets[i] + (tau * pure_regrets[i] + shared);
    regrets[i] = clamp ? std::max(r, 0.0) : r;
  }
}

}  // namespace kernel

std::vector<std::int64_t> power_of_two_checkpoints(std::int64_t iterations) {
  std::vector<std::int64_t> points;
  for (std::int64_t t = 1; t <= iterations; t *= 2) points.push_back(t);
  if (points.empty() || points.back() != iterations) points.push_back(iterations);
  return points;
}

std::vector<SelfPlayCheckpoint> self_play(const GeneralizedNFG& game, const SelfPlayOptions& options) {
  game.check();
  const UtilityRange range = utility_range(game);
  const auto n = game.num_row_vertices();
  const auto m = game.num_col_vertices();

  RmPlusState row(n, game.row_vertices.rows(), options.rm);
  RmPlusState col(m, game.col_vertices.rows(), options.rm);
  RegretMeter row_meter(n);
  RegretMeter col_meter(m);

  std::vector<std::int64_t> checkpoints =
      options.checkpoints.empty() ? power_of_two_checkpoints(options.iterations) : options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  auto next_checkpoint = checkpoints.begin();

  std::vector<SelfPlayCheckpoint> out;
  for (std::int64_t t = 1; t <= options.iterations; ++t) {
    const Eigen::VectorXd x = rm_plus_step(row, game.row_vertices);
    Eigen::VectorXd y = rm_plus_step(col, game.col_vertices);

    const Eigen::VectorXd row_phi = game.row_vertex_values(y).array() - game.value(x, y);
    observe_and_update(row, x, row_phi);
    row_meter.add(row_phi);

    const Eigen::VectorXd x_seen = options.alternating ? rm_plus_step(row, game.row_vertices) : x;
    const double v = game.value(x_seen, y);
    const Eigen::VectorXd col_phi = (-game.col_vertex_values(x_seen)).array() + v;
    observe_and_update(col, y, col_phi);
    col_meter.add(col_phi);

    while (next_checkpoint != checkpoints.end() && *next_checkpoint < t) ++next_checkpoint;
    if (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
      SelfPlayCheckpoint cp;
      cp.iteration = t;
      cp.regret_p1 = row_meter.max_average_regret();
      cp.regret_p2 = col_meter.max_average_regret();
      cp.bound_p1 = regret_bound(range.gamma, static_cast<std::size_t>(n), t);
      cp.bound_p2 = regret_bound(range.gamma, static_cast<std::size_t>(m), t);
      cp.exploitability = exploitability(game, row.average, col.average);
      cp.average_x = row.average;
      cp.average_y = col.average;
      out.push_back(std::move(cp));
      ++next_checkpoint;
    }
  }
  return out;
}

}  // namespace pcfr
