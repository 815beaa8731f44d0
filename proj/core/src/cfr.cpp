#include "pcfr/cfr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcfr {

namespace {

// Product of `player`'s own action probabilities on the path to each of its
// infosets, indexed by infoset id. Parents precede children in infosets_of.
void own_reach(const ExtensiveFormGame& game, const BehavioralStrategy& strategy, int player,
               std::vector<double>& reach) {
  for (InfosetId id : game.infosets_of(player)) {
    const Infoset& info = game.infoset(id);
    double r = 1.0;
    if (info.parent_infoset != kNoInfoset) {
      const Infoset& parent = game.infoset(info.parent_infoset);
      r = reach[static_cast<std::size_t>(info.parent_infoset)] *
          strategy.at(parent)[static_cast<std::size_t>(info.parent_action)];
    }
    reach[static_cast<std::size_t>(id)] = r;
  }
}

}  // namespace

CfrSolver::CfrSolver(const ExtensiveFormGame& game, Perturbation perturbation, CfrOptions options)
    : game_(game),
      perturbation_(std::move(perturbation)),
      options_(options),
      regrets_(game.total_actions(), 0.0),
      pending_(game.total_actions(), 0.0),
      cumulative_(game.total_actions(), 0.0),
      reach_scratch_(game.num_infosets(), 0.0),
      play_(game.total_actions()),
      rng_(options.seed) {
  require_valid(game);
  if (perturbation_.flat().size() != game.total_actions()) {
    throw std::invalid_argument("perturbation does not match game '" + game.name() + "'");
  }
  current_ = BehavioralStrategy::uniform(game, perturbation_);
}

std::span<const double> CfrSolver::regret_match_infoset(const Infoset& info) {
  auto out = current_.at(info);
  kernel::perturbed_regret_match(regrets(info), perturbation_.at(info), perturbation_.tau(info), out);
  return out;
}

double CfrSolver::traverse(NodeId id, int player, double reach1, double reach2) {
  const Node& node = game_.node(id);
  switch (node.kind) {
    case NodeKind::kTerminal:
      return node.utility;

    case NodeKind::kChance: {
      auto probs = game_.chance_probabilities(id);
      if (options_.chance == ChanceMode::kSample) {
        std::discrete_distribution<int> pick(probs.begin(), probs.end());
        return traverse(game_.child(id, pick(rng_)), player, reach1, reach2);
      }
      double v = 0.0;
      for (int a = 0; a < node.num_edges; ++a) {
        const double p = probs[static_cast<std::size_t>(a)];
        const NodeId c = game_.child(id, a);
        v += p * (player == 0 ? traverse(c, player, reach1, reach2 * p)
                              : traverse(c, player, reach1 * p, reach2));
      }
      return v;
    }

    case NodeKind::kDecision:
      break;
  }

  const Infoset& info = game_.infoset(node.infoset);
  auto x = current_.at(info);
  if (node.player != player) {
    double v = 0.0;
    for (int a = 0; a < node.num_edges; ++a) {
      const double p = x[static_cast<std::size_t>(a)];
      const NodeId c = game_.child(id, a);
      v += p * (node.player == 0 ? traverse(c, player, reach1 * p, reach2)
                                 : traverse(c, player, reach1, reach2 * p));
    }
    return v;
  }

  // Counterfactual action values; commit() subtracts the infoset's value.
  const double weight = payoff_sign(player) * (player == 0 ? reach2 : reach1);
  double* cfv = pending_.data() + info.action_offset;
  double v = 0.0;
  for (int a = 0; a < node.num_edges; ++a) {
    const double p = x[static_cast<std::size_t>(a)];
    const NodeId c = game_.child(id, a);
    const double va = player == 0 ? traverse(c, player, reach1 * p, reach2)
                                  : traverse(c, player, reach1, reach2 * p);
    cfv[a] += weight * va;
    v += p * va;
  }
  return v;
}

void CfrSolver::commit(int player) {
  for (InfosetId id : game_.infosets_of(player)) {
    const Infoset& info = game_.infoset(id);
    std::span<double> r(regrets_.data() + info.action_offset, info.num_actions());
    std::span<double> phi(pending_.data() + info.action_offset, info.num_actions());
    auto x = current_.at(info);
    double ev = 0.0;
    for (std::size_t a = 0; a < phi.size(); ++a) ev += x[a] * phi[a];
    for (double& value : phi) value -= ev;
    kernel::perturbed_regret_update(r, phi, perturbation_.at(info), perturbation_.tau(info));
    std::fill(phi.begin(), phi.end(), 0.0);
    regret_match_infoset(info);
  }
}

void CfrSolver::accumulate_average(int player, double weight) {
  own_reach(game_, current_, player, reach_scratch_);
  for (InfosetId id : game_.infosets_of(player)) {
    const Infoset& info = game_.infoset(id);
    const double w = weight * reach_scratch_[static_cast<std::size_t>(id)];
    auto x = current_.at(info);
    double* sum = cumulative_.data() + info.action_offset;
    for (std::size_t a = 0; a < x.size(); ++a) sum[a] += w * x[a];
  }
}

void CfrSolver::record_faced(int player, double root_value) {
  const int opp = opponent_of(player);
  own_reach(game_, current_, opp, reach_scratch_);
  std::vector<double>& faced = play_.faced_cumulative[player];
  for (InfosetId id : game_.infosets_of(opp)) {
    const Infoset& info = game_.infoset(id);
    const double w = reach_scratch_[static_cast<std::size_t>(id)];
    auto x = current_.at(info);
    double* sum = faced.data() + info.action_offset;
    for (std::size_t a = 0; a < x.size(); ++a) sum[a] += w * x[a];
  }
  play_.payoff_sum[player] += payoff_sign(player) * root_value;
  ++play_.rounds[player];
}

IterationRecord CfrSolver::iterate() {
  ++iteration_;
  const double weight =
      options_.averaging == Averaging::kLinear ? static_cast<double>(iteration_) : 1.0;

  IterationRecord record;
  record.iteration = iteration_;
  const NodeId root = game_.root();
  if (options_.schedule == UpdateSchedule::kAlternating) {
    for (int player = 0; player < kNumPlayers; ++player) {
      accumulate_average(player, weight);
      const double v = traverse(root, player, 1.0, 1.0);
      ++traversals_;
      record_faced(player, v);
      record.root_value[player] = v;
      commit(player);
    }
  } else {
    for (int player = 0; player < kNumPlayers; ++player) {
      accumulate_average(player, weight);
      const double v = traverse(root, player, 1.0, 1.0);
      ++traversals_;
      record_faced(player, v);
      record.root_value[player] = v;
    }
    for (int player = 0; player < kNumPlayers; ++player) commit(player);
  }
  record.traversals = traversals_;
  history_.push_back(record);
  return record;
}

void CfrSolver::run(std::int64_t iterations) {
  for (std::int64_t i = 0; i < iterations; ++i) iterate();
}

BehavioralStrategy CfrSolver::average_strategy() const {
  return normalize_cumulative(game_, cumulative_, &perturbation_);
}

double cfr_bound(double gamma, std::size_t infoset_count, std::size_t max_actions,
                 std::int64_t iterations) {
  if (iterations < 1) throw std::invalid_argument("cfr_bound needs T >= 1");
  return gamma * static_cast<double>(infoset_count) * std::sqrt(static_cast<double>(max_actions)) /
         std::sqrt(static_cast<double>(iterations));
}

double cfr_bound(const ExtensiveFormGame& game, int player, std::int64_t iterations) {
  return cfr_bound(utility_range(game).gamma, game.infosets_of(player).size(),
                   game.max_actions(player), iterations);
}

}  // namespace pcfr
