#include "pcfr/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace pcfr {

std::vector<double> node_values(const ExtensiveFormGame& game, const BehavioralStrategy& profile) {
  // Children always have larger ids than their parent.
  std::vector<double> values(game.num_nodes(), 0.0);
  for (auto id = static_cast<NodeId>(game.num_nodes()) - 1; id >= 0; --id) {
    const Node& node = game.node(id);
    const auto k = static_cast<std::size_t>(id);
    switch (node.kind) {
      case NodeKind::kTerminal:
        values[k] = node.utility;
        break;
      case NodeKind::kChance: {
        auto probs = game.chance_probabilities(id);
        double v = 0.0;
        for (int a = 0; a < node.num_edges; ++a) {
          v += probs[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(game.child(id, a))];
        }
        values[k] = v;
        break;
      }
      case NodeKind::kDecision: {
        auto probs = profile.at(game.infoset(node.infoset));
        double v = 0.0;
        for (int a = 0; a < node.num_edges; ++a) {
          v += probs[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(game.child(id, a))];
        }
        values[k] = v;
        break;
      }
    }
  }
  return values;
}

double expected_value(const ExtensiveFormGame& game, const BehavioralStrategy& profile) {
  return node_values(game, profile)[static_cast<std::size_t>(game.root())];
}

namespace {

/// Best-response dynamic program over a region of the tree rooted at a set
/// of start nodes. Scratch arrays are sized once and reset through a touched
/// list so local solves below single infosets stay cheap.
class ResponseEngine {
 public:
  ResponseEngine(const ExtensiveFormGame& game, const BehavioralStrategy& profile, int responder,
                 const Perturbation* feasible)
      : game_(game),
        responder_(responder),
        sign_(payoff_sign(responder)),
        feasible_(feasible),
        strategy_(profile),
        weight_(game.num_nodes(), 0.0),
        value_(game.num_nodes(), 0.0),
        known_(game.num_nodes(), 0),
        in_region_(game.num_nodes(), 0) {}

  void solve(std::span<const NodeId> starts, std::span<const double> start_weights) {
    reset();
    std::vector<InfosetId> infosets;
    std::vector<char> seen(game_.num_infosets(), 0);
    std::vector<NodeId> stack;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      weight_[static_cast<std::size_t>(starts[i])] = start_weights[i];
      stack.push_back(starts[i]);
    }
    while (!stack.empty()) {
      const NodeId id = stack.back();
      stack.pop_back();
      touched_.push_back(id);
      in_region_[static_cast<std::size_t>(id)] = 1;
      const Node& node = game_.node(id);
      const double w = weight_[static_cast<std::size_t>(id)];
      if (node.kind == NodeKind::kTerminal) continue;
      std::span<const double> probs;
      if (node.kind == NodeKind::kChance) {
        probs = game_.chance_probabilities(id);
      } else {
        probs = strategy_.at(game_.infoset(node.infoset));
        if (node.player == responder_ && !seen[static_cast<std::size_t>(node.infoset)]) {
          seen[static_cast<std::size_t>(node.infoset)] = 1;
          infosets.push_back(node.infoset);
        }
      }
      const bool own = node.kind == NodeKind::kDecision && node.player == responder_;
      for (int a = 0; a < node.num_edges; ++a) {
        const NodeId c = game_.child(id, a);
        weight_[static_cast<std::size_t>(c)] = own ? w : w * probs[static_cast<std::size_t>(a)];
        stack.push_back(c);
      }
    }

    std::stable_sort(infosets.begin(), infosets.end(), [&](InfosetId a, InfosetId b) {
      return game_.infoset(a).depth > game_.infoset(b).depth;
    });
    std::vector<double> q;
    for (InfosetId id : infosets) {
      const Infoset& info = game_.infoset(id);
      // Unreached infosets still get a response, judged with equal node
      // weights; this leaves the value unchanged.
      double total = 0.0;
      for (NodeId h : info.nodes) {
        if (in_region_[static_cast<std::size_t>(h)]) total += weight_[static_cast<std::size_t>(h)];
      }
      q.assign(info.num_actions(), 0.0);
      for (NodeId h : info.nodes) {
        if (!in_region_[static_cast<std::size_t>(h)]) continue;
        const double w = total > 0.0 ? weight_[static_cast<std::size_t>(h)] : 1.0;
        for (std::size_t a = 0; a < q.size(); ++a) {
          q[a] += w * value(game_.child(h, static_cast<int>(a)));
        }
      }
      const auto best = static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
      auto out = strategy_.at(info);
      if (feasible_ != nullptr) {
        auto lower = feasible_->at(info);
        std::copy(lower.begin(), lower.end(), out.begin());
        out[best] += feasible_->tau(info);
      } else {
        std::fill(out.begin(), out.end(), 0.0);
        out[best] = 1.0;
      }
    }
  }

  // Responder payoff below `id` once the responder's choices are fixed.
  double value(NodeId id) {
    const auto k = static_cast<std::size_t>(id);
    if (known_[k]) return value_[k];
    const Node& node = game_.node(id);
    double v = 0.0;
    if (node.kind == NodeKind::kTerminal) {
      v = sign_ * node.utility;
    } else {
      auto probs = node.kind == NodeKind::kChance ? game_.chance_probabilities(id)
                                                  : std::span<const double>(strategy_.at(game_.infoset(node.infoset)));
      for (int a = 0; a < node.num_edges; ++a) {
        const double p = probs[static_cast<std::size_t>(a)];
        if (p != 0.0) v += p * value(game_.child(id, a));
      }
    }
    value_[k] = v;
    known_[k] = 1;
    return v;
  }

  double weight(NodeId id) const { return weight_[static_cast<std::size_t>(id)]; }
  const BehavioralStrategy& strategy() const { return strategy_; }

 private:
  void reset() {
    for (NodeId id : touched_) {
      const auto k = static_cast<std::size_t>(id);
      weight_[k] = 0.0;
      value_[k] = 0.0;
      known_[k] = 0;
      in_region_[k] = 0;
    }
    touched_.clear();
  }

  const ExtensiveFormGame& game_;
  int responder_;
  double sign_;
  const Perturbation* feasible_;
  BehavioralStrategy strategy_;
  std::vector<double> weight_;
  std::vector<double> value_;
  std::vector<char> known_;
  std::vector<char> in_region_;
  std::vector<NodeId> touched_;
};

}  // namespace

BestResponse best_response(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                           int responder, const Perturbation* feasible) {
  ResponseEngine engine(game, profile, responder, feasible);
  const NodeId root = game.root();
  const double one = 1.0;
  engine.solve({&root, 1}, {&one, 1});
  const double v = engine.value(root);
  return {engine.strategy(), v};
}

PlayerRegrets exploitability_components(const ExtensiveFormGame& game,
                                        const BehavioralStrategy& profile,
                                        const Perturbation* feasible) {
  const double value = expected_value(game, profile);
  const double br1 = best_response(game, profile, 0, feasible).value;
  const double br2 = best_response(game, profile, 1, feasible).value;
  return {br1 - value, br2 + value};
}

double exploitability(const ExtensiveFormGame& game, const BehavioralStrategy& profile) {
  return exploitability_components(game, profile).sum();
}

MaxInfosetRegret max_infoset_regret(const ExtensiveFormGame& game, const BehavioralStrategy& profile) {
  const std::vector<double> on_policy = node_values(game, profile);
  MaxInfosetRegret result;
  result.per_infoset.resize(game.num_infosets());
  bool first = true;

  for (int player = 0; player < kNumPlayers; ++player) {
    const double sign = payoff_sign(player);
    ResponseEngine global(game, profile, player, nullptr);
    const NodeId root = game.root();
    const double one = 1.0;
    global.solve({&root, 1}, {&one, 1});
    ResponseEngine local(game, profile, player, nullptr);

    for (InfosetId id : game.infosets_of(player)) {
      const Infoset& info = game.infoset(id);
      double reach = 0.0;
      for (NodeId h : info.nodes) reach += global.weight(h);

      double regret = 0.0;
      if (reach > 0.0) {
        for (NodeId h : info.nodes) {
          const double w = global.weight(h);
          if (w != 0.0) regret += w * (global.value(h) - sign * on_policy[static_cast<std::size_t>(h)]);
        }
        regret /= reach;
      } else {
        const std::vector<double> uniform(info.nodes.size(), 1.0 / static_cast<double>(info.nodes.size()));
        local.solve(info.nodes, uniform);
        for (std::size_t i = 0; i < info.nodes.size(); ++i) {
          const NodeId h = info.nodes[i];
          regret += uniform[i] * (local.value(h) - sign * on_policy[static_cast<std::size_t>(h)]);
        }
      }
      result.per_infoset[static_cast<std::size_t>(id)] = {id, reach, regret};
      if (first || regret > result.value) {
        result.value = regret;
        result.infoset = id;
        first = false;
      }
    }
  }
  return result;
}

BehavioralStrategy normalize_cumulative(const ExtensiveFormGame& game, std::span<const double> cumulative,
                                        const Perturbation* perturbation) {
  BehavioralStrategy strategy = perturbation ? BehavioralStrategy::uniform(game, *perturbation)
                                             : BehavioralStrategy::uniform(game);
  for (const Infoset& info : game.infosets()) {
    auto sums = cumulative.subspan(static_cast<std::size_t>(info.action_offset), info.num_actions());
    const double total = std::accumulate(sums.begin(), sums.end(), 0.0);
    if (!(total > 0.0)) continue;
    auto out = strategy.at(info);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = sums[a] / total;
  }
  return strategy;
}

PlayerRegrets perturbed_game_regret(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                                    const Perturbation& perturbation) {
  return exploitability_components(game, profile, &perturbation);
}

PlayerRegrets perturbed_game_regret(const ExtensiveFormGame& game, const PlayHistory& history,
                                    const Perturbation& perturbation) {
  double regret[kNumPlayers] = {0.0, 0.0};
  for (int player = 0; player < kNumPlayers; ++player) {
    const std::int64_t rounds = history.rounds[player];
    if (rounds == 0) continue;
    const BehavioralStrategy faced =
        normalize_cumulative(game, history.faced_cumulative[player], &perturbation);
    const double best = best_response(game, faced, player, &perturbation).value;
    regret[player] = best - history.payoff_sum[player] / static_cast<double>(rounds);
  }
  return {regret[0], regret[1]};
}

EvaluationReport evaluate(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                          const Perturbation* perturbation) {
  EvaluationReport report;
  report.value_p1 = expected_value(game, profile);
  report.br_value_p1 = best_response(game, profile, 0).value;
  report.br_value_p2 = best_response(game, profile, 1).value;
  report.epsilon = {report.br_value_p1 - report.value_p1, report.br_value_p2 + report.value_p1};
  report.exploitability = report.epsilon.sum();
  report.perturbed_epsilon =
      perturbation ? exploitability_components(game, profile, perturbation) : report.epsilon;
  report.infoset_regret = max_infoset_regret(game, profile);
  return report;
}

}  // namespace pcfr
