#include "pcfr/sequence_form.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace pcfr {

namespace {

int parent_sequence(const ExtensiveFormGame& game, const SequenceForm& form, const Infoset& info) {
  if (info.parent_infoset == kNoInfoset) return 0;
  const Infoset& parent = game.infoset(info.parent_infoset);
  return form.sequence_index[static_cast<std::size_t>(parent.action_offset + info.parent_action)];
}

using Plan = std::vector<int>;

class PlanEnumerator {
 public:
  PlanEnumerator(const ExtensiveFormGame& game, const SequenceForm& form, int player)
      : game_(game), form_(form), children_(form.num_sequences(player)) {
    for (InfosetId id : game.infosets_of(player)) {
      const Infoset& info = game.infoset(id);
      children_[static_cast<std::size_t>(parent_sequence(game, form, info))].push_back(id);
    }
  }

  double count(int seq) const {
    double total = 1.0;
    for (InfosetId id : children_[static_cast<std::size_t>(seq)]) {
      const Infoset& info = game_.infoset(id);
      double options = 0.0;
      for (std::size_t a = 0; a < info.num_actions(); ++a) options += count(index(info, a));
      total *= options;
    }
    return total;
  }

  std::vector<Plan> plans(int seq) const {
    std::vector<Plan> acc{Plan{}};
    for (InfosetId id : children_[static_cast<std::size_t>(seq)]) {
      const Infoset& info = game_.infoset(id);
      std::vector<Plan> local;
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        const int s = index(info, a);
        for (Plan& tail : plans(s)) {
          tail.push_back(s);
          local.push_back(std::move(tail));
        }
      }
      std::vector<Plan> next;
      next.reserve(acc.size() * local.size());
      for (const Plan& head : acc) {
        for (const Plan& tail : local) {
          Plan joined = head;
          joined.insert(joined.end(), tail.begin(), tail.end());
          next.push_back(std::move(joined));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

 private:
  int index(const Infoset& info, std::size_t a) const {
    return form_.sequence_index[static_cast<std::size_t>(info.action_offset) + a];
  }

  const ExtensiveFormGame& game_;
  const SequenceForm& form_;
  std::vector<std::vector<InfosetId>> children_;
};

Eigen::MatrixXd enumerate_vertices(const ExtensiveFormGame& game, const SequenceForm& form,
                                   int player, std::size_t cap) {
  PlanEnumerator enumerator(game, form, player);
  const double count = enumerator.count(0);
  if (count > static_cast<double>(cap)) {
    throw std::length_error("player " + std::to_string(player + 1) + " has " +
                            std::to_string(count) + " pure realization plans (cap " +
                            std::to_string(cap) + ")");
  }
  const std::vector<Plan> plans = enumerator.plans(0);
  Eigen::MatrixXd vertices =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(form.num_sequences(player)),
                            static_cast<Eigen::Index>(plans.size()));
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    vertices(0, col) = 1.0;
    for (int s : plans[k]) vertices(s, col) = 1.0;
  }
  return vertices;
}

}  // namespace

Eigen::VectorXd SequenceForm::realization_plan(const ExtensiveFormGame& game,
                                               const BehavioralStrategy& strategy,
                                               int player) const {
  Eigen::VectorXd plan = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_sequences(player)));
  plan[0] = 1.0;
  for (InfosetId id : game.infosets_of(player)) {
    const Infoset& info = game.infoset(id);
    const double reach = plan[parent_sequence(game, *this, info)];
    auto probs = strategy.at(info);
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      plan[sequence_index[static_cast<std::size_t>(info.action_offset) + a]] = reach * probs[a];
    }
  }
  return plan;
}

BehavioralStrategy SequenceForm::behavioral_from_plans(const ExtensiveFormGame& game,
                                                       const Eigen::VectorXd& x,
                                                       const Eigen::VectorXd& y) const {
  BehavioralStrategy strategy = BehavioralStrategy::uniform(game);
  for (int player = 0; player < kNumPlayers; ++player) {
    const Eigen::VectorXd& plan = player == 0 ? x : y;
    for (InfosetId id : game.infosets_of(player)) {
      const Infoset& info = game.infoset(id);
      const double reach = plan[parent_sequence(game, *this, info)];
      if (!(reach > 0.0)) continue;
      auto out = strategy.at(info);
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        out[a] = plan[sequence_index[static_cast<std::size_t>(info.action_offset) + a]] / reach;
      }
    }
  }
  return strategy;
}

SequenceForm to_generalized_nfg(const ExtensiveFormGame& game, const SequenceFormOptions& options) {
  require_valid(game);
  SequenceForm form;
  form.sequence_index.assign(game.total_actions(), 0);

  for (int player = 0; player < kNumPlayers; ++player) {
    form.sequence_infoset[player].push_back(kNoInfoset);
    form.sequence_action[player].push_back(-1);
    for (InfosetId id : game.infosets_of(player)) {
      const Infoset& info = game.infoset(id);
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        form.sequence_index[static_cast<std::size_t>(info.action_offset) + a] =
            static_cast<int>(form.sequence_infoset[player].size());
        form.sequence_infoset[player].push_back(id);
        form.sequence_action[player].push_back(static_cast<int>(a));
      }
    }
    if (form.num_sequences(player) > options.max_sequences) {
      throw std::length_error("player " + std::to_string(player + 1) + " has " +
                              std::to_string(form.num_sequences(player)) + " sequences (cap " +
                              std::to_string(options.max_sequences) + ")");
    }

    const auto rows = static_cast<Eigen::Index>(1 + game.infosets_of(player).size());
    const auto cols = static_cast<Eigen::Index>(form.num_sequences(player));
    Eigen::MatrixXd& e = form.constraints[player];
    e = Eigen::MatrixXd::Zero(rows, cols);
    form.rhs[player] = Eigen::VectorXd::Zero(rows);
    e(0, 0) = 1.0;
    form.rhs[player][0] = 1.0;
    Eigen::Index row = 1;
    for (InfosetId id : game.infosets_of(player)) {
      const Infoset& info = game.infoset(id);
      e(row, parent_sequence(game, form, info)) -= 1.0;
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        e(row, form.sequence_index[static_cast<std::size_t>(info.action_offset) + a]) += 1.0;
      }
      ++row;
    }
  }

  Eigen::MatrixXd payoff = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(form.num_sequences(0)),
                                                 static_cast<Eigen::Index>(form.num_sequences(1)));
  struct Frame {
    NodeId node;
    double chance;
    int seq[kNumPlayers];
  };
  std::vector<Frame> stack{{game.root(), 1.0, {0, 0}}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Node& node = game.node(f.node);
    switch (node.kind) {
      case NodeKind::kTerminal:
        payoff(f.seq[0], f.seq[1]) += f.chance * node.utility;
        break;
      case NodeKind::kChance: {
        auto probs = game.chance_probabilities(f.node);
        for (int a = 0; a < node.num_edges; ++a) {
          stack.push_back({game.child(f.node, a), f.chance * probs[static_cast<std::size_t>(a)],
                           {f.seq[0], f.seq[1]}});
        }
        break;
      }
      case NodeKind::kDecision: {
        const Infoset& info = game.infoset(node.infoset);
        for (int a = 0; a < node.num_edges; ++a) {
          Frame next{game.child(f.node, a), f.chance, {f.seq[0], f.seq[1]}};
          next.seq[node.player] =
              form.sequence_index[static_cast<std::size_t>(info.action_offset + a)];
          stack.push_back(next);
        }
        break;
      }
    }
  }

  form.nfg.payoff = std::move(payoff);
  if (options.enumerate_vertices) {
    form.nfg.row_vertices = enumerate_vertices(game, form, 0, options.max_vertices);
    form.nfg.col_vertices = enumerate_vertices(game, form, 1, options.max_vertices);
  } else {
    form.nfg.row_vertices = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(form.num_sequences(0)), 0);
    form.nfg.col_vertices = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(form.num_sequences(1)), 0);
  }
  return form;
}

}  // namespace pcfr
