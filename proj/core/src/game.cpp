#include "pcfr/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pcfr {

namespace {

constexpr double kChanceSumTolerance = 1e-12;

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::size_t ExtensiveFormGame::max_actions(int player) const {
  std::size_t best = 0;
  for (InfosetId id : infosets_of(player)) best = std::max(best, infoset(id).num_actions());
  return best;
}

InfosetId ExtensiveFormGame::find_infoset(int player, std::string_view key) const {
  for (InfosetId id : infosets_of(player)) {
    if (infoset(id).key == key) return id;
  }
  return kNoInfoset;
}

GameBuilder::GameBuilder(std::string name) { game_.name_ = std::move(name); }

NodeId GameBuilder::add_node(NodeId parent, Node node, std::vector<std::string> labels,
                             std::vector<double> probs) {
  const auto id = static_cast<NodeId>(game_.nodes_.size());
  if (parent == kNoNode) {
    if (id != 0) throw std::invalid_argument("game already has a root");
  } else {
    if (parent < 0 || parent >= id) throw std::invalid_argument("unknown parent node");
    Node& p = game_.nodes_[static_cast<std::size_t>(parent)];
    auto& filled = filled_[static_cast<std::size_t>(parent)];
    if (filled >= p.num_edges) {
      throw std::invalid_argument("node " + std::to_string(parent) + " has no free action slot");
    }
    node.parent = parent;
    node.parent_action = filled;
    game_.children_[static_cast<std::size_t>(p.first_edge + filled)] = id;
    ++filled;
  }

  node.first_edge = static_cast<std::int32_t>(game_.children_.size());
  node.num_edges = static_cast<std::int32_t>(labels.size());
  probs.resize(labels.size(), 0.0);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    game_.children_.push_back(kNoNode);
    game_.edge_probs_.push_back(probs[a]);
    game_.edge_labels_.push_back(std::move(labels[a]));
  }
  game_.nodes_.push_back(node);
  filled_.push_back(0);
  return id;
}

NodeId GameBuilder::add_decision(NodeId parent, int player, std::string_view infoset_key,
                                 std::vector<std::string> actions) {
  Node node;
  node.kind = NodeKind::kDecision;
  node.player = player;
  if (player == 0 || player == 1) {
    auto& index = infoset_index_[player];
    auto [it, inserted] =
        index.try_emplace(std::string(infoset_key), static_cast<InfosetId>(game_.infosets_.size()));
    if (inserted) {
      Infoset info;
      info.player = player;
      info.key = std::string(infoset_key);
      info.actions = actions;
      game_.infosets_.push_back(std::move(info));
    }
    node.infoset = it->second;
  }
  const NodeId id = add_node(parent, node, std::move(actions), {});
  if (node.infoset != kNoInfoset) {
    game_.infosets_[static_cast<std::size_t>(node.infoset)].nodes.push_back(id);
  }
  return id;
}

NodeId GameBuilder::add_chance(NodeId parent, std::vector<std::string> outcomes,
                               std::vector<double> probabilities) {
  if (outcomes.size() != probabilities.size()) {
    throw std::invalid_argument("chance node needs one probability per outcome");
  }
  Node node;
  node.kind = NodeKind::kChance;
  return add_node(parent, node, std::move(outcomes), std::move(probabilities));
}

NodeId GameBuilder::add_terminal(NodeId parent, double utility) {
  Node node;
  node.kind = NodeKind::kTerminal;
  node.utility = utility;
  return add_node(parent, node, {}, {});
}

ExtensiveFormGame GameBuilder::build() && {
  ExtensiveFormGame& g = game_;

  std::size_t offset = 0;
  for (Infoset& info : g.infosets_) {
    info.action_offset = static_cast<std::int32_t>(offset);
    offset += info.actions.size();
  }
  g.total_actions_ = offset;

  // Intern own sequences top-down. Node ids are created parent-first, so a
  // single forward sweep sees every parent before its children.
  const std::size_t n = g.nodes_.size();
  std::vector<std::int32_t> seq_of[kNumPlayers];
  for (auto& v : seq_of) v.assign(n, 0);
  std::map<std::tuple<std::int32_t, InfosetId, int>, std::int32_t> interned;
  std::vector<std::pair<InfosetId, int>> last_pair{{kNoInfoset, -1}};
  std::vector<int> seq_length{0};
  g.own_sequence_.assign(n, 0);

  for (std::size_t id = 0; id < n; ++id) {
    const Node& node = g.nodes_[id];
    if (node.kind == NodeKind::kTerminal) g.terminals_.push_back(static_cast<NodeId>(id));
    if (node.parent != kNoNode) {
      const Node& parent = g.nodes_[static_cast<std::size_t>(node.parent)];
      for (int p = 0; p < kNumPlayers; ++p) {
        std::int32_t seq = seq_of[p][static_cast<std::size_t>(node.parent)];
        if (parent.kind == NodeKind::kDecision && parent.player == p &&
            parent.infoset != kNoInfoset) {
          auto key = std::make_tuple(seq, parent.infoset, node.parent_action);
          auto [it, inserted] =
              interned.try_emplace(key, static_cast<std::int32_t>(last_pair.size()));
          if (inserted) {
            last_pair.emplace_back(parent.infoset, node.parent_action);
            seq_length.push_back(seq_length[static_cast<std::size_t>(seq)] + 1);
          }
          seq = it->second;
        }
        seq_of[p][id] = seq;
      }
    }
    if (node.kind == NodeKind::kDecision && (node.player == 0 || node.player == 1)) {
      g.own_sequence_[id] = seq_of[node.player][id];
    }
  }

  for (Infoset& info : g.infosets_) {
    const std::int32_t seq = g.own_sequence_[static_cast<std::size_t>(info.nodes.front())];
    info.parent_infoset = last_pair[static_cast<std::size_t>(seq)].first;
    info.parent_action = last_pair[static_cast<std::size_t>(seq)].second;
    info.depth = seq_length[static_cast<std::size_t>(seq)];
  }

  for (int p = 0; p < kNumPlayers; ++p) {
    auto& list = g.player_infosets_[p];
    for (InfosetId id = 0; id < static_cast<InfosetId>(g.infosets_.size()); ++id) {
      if (g.infosets_[static_cast<std::size_t>(id)].player == p) list.push_back(id);
    }
    std::stable_sort(list.begin(), list.end(), [&](InfosetId a, InfosetId b) {
      return g.infosets_[static_cast<std::size_t>(a)].depth <
             g.infosets_[static_cast<std::size_t>(b)].depth;
    });
  }
  return std::move(game_);
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  std::ostringstream out;
  out << issues.size() << " issue(s):";
  for (const auto& issue : issues) out << "\n  " << issue.message;
  return out.str();
}

ValidationReport validate(const ExtensiveFormGame& game) {
  ValidationReport report;
  auto add = [&](IssueKind kind, NodeId node, InfosetId infoset, std::string message) {
    report.issues.push_back({kind, node, infoset, std::move(message)});
  };

  if (game.num_nodes() == 0) {
    add(IssueKind::kEmptyGame, kNoNode, kNoInfoset, "game has no nodes");
    return report;
  }

  for (NodeId id = 0; id < static_cast<NodeId>(game.num_nodes()); ++id) {
    const Node& node = game.node(id);
    for (NodeId c : game.children(id)) {
      if (c == kNoNode) {
        add(IssueKind::kMissingChild, id, node.infoset,
            "node " + std::to_string(id) + " has an action without a child");
        break;
      }
    }
    switch (node.kind) {
      case NodeKind::kTerminal:
        if (!std::isfinite(node.utility)) {
          add(IssueKind::kNonFiniteUtility, id, kNoInfoset,
              "terminal " + std::to_string(id) + " has a non-finite utility");
        }
        break;
      case NodeKind::kChance: {
        double sum = 0.0;
        bool negative = false;
        for (double p : game.chance_probabilities(id)) {
          negative |= !(p >= 0.0);
          sum += p;
        }
        if (negative || std::abs(sum - 1.0) > kChanceSumTolerance || node.num_edges == 0) {
          add(IssueKind::kChanceDistribution, id, kNoInfoset,
              "chance node " + std::to_string(id) + " has probabilities summing to " +
                  format_double(sum) + (negative ? " with negative entries" : ""));
        }
        break;
      }
      case NodeKind::kDecision: {
        if (node.infoset == kNoInfoset) {
          add(IssueKind::kBadPlayer, id, kNoInfoset,
              "decision node " + std::to_string(id) + " has invalid player " +
                  std::to_string(node.player));
          break;
        }
        if (node.num_edges == 0) {
          add(IssueKind::kInfosetActionMismatch, id, node.infoset,
              "decision node " + std::to_string(id) + " has no actions");
        }
        break;
      }
    }
  }

  for (InfosetId id = 0; id < static_cast<InfosetId>(game.num_infosets()); ++id) {
    const Infoset& info = game.infoset(id);
    const NodeId first = info.nodes.front();
    for (NodeId h : info.nodes) {
      const Node& node = game.node(h);
      bool same = node.num_edges == static_cast<std::int32_t>(info.num_actions());
      for (int a = 0; same && a < node.num_edges; ++a) {
        same = game.edge_label(h, a) == info.actions[static_cast<std::size_t>(a)];
      }
      if (!same) {
        add(IssueKind::kInfosetActionMismatch, h, id,
            "infoset '" + info.key + "' has nodes " + std::to_string(first) + " and " +
                std::to_string(h) + " with different action lists");
      }
      if (game.own_sequence(h) != game.own_sequence(first)) {
        add(IssueKind::kImperfectRecall, h, id,
            "infoset '" + info.key + "' violates perfect recall at nodes " +
                std::to_string(first) + " and " + std::to_string(h));
      }
    }
  }
  return report;
}

void require_valid(const ExtensiveFormGame& game) {
  ValidationReport report = validate(game);
  if (!report.ok()) throw std::invalid_argument("invalid game '" + game.name() + "': " + report.summary());
}

UtilityRange utility_range(const ExtensiveFormGame& game) {
  UtilityRange range;
  range.min = std::numeric_limits<double>::infinity();
  range.max = -std::numeric_limits<double>::infinity();
  for (NodeId z : game.terminals()) {
    range.min = std::min(range.min, game.node(z).utility);
    range.max = std::max(range.max, game.node(z).utility);
  }
  if (game.terminals().empty()) range.min = range.max = 0.0;
  range.gamma = range.max - range.min;
  return range;
}

void dump(const ExtensiveFormGame& game, std::ostream& out) {
  out << "# pcfr-dump v1 " << game.name() << '\n';
  for (NodeId id = 0; id < static_cast<NodeId>(game.num_nodes()); ++id) {
    const Node& node = game.node(id);
    out << id << '\t';
    switch (node.kind) {
      case NodeKind::kDecision: out << "decision\t" << (node.player + 1); break;
      case NodeKind::kChance: out << "chance\tc"; break;
      case NodeKind::kTerminal: out << "terminal\t-"; break;
    }
    out << '\t';
    if (node.infoset != kNoInfoset) {
      out << node.infoset << ':' << game.infoset(node.infoset).key;
    } else {
      out << '-';
    }
    out << '\t' << node.parent << '\t';
    if (node.num_edges == 0) out << '-';
    for (int a = 0; a < node.num_edges; ++a) out << (a ? "," : "") << game.edge_label(id, a);
    out << '\t';
    if (node.kind == NodeKind::kChance) {
      auto probs = game.chance_probabilities(id);
      for (std::size_t a = 0; a < probs.size(); ++a) out << (a ? "," : "") << format_double(probs[a]);
    } else if (node.kind == NodeKind::kTerminal) {
      out << format_double(node.utility);
    } else {
      out << '-';
    }
    out << '\n';
  }
}

}  // namespace pcfr
