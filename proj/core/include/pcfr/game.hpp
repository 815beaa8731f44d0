#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcfr {

using NodeId = std::int32_t;
using InfosetId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr InfosetId kNoInfoset = -1;

// Players are 0 (player 1, the maximizer) and 1 (player 2).
inline constexpr int kChancePlayer = -1;
inline constexpr int kNumPlayers = 2;

constexpr int opponent_of(int player) { return 1 - player; }

// Sign that turns a player-1 payoff into the given player's payoff.
constexpr double payoff_sign(int player) { return player == 0 ? 1.0 : -1.0; }

enum class NodeKind : std::uint8_t { kDecision, kChance, kTerminal };

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int player = kChancePlayer;
  InfosetId infoset = kNoInfoset;
  NodeId parent = kNoNode;
  int parent_action = -1;
  std::int32_t first_edge = 0;
  std::int32_t num_edges = 0;
  double utility = 0.0;  // payoff to player 1, terminals only
};

struct Infoset {
  int player = 0;
  std::string key;
  std::vector<std::string> actions;
  std::vector<NodeId> nodes;
  // Offset of this infoset's actions in flat per-(infoset, action) arrays.
  std::int32_t action_offset = 0;
  // The player's own last (infoset, action) before reaching this infoset.
  InfosetId parent_infoset = kNoInfoset;
  int parent_action = -1;
  // Number of the player's own decisions preceding this infoset.
  int depth = 0;

  std::size_t num_actions() const { return actions.size(); }
};

/// Immutable two-player zero-sum game tree stored as a flat node arena.
///
/// Node 0 is the root. Edges of a node are contiguous in the edge arrays,
/// so `child(n, a)` is a single indexed load. Utilities are stored only at
/// terminals as payoffs to player 1.
class ExtensiveFormGame {
 public:
  const std::string& name() const { return name_; }

  NodeId root() const { return 0; }
  std::size_t num_nodes() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }

  std::span<const NodeId> children(NodeId id) const {
    const Node& n = node(id);
    return {children_.data() + n.first_edge, static_cast<std::size_t>(n.num_edges)};
  }
  NodeId child(NodeId id, int action) const {
    return children_[static_cast<std::size_t>(node(id).first_edge + action)];
  }
  std::span<const double> chance_probabilities(NodeId id) const {
    const Node& n = node(id);
    return {edge_probs_.data() + n.first_edge, static_cast<std::size_t>(n.num_edges)};
  }
  const std::string& edge_label(NodeId id, int action) const {
    return edge_labels_[static_cast<std::size_t>(node(id).first_edge + action)];
  }

  std::size_t num_infosets() const { return infosets_.size(); }
  const Infoset& infoset(InfosetId id) const { return infosets_[static_cast<std::size_t>(id)]; }
  std::span<const Infoset> infosets() const { return infosets_; }

  // Infosets of one player, ordered so that every infoset appears after the
  // infoset holding its parent sequence.
  std::span<const InfosetId> infosets_of(int player) const {
    return player_infosets_[static_cast<std::size_t>(player)];
  }

  // Length of flat arrays indexed by `infoset(i).action_offset + a`.
  std::size_t total_actions() const { return total_actions_; }
  std::size_t max_actions(int player) const;

  std::span<const NodeId> terminals() const { return terminals_; }

  // Own-sequence id of the acting player at a decision node; 0 is the empty
  // sequence. Used by the perfect-recall check.
  std::int32_t own_sequence(NodeId id) const { return own_sequence_[static_cast<std::size_t>(id)]; }

  InfosetId find_infoset(int player, std::string_view key) const;

 private:
  friend class GameBuilder;

  std::string name_;
  std::vector<Node> nodes_;
  std::vector<NodeId> children_;
  std::vector<double> edge_probs_;
  std::vector<std::string> edge_labels_;
  std::vector<Infoset> infosets_;
  std::vector<InfosetId> player_infosets_[kNumPlayers];
  std::vector<NodeId> terminals_;
  std::vector<std::int32_t> own_sequence_;
  std::size_t total_actions_ = 0;
};

/// Incremental, top-down construction of an ExtensiveFormGame.
///
/// Children are attached to their parent in call order, so the k-th child
/// added under a node is the outcome of its k-th action. Structural misuse
/// (unknown parent, too many children, second root) throws
/// std::invalid_argument; semantic problems such as mismatched infoset
/// action lists are left for validate() to report.
class GameBuilder {
 public:
  explicit GameBuilder(std::string name = {});

  NodeId add_decision(NodeId parent, int player, std::string_view infoset_key,
                      std::vector<std::string> actions);
  NodeId add_chance(NodeId parent, std::vector<std::string> outcomes,
                    std::vector<double> probabilities);
  NodeId add_terminal(NodeId parent, double utility);

  ExtensiveFormGame build() &&;

 private:
  NodeId add_node(NodeId parent, Node node, std::vector<std::string> labels,
                  std::vector<double> probs);

  ExtensiveFormGame game_;
  std::vector<std::int32_t> filled_;
  std::unordered_map<std::string, InfosetId> infoset_index_[kNumPlayers];
};

enum class IssueKind {
  kEmptyGame,
  kMissingChild,
  kBadPlayer,
  kInfosetActionMismatch,
  kChanceDistribution,
  kNonFiniteUtility,
  kImperfectRecall,
};

struct ValidationIssue {
  IssueKind kind;
  NodeId node = kNoNode;
  InfosetId infoset = kNoInfoset;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate(const ExtensiveFormGame& game);

// Throws std::invalid_argument carrying the report summary if invalid.
void require_valid(const ExtensiveFormGame& game);

struct UtilityRange {
  double min = 0.0;
  double max = 0.0;
  double gamma = 0.0;
};

UtilityRange utility_range(const ExtensiveFormGame& game);

// One node per line, tab separated:
//   id  kind  player  infoset  parent  labels  payload
// See README for the field encoding.
void dump(const ExtensiveFormGame& game, std::ostream& out);

}  // namespace pcfr
