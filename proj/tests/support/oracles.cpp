#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace pcfr::testing {

namespace {

class RandomGameGenerator {
 public:
  RandomGameGenerator(std::uint64_t seed, int max_nodes)
      : rng_(seed), builder_("random-" + std::to_string(seed)), budget_(max_nodes) {}

  ExtensiveFormGame run() && {
    std::string history[kNumPlayers];
    grow(kNoNode, budget_, history, 0);
    return std::move(builder_).build();
  }

 private:
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  void grow(NodeId parent, int budget, const std::string (&history)[kNumPlayers], int depth) {
    const bool leaf = budget < 3 || depth >= 6 || (depth > 0 && coin(0.2));
    if (leaf) {
      builder_.add_terminal(parent, static_cast<double>(pick(-8, 8)) / 4.0);
      return;
    }
    const int k = budget >= 4 && coin(0.4) ? 3 : 2;
    const int share = (budget - 1) / k;

    if (depth > 0 && coin(0.2)) {
      std::vector<double> probs;
      std::vector<std::string> labels;
      double total = 0.0;
      for (int a = 0; a < k; ++a) {
        probs.push_back(static_cast<double>(pick(1, 4)));
        total += probs.back();
        labels.push_back("c" + std::to_string(a));
      }
      for (double& p : probs) p /= total;
      const NodeId node = builder_.add_chance(parent, labels, probs);
      for (int a = 0; a < k; ++a) grow(node, share, history, depth + 1);
      return;
    }

    const int player = pick(0, 1);
    const std::string key = "p" + std::to_string(player + 1) + "[" + history[player] + "]" +
                            std::to_string(k) + (coin(0.5) ? "x" : "y");
    std::vector<std::string> actions;
    for (int a = 0; a < k; ++a) actions.push_back("a" + std::to_string(a));
    const NodeId node = builder_.add_decision(parent, player, key, actions);
    for (int a = 0; a < k; ++a) {
      std::string next[kNumPlayers] = {history[0], history[1]};
      next[player] += key + "." + std::to_string(a) + ";";
      grow(node, share, next, depth + 1);
    }
  }

  std::mt19937_64 rng_;
  GameBuilder builder_;
  int budget_;
};

}  // namespace

ExtensiveFormGame random_game(std::uint64_t seed, int max_nodes) {
  return RandomGameGenerator(seed, max_nodes).run();
}

double tree_value(const ExtensiveFormGame& game, const BehavioralStrategy& profile, NodeId id) {
  const Node& node = game.node(id);
  if (node.kind == NodeKind::kTerminal) return node.utility;
  std::span<const double> probs = node.kind == NodeKind::kChance
                                      ? game.chance_probabilities(id)
                                      : profile.at(game.infoset(node.infoset));
  double v = 0.0;
  for (int a = 0; a < node.num_edges; ++a) {
    v += probs[static_cast<std::size_t>(a)] * tree_value(game, profile, game.child(id, a));
  }
  return v;
}

BruteForceResponse brute_force_best_response(const ExtensiveFormGame& game,
                                             const BehavioralStrategy& profile, int responder,
                                             const Perturbation* feasible) {
  const auto infosets = game.infosets_of(responder);
  std::vector<int> choice(infosets.size(), 0);
  BehavioralStrategy trial = profile;
  BruteForceResponse best;
  best.value = -std::numeric_limits<double>::infinity();

  auto apply = [&] {
    for (std::size_t i = 0; i < infosets.size(); ++i) {
      const Infoset& info = game.infoset(infosets[i]);
      auto out = trial.at(info);
      for (std::size_t a = 0; a < out.size(); ++a) {
        const double lower = feasible ? feasible->at(info)[a] : 0.0;
        const double free = feasible ? feasible->tau(info) : 1.0;
        out[a] = lower + (static_cast<int>(a) == choice[i] ? free : 0.0);
      }
    }
  };

  while (true) {
    apply();
    const double v = payoff_sign(responder) * tree_value(game, trial);
    ++best.strategies;
    if (v > best.value) {
      best.value = v;
      best.choice = choice;
    }
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < static_cast<int>(game.infoset(infosets[i]).num_actions())) break;
      choice[i] = 0;
    }
    if (i == choice.size()) break;
    if (best.strategies > 5'000'000) throw std::length_error("too many pure strategies");
  }
  return best;
}

BehavioralStrategy random_profile(const ExtensiveFormGame& game, std::uint64_t seed,
                                  const Perturbation* feasible) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> draw(1.0);
  BehavioralStrategy profile = BehavioralStrategy::uniform(game);
  for (const Infoset& info : game.infosets()) {
    auto out = profile.at(info);
    double total = 0.0;
    for (double& x : out) total += (x = draw(rng));
    for (std::size_t a = 0; a < out.size(); ++a) {
      out[a] /= total;
      if (feasible) out[a] = feasible->at(info)[a] + feasible->tau(info) * out[a];
    }
  }
  return profile;
}

BehavioralStrategy kuhn_equilibrium(const ExtensiveFormGame& kuhn, double alpha) {
  BehavioralStrategy s = BehavioralStrategy::uniform(kuhn);
  // Probability of action "b" (bet or call) at each infoset.
  const std::pair<const char*, double> p1[] = {{"J", alpha},   {"Q", 0.0},
                                               {"K", 3 * alpha}, {"Jpb", 0.0},
                                               {"Qpb", alpha + 1.0 / 3.0}, {"Kpb", 1.0}};
  const std::pair<const char*, double> p2[] = {{"Jb", 0.0}, {"Qb", 1.0 / 3.0}, {"Kb", 1.0},
                                               {"Jp", 1.0 / 3.0}, {"Qp", 0.0}, {"Kp", 1.0}};
  auto set = [&](int player, const char* key, double bet) {
    const InfosetId id = kuhn.find_infoset(player, key);
    if (id == kNoInfoset) throw std::logic_error(std::string("no kuhn infoset ") + key);
    auto out = s.at(kuhn.infoset(id));
    out[0] = 1.0 - bet;
    out[1] = bet;
  };
  for (const auto& [key, bet] : p1) set(0, key, bet);
  for (const auto& [key, bet] : p2) set(1, key, bet);
  return s;
}

ReferenceCfrPlus::ReferenceCfrPlus(const ExtensiveFormGame& game, bool alternating)
    : game_(game),
      alternating_(alternating),
      strategy_(game.total_actions(), 0.0),
      regret_(game.total_actions(), 0.0),
      cumulative_(game.total_actions(), 0.0) {
  for (const Infoset& info : game.infosets()) {
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      strategy_[info.action_offset + a] = 1.0 / static_cast<double>(info.num_actions());
    }
  }
}

void ReferenceCfrPlus::accumulate(int player) {
  std::vector<double> own_reach(game_.num_infosets(), -1.0);
  std::function<void(NodeId, double)> walk = [&](NodeId id, double reach) {
    const Node& node = game_.node(id);
    if (node.kind == NodeKind::kTerminal) return;
    for (int a = 0; a < node.num_edges; ++a) {
      double next = reach;
      if (node.kind == NodeKind::kDecision && node.player == player) {
        own_reach[static_cast<std::size_t>(node.infoset)] = reach;
        next *= strategy_[game_.infoset(node.infoset).action_offset + a];
      }
      walk(game_.child(id, a), next);
    }
  };
  walk(game_.root(), 1.0);
  for (InfosetId id : game_.infosets_of(player)) {
    const Infoset& info = game_.infoset(id);
    const double w = own_reach[static_cast<std::size_t>(id)];
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      cumulative_[info.action_offset + a] += w * strategy_[info.action_offset + a];
    }
  }
}

namespace {

std::vector<double> counterfactual_values(const ExtensiveFormGame& game,
                                          const std::vector<double>& strategy, int player) {
  std::vector<double> opp_reach(game.num_nodes(), 0.0);
  std::vector<double> value(game.num_nodes(), 0.0);
  std::function<double(NodeId, double)> walk = [&](NodeId id, double reach) {
    opp_reach[static_cast<std::size_t>(id)] = reach;
    const Node& node = game.node(id);
    double v = 0.0;
    if (node.kind == NodeKind::kTerminal) {
      v = node.utility;
    } else if (node.kind == NodeKind::kChance) {
      auto probs = game.chance_probabilities(id);
      for (int a = 0; a < node.num_edges; ++a) {
        v += probs[static_cast<std::size_t>(a)] *
             walk(game.child(id, a), reach * probs[static_cast<std::size_t>(a)]);
      }
    } else {
      const Infoset& info = game.infoset(node.infoset);
      for (int a = 0; a < node.num_edges; ++a) {
        const double p = strategy[info.action_offset + a];
        v += p * walk(game.child(id, a), node.player == player ? reach : reach * p);
      }
    }
    value[static_cast<std::size_t>(id)] = v;
    return v;
  };
  walk(game.root(), 1.0);

  std::vector<double> cfv(game.total_actions(), 0.0);
  for (InfosetId id : game.infosets_of(player)) {
    const Infoset& info = game.infoset(id);
    for (NodeId h : info.nodes) {
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        cfv[info.action_offset + a] += opp_reach[static_cast<std::size_t>(h)] * payoff_sign(player) *
                                       value[static_cast<std::size_t>(game.child(h, static_cast<int>(a)))];
      }
    }
  }
  return cfv;
}

}  // namespace

void ReferenceCfrPlus::update(int player) {
  const std::vector<double> cfv = counterfactual_values(game_, strategy_, player);
  for (InfosetId id : game_.infosets_of(player)) {
    const Infoset& info = game_.infoset(id);
    const std::size_t o = static_cast<std::size_t>(info.action_offset);
    const std::size_t n = info.num_actions();
    double ev = 0.0;
    for (std::size_t a = 0; a < n; ++a) ev += strategy_[o + a] * cfv[o + a];
    double positive = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      regret_[o + a] = std::max(0.0, regret_[o + a] + (cfv[o + a] - ev));
      positive += regret_[o + a];
    }
    for (std::size_t a = 0; a < n; ++a) {
      strategy_[o + a] = positive > 0.0 ? regret_[o + a] / positive : 1.0 / static_cast<double>(n);
    }
  }
}

void ReferenceCfrPlus::iterate() {
  if (alternating_) {
    for (int p = 0; p < kNumPlayers; ++p) {
      accumulate(p);
      update(p);
    }
    return;
  }
  accumulate(0);
  accumulate(1);
  const std::vector<double> before = strategy_;
  update(0);
  std::vector<double> after0 = strategy_;
  strategy_ = before;
  update(1);
  for (InfosetId id : game_.infosets_of(0)) {
    const Infoset& info = game_.infoset(id);
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      strategy_[info.action_offset + a] = after0[info.action_offset + a];
    }
  }
}

std::vector<double> ReferenceCfrPlus::average() const {
  std::vector<double> avg = strategy_;
  for (const Infoset& info : game_.infosets()) {
    const std::size_t o = static_cast<std::size_t>(info.action_offset);
    double total = 0.0;
    for (std::size_t a = 0; a < info.num_actions(); ++a) total += cumulative_[o + a];
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      avg[o + a] = total > 0.0 ? cumulative_[o + a] / total : 1.0 / static_cast<double>(info.num_actions());
    }
  }
  return avg;
}

namespace {

struct RoundShape {
  std::int64_t decisions[kNumPlayers] = {0, 0};
  std::int64_t folds = 0;
  std::int64_t completions = 0;
  double max_contribution = 0.0;  // per player, this round
};

// Enumerates one betting round as strings of c/r/f.
RoundShape round_shape(int max_raises, double bet) {
  RoundShape shape;
  std::function<void(const std::string&, int, int, bool)> go = [&](const std::string& h, int actor,
                                                                    int raises, bool facing) {
    ++shape.decisions[actor];
    shape.max_contribution = std::max(shape.max_contribution, raises * bet);
    if (facing) {
      ++shape.folds;
      ++shape.completions;  // call
    } else if (h.empty()) {
      go(h + "c", 1, raises, false);
    } else {
      ++shape.completions;  // check behind
    }
    if (raises < max_raises) go(h + "r", 1 - actor, raises + 1, true);
  };
  go("", 0, 0, false);
  return shape;
}

}  // namespace

LeducCounts leduc_counts(const LeducConfig& config) {
  const RoundShape r1 = round_shape(config.max_raises_per_round, config.round1_bet);
  const RoundShape r2 = round_shape(config.max_raises_per_round, config.round2_bet);
  const std::int64_t k = config.k;
  const std::int64_t deals = 2 * k * (2 * k - 1);
  const std::int64_t boards = 2 * k - 2;
  const std::int64_t d1 = r1.decisions[0] + r1.decisions[1];
  const std::int64_t d2 = r2.decisions[0] + r2.decisions[1];

  LeducCounts c;
  c.terminals = deals * (r1.folds + r1.completions * boards * (r2.folds + r2.completions));
  c.nodes = 1 + deals * (d1 + r1.folds + r1.completions * (1 + boards * (d2 + r2.folds + r2.completions)));
  for (int p = 0; p < kNumPlayers; ++p) {
    c.infosets[p] = k * r1.decisions[p] + k * r1.completions * k * r2.decisions[p];
  }
  c.max_abs_payoff = config.ante + r1.max_contribution + r2.max_contribution;
  return c;
}

RegretCeiling regret_ceiling(const ExtensiveFormGame& game) {
  const std::size_t n = game.num_nodes();
  std::vector<double> lo(n), hi(n), coop_max[kNumPlayers], coop_min[kNumPlayers], gain[kNumPlayers];
  for (int p = 0; p < kNumPlayers; ++p) {
    coop_max[p].assign(n, 0.0);
    coop_min[p].assign(n, 0.0);
    gain[p].assign(n, 0.0);
  }

  std::function<void(NodeId)> solve = [&](NodeId id) {
    const Node& node = game.node(id);
    const auto k = static_cast<std::size_t>(id);
    if (node.kind == NodeKind::kTerminal) {
      lo[k] = hi[k] = node.utility;
      for (int p = 0; p < kNumPlayers; ++p) {
        coop_max[p][k] = coop_min[p][k] = payoff_sign(p) * node.utility;
      }
      return;
    }
    for (NodeId c : game.children(id)) solve(c);
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -lo[k];
    for (NodeId c : game.children(id)) {
      lo[k] = std::min(lo[k], lo[static_cast<std::size_t>(c)]);
      hi[k] = std::max(hi[k], hi[static_cast<std::size_t>(c)]);
    }
    for (int p = 0; p < kNumPlayers; ++p) {
      double mx = 0.0, mn = 0.0, g = 0.0;
      if (node.kind == NodeKind::kChance) {
        auto probs = game.chance_probabilities(id);
        for (int a = 0; a < node.num_edges; ++a) {
          const auto c = static_cast<std::size_t>(game.child(id, a));
          mx += probs[static_cast<std::size_t>(a)] * coop_max[p][c];
          mn += probs[static_cast<std::size_t>(a)] * coop_min[p][c];
          g += probs[static_cast<std::size_t>(a)] * gain[p][c];
        }
      } else {
        mx = -std::numeric_limits<double>::infinity();
        mn = std::numeric_limits<double>::infinity();
        g = 0.0;
        for (NodeId c : game.children(id)) {
          const auto ci = static_cast<std::size_t>(c);
          mx = std::max(mx, coop_max[p][ci]);
          mn = std::min(mn, coop_min[p][ci]);
          g = std::max(g, gain[p][ci]);
        }
        // Own node: the deviation may branch away from the played action,
        // after which the opponent's choices on the two branches are free.
        if (node.player == p) {
          for (NodeId a : game.children(id)) {
            for (NodeId b : game.children(id)) {
              if (a == b) continue;
              g = std::max(g, coop_max[p][static_cast<std::size_t>(a)] -
                                  coop_min[p][static_cast<std::size_t>(b)]);
            }
          }
        }
      }
      coop_max[p][k] = mx;
      coop_min[p][k] = mn;
      gain[p][k] = g;
    }
  };
  solve(game.root());

  RegretCeiling ceiling;
  for (const Infoset& info : game.infosets()) {
    const int p = info.player;
    for (NodeId h : info.nodes) {
      const auto k = static_cast<std::size_t>(h);
      ceiling.terminal_range = std::max(ceiling.terminal_range, hi[k] - lo[k]);
      ceiling.cooperative = std::max(ceiling.cooperative, coop_max[p][k] - coop_min[p][k]);
      ceiling.node_regret = std::max(ceiling.node_regret, gain[p][k]);
    }
  }
  return ceiling;
}

}  // namespace pcfr::testing
