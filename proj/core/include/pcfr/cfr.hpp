#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pcfr/game.hpp"
#include "pcfr/metrics.hpp"
#include "pcfr/polytope_rm.hpp"
#include "pcfr/strategy.hpp"

namespace pcfr {

enum class UpdateSchedule { kAlternating, kSimultaneous };
enum class ChanceMode { kEnumerate, kSample };

struct CfrOptions {
  Averaging averaging = Averaging::kUniform;
  UpdateSchedule schedule = UpdateSchedule::kAlternating;
  ChanceMode chance = ChanceMode::kEnumerate;
  std::uint64_t seed = 0;  // sampling mode only
};

struct IterationRecord {
  std::int64_t iteration = 0;
  std::int64_t traversals = 0;  // cumulative
  // Root value (to player 1) of each player's traversal this iteration.
  double root_value[kNumPlayers] = {0.0, 0.0};
};

/// CFR+ with every infoset's strategy restricted to the perturbed simplex
/// {x : x(a) >= p(I, a), sum x = 1}.
///
/// Each traversal for the updating player sums counterfactual action values
/// over all nodes of an infoset; `commit` turns them into instantaneous
/// regrets and applies the perturbed RM+ update once per infoset. The average strategy is
/// accumulated from the updating player's own sequence reach.
class CfrSolver {
 public:
  // Validates the game. Throws std::invalid_argument for an invalid game or
  // a perturbation of the wrong size.
  CfrSolver(const ExtensiveFormGame& game, Perturbation perturbation, CfrOptions options = {});

  IterationRecord iterate();
  void run(std::int64_t iterations);

  BehavioralStrategy average_strategy() const;
  const BehavioralStrategy& current_strategy() const { return current_; }

  std::span<const double> regrets(const Infoset& info) const {
    return {regrets_.data() + info.action_offset, info.num_actions()};
  }
  std::span<const double> cumulative_strategy(const Infoset& info) const {
    return {cumulative_.data() + info.action_offset, info.num_actions()};
  }

  std::int64_t iteration() const { return iteration_; }
  std::int64_t traversals() const { return traversals_; }
  const std::vector<IterationRecord>& history() const { return history_; }
  const PlayHistory& play_history() const { return play_; }
  const ExtensiveFormGame& game() const { return game_; }
  const Perturbation& perturbation() const { return perturbation_; }
  const CfrOptions& options() const { return options_; }

  // One counterfactual traversal below `node` for `player`; returns the
  // subtree value to player 1 under the current strategies. Regrets are only
  // accumulated; call `commit` to apply them.
  double traverse(NodeId node, int player, double reach1, double reach2);
  // Applies the accumulated regrets of `player` and refreshes its strategy.
  void commit(int player);

  // Current perturbed RM+ strategy at `info` from its regrets.
  std::span<const double> regret_match_infoset(const Infoset& info);

 private:
  void accumulate_average(int player, double weight);
  void record_faced(int player, double root_value);

  const ExtensiveFormGame& game_;
  Perturbation perturbation_;
  CfrOptions options_;
  BehavioralStrategy current_;
  std::vector<double> regrets_;
  std::vector<double> pending_;
  std::vector<double> cumulative_;
  std::vector<double> reach_scratch_;
  PlayHistory play_;
  std::int64_t iteration_ = 0;
  std::int64_t traversals_ = 0;
  std::vector<IterationRecord> history_;
  std::mt19937_64 rng_;
};

// gamma |I| sqrt(max |A(I)|) / sqrt(T).
double cfr_bound(double gamma, std::size_t infoset_count, std::size_t max_actions,
                 std::int64_t iterations);

// cfr_bound with the shape of `player`'s part of the game.
double cfr_bound(const ExtensiveFormGame& game, int player, std::int64_t iterations);

}  // namespace pcfr
