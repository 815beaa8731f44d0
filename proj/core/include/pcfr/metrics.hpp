#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcfr/game.hpp"
#include "pcfr/strategy.hpp"

namespace pcfr {

// Expected payoff to player 1 when both players follow `profile`.
double expected_value(const ExtensiveFormGame& game, const BehavioralStrategy& profile);

// Player-1 payoff of the subtree below every node under `profile`.
std::vector<double> node_values(const ExtensiveFormGame& game, const BehavioralStrategy& profile);

struct BestResponse {
  // `profile` with the responder's infosets replaced by the response.
  BehavioralStrategy strategy;
  // Expected payoff to the responder.
  double value = 0.0;
};

/// Exact best response by dynamic programming over the responder's infosets,
/// deepest first. With a perturbation the responder is restricted to the
/// perturbed simplexes: mandatory mass p(I, a) on every action and the free
/// mass tau(I) on an argmax action. Ties go to the lowest action index.
BestResponse best_response(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                           int responder, const Perturbation* feasible = nullptr);

struct PlayerRegrets {
  double player1 = 0.0;
  double player2 = 0.0;
  double sum() const { return player1 + player2; }
};

// epsilon_i = (best-response payoff of i) - (payoff of i under the profile),
// optionally with best responses restricted to the perturbed game.
PlayerRegrets exploitability_components(const ExtensiveFormGame& game,
                                        const BehavioralStrategy& profile,
                                        const Perturbation* feasible = nullptr);

double exploitability(const ExtensiveFormGame& game, const BehavioralStrategy& profile);

struct InfosetRegret {
  InfosetId infoset = kNoInfoset;
  double reach = 0.0;   // opponent-and-chance reach summed over the infoset's nodes
  double regret = 0.0;  // conditional regret
};

struct MaxInfosetRegret {
  double value = 0.0;
  InfosetId infoset = kNoInfoset;
  std::vector<InfosetRegret> per_infoset;  // indexed by infoset id
};

/// Regret at each infoset conditioned on reaching it: the gain from best
/// responding in the subtree below the infoset, with the infoset's nodes
/// weighted by their normalized opponent-and-chance reach. Infosets the
/// opponent and chance never reach weight their nodes uniformly instead.
MaxInfosetRegret max_infoset_regret(const ExtensiveFormGame& game, const BehavioralStrategy& profile);

/// What each player observed over a run of a learning dynamic: the uniform
/// average of the opponent's strategies it faced (as reach-weighted sums per
/// opponent infoset) and the sum of its own realized payoffs.
struct PlayHistory {
  std::vector<double> faced_cumulative[kNumPlayers];
  double payoff_sum[kNumPlayers] = {0.0, 0.0};
  std::int64_t rounds[kNumPlayers] = {0, 0};

  explicit PlayHistory(std::size_t total_actions = 0) {
    for (auto& v : faced_cumulative) v.assign(total_actions, 0.0);
  }
};

// Best responses restricted to the perturbed game, against the profile.
PlayerRegrets perturbed_game_regret(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                                    const Perturbation& perturbation);

// Average external regret of each player over the recorded history, with
// deviations restricted to the perturbed game.
PlayerRegrets perturbed_game_regret(const ExtensiveFormGame& game, const PlayHistory& history,
                                    const Perturbation& perturbation);

struct EvaluationReport {
  double value_p1 = 0.0;
  double br_value_p1 = 0.0;
  double br_value_p2 = 0.0;
  PlayerRegrets epsilon;
  double exploitability = 0.0;
  PlayerRegrets perturbed_epsilon;  // equals `epsilon` when no perturbation is given
  MaxInfosetRegret infoset_regret;
};

EvaluationReport evaluate(const ExtensiveFormGame& game, const BehavioralStrategy& profile,
                          const Perturbation* perturbation = nullptr);

// Behavioral strategy from reach-weighted cumulative sums; infosets with no
// mass get the uniform point of the (perturbed) simplex.
BehavioralStrategy normalize_cumulative(const ExtensiveFormGame& game, std::span<const double> cumulative,
                                        const Perturbation* perturbation = nullptr);

}  // namespace pcfr
