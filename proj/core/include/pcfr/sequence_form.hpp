#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pcfr/game.hpp"
#include "pcfr/nfg.hpp"
#include "pcfr/strategy.hpp"

namespace pcfr {

struct SequenceFormOptions {
  std::size_t max_sequences = 1 << 16;  // per player
  bool enumerate_vertices = true;
  std::size_t max_vertices = 1 << 16;   // per player, pure realization plans
};

/// Sequence-form view of a small game. Index 0 of each player's sequence
/// space is the empty sequence; sequence (I, a) sits at
/// `sequence_index[I.action_offset + a]` in its owner's space.
///
/// Realization plans x, y satisfy `constraints[p] * plan == rhs[p]` and
/// u(x, y) = x^T payoff y. When vertices are enumerated, `nfg` holds the
/// pure realization plans as vertex columns, which makes the game a
/// GeneralizedNFG over finitely generated polytopes.
struct SequenceForm {
  std::vector<int> sequence_index;
  std::vector<InfosetId> sequence_infoset[kNumPlayers];  // kNoInfoset for the empty sequence
  std::vector<int> sequence_action[kNumPlayers];
  Eigen::MatrixXd constraints[kNumPlayers];
  Eigen::VectorXd rhs[kNumPlayers];
  GeneralizedNFG nfg;

  std::size_t num_sequences(int player) const { return sequence_infoset[player].size(); }
  const Eigen::MatrixXd& payoff() const { return nfg.payoff; }

  Eigen::VectorXd realization_plan(const ExtensiveFormGame& game, const BehavioralStrategy& strategy,
                                   int player) const;
  // Inverse map; infosets the plan never reaches get the uniform strategy.
  BehavioralStrategy behavioral_from_plans(const ExtensiveFormGame& game, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) const;
};

// Throws std::length_error if a cap is exceeded, std::invalid_argument if
// the game is invalid.
SequenceForm to_generalized_nfg(const ExtensiveFormGame& game, const SequenceFormOptions& options = {});

}  // namespace pcfr
