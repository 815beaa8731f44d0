#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcfr/game.hpp"

namespace pcfr {

/// Per-(infoset, action) lower bounds on behavioral probabilities.
///
/// Entries are laid out by `Infoset::action_offset`. Every infoset must keep
/// its bound sum strictly below one so the constrained simplex is nonempty
/// with positive free mass `tau(I) = 1 - sum_a p(I, a)`.
class Perturbation {
 public:
  Perturbation() = default;

  // All-zero perturbation: the unconstrained game.
  static Perturbation none(const ExtensiveFormGame& game);

  // p(I, a) = xi everywhere. Throws std::invalid_argument if xi < 0 or
  // xi * |A(I)| >= 1 at some infoset.
  static Perturbation uniform(const ExtensiveFormGame& game, double xi);

  // Arbitrary bounds; validated the same way.
  static Perturbation from_bounds(const ExtensiveFormGame& game, std::vector<double> bounds);

  std::span<const double> at(const Infoset& info) const {
    return {bounds_.data() + info.action_offset, info.num_actions()};
  }
  double tau(const Infoset& info) const;
  bool is_zero() const;
  std::span<const double> flat() const { return bounds_; }

 private:
  explicit Perturbation(std::vector<double> bounds) : bounds_(std::move(bounds)) {}

  std::vector<double> bounds_;
};

/// Behavioral strategies for every infoset of the game (both players), laid
/// out by `Infoset::action_offset`. A player's strategy is the restriction to
/// that player's infosets, so one object also serves as a strategy profile.
class BehavioralStrategy {
 public:
  BehavioralStrategy() = default;

  static BehavioralStrategy uniform(const ExtensiveFormGame& game);
  // The uniform point of each perturbed simplex: p(I, .) + tau(I) / |A(I)|.
  static BehavioralStrategy uniform(const ExtensiveFormGame& game, const Perturbation& p);

  std::span<double> at(const Infoset& info) {
    return {probs_.data() + info.action_offset, info.num_actions()};
  }
  std::span<const double> at(const Infoset& info) const {
    return {probs_.data() + info.action_offset, info.num_actions()};
  }
  std::span<double> flat() { return probs_; }
  std::span<const double> flat() const { return probs_; }

  // Copies `player`'s part of `source` over this strategy.
  void assign_player(const ExtensiveFormGame& game, int player, const BehavioralStrategy& source);

 private:
  explicit BehavioralStrategy(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

struct StrategyCheck {
  bool ok = true;
  std::string message;
};

// Every vector sums to 1 within `sum_tol`, is non-negative, and (if given)
// respects the perturbation bounds within `bound_tol`.
StrategyCheck check_strategy(const ExtensiveFormGame& game, const BehavioralStrategy& strategy,
                             const Perturbation* perturbation = nullptr, double sum_tol = 1e-9,
                             double bound_tol = 1e-12);

}  // namespace pcfr
