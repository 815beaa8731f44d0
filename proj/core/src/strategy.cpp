#include "pcfr/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcfr {

namespace {

void check_bounds(const ExtensiveFormGame& game, const std::vector<double>& bounds) {
  if (bounds.size() != game.total_actions()) {
    throw std::invalid_argument("perturbation size does not match the game");
  }
  for (const Infoset& info : game.infosets()) {
    double sum = 0.0;
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      const double p = bounds[static_cast<std::size_t>(info.action_offset) + a];
      if (!(p >= 0.0)) {
        throw std::invalid_argument("negative perturbation at infoset '" + info.key + "'");
      }
      sum += p;
    }
    if (!(sum < 1.0)) {
      throw std::invalid_argument("perturbation infeasible at infoset '" + info.key +
                                  "': bounds sum to " + std::to_string(sum) + " over " +
                                  std::to_string(info.num_actions()) + " actions");
    }
  }
}

}  // namespace

Perturbation Perturbation::none(const ExtensiveFormGame& game) {
  return Perturbation(std::vector<double>(game.total_actions(), 0.0));
}

Perturbation Perturbation::uniform(const ExtensiveFormGame& game, double xi) {
  std::vector<double> bounds(game.total_actions(), xi);
  check_bounds(game, bounds);
  return Perturbation(std::move(bounds));
}

Perturbation Perturbation::from_bounds(const ExtensiveFormGame& game, std::vector<double> bounds) {
  check_bounds(game, bounds);
  return Perturbation(std::move(bounds));
}

double Perturbation::tau(const Infoset& info) const {
  auto p = at(info);
  return 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
}

bool Perturbation::is_zero() const {
  return std::all_of(bounds_.begin(), bounds_.end(), [](double p) { return p == 0.0; });
}

BehavioralStrategy BehavioralStrategy::uniform(const ExtensiveFormGame& game) {
  std::vector<double> probs(game.total_actions());
  for (const Infoset& info : game.infosets()) {
    const double u = 1.0 / static_cast<double>(info.num_actions());
    std::fill_n(probs.begin() + info.action_offset, info.num_actions(), u);
  }
  return BehavioralStrategy(std::move(probs));
}

BehavioralStrategy BehavioralStrategy::uniform(const ExtensiveFormGame& game,
                                               const Perturbation& perturbation) {
  BehavioralStrategy s = uniform(game);
  for (const Infoset& info : game.infosets()) {
    auto p = perturbation.at(info);
    const double share = perturbation.tau(info) / static_cast<double>(info.num_actions());
    auto out = s.at(info);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = p[a] + share;
  }
  return s;
}

void BehavioralStrategy::assign_player(const ExtensiveFormGame& game, int player,
                                       const BehavioralStrategy& source) {
  for (InfosetId id : game.infosets_of(player)) {
    const Infoset& info = game.infoset(id);
    auto from = source.at(info);
    std::copy(from.begin(), from.end(), at(info).begin());
  }
}

StrategyCheck check_strategy(const ExtensiveFormGame& game, const BehavioralStrategy& strategy,
                             const Perturbation* perturbation, double sum_tol, double bound_tol) {
  if (strategy.flat().size() != game.total_actions()) {
    return {false, "strategy size does not match the game"};
  }
  for (const Infoset& info : game.infosets()) {
    auto x = strategy.at(info);
    double sum = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double lower = perturbation ? perturbation->at(info)[a] : 0.0;
      if (!(x[a] >= lower - bound_tol)) {
        return {false, "infoset '" + info.key + "' action " + std::to_string(a) + " has " +
                           std::to_string(x[a]) + " below bound " + std::to_string(lower)};
      }
      sum += x[a];
    }
    if (std::abs(sum - 1.0) > sum_tol) {
      return {false, "infoset '" + info.key + "' sums to " + std::to_string(sum)};
    }
  }
  return {};
}

}  // namespace pcfr
