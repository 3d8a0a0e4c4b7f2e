#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellgame/distributions.hpp"
#include "bellgame/shape.hpp"

namespace bellgame {

// Multistage game of incomplete information. Players act in index order; each
// player knows their own type and the actions in their memory window. Payoff
// tensors are flat in the canonical cell order (types then actions).
struct MultistageGame {
  std::vector<int> type_cards;
  std::vector<int> action_cards;
  Memory memory;
  std::vector<std::vector<double>> prior;    // per player, independent type laws
  std::vector<std::vector<double>> payoffs;  // per player, size cells()

  int players() const { return static_cast<int>(type_cards.size()); }
  GameShape shape() const { return GameShape{type_cards, action_cards, memory}; }
  // Product prior p(theta) for a joint type index.
  double joint_prior(Index type_idx) const;
  std::vector<double> joint_prior_table() const;
};

// Diagnostics for cardinality, memory, prior normalisation (1e-12) and payoff
// tensor sizes. Empty result means well-formed.
std::vector<std::string> validate_game(const MultistageGame& game);

struct ReferenceBounds {
  std::optional<double> classical;
  std::optional<double> quantum;
  std::optional<double> nonsignaling;
};

// Linear functional on conditional distributions: sum_{theta,a} alpha * p(a|theta).
struct BellFunctional {
  std::vector<int> type_cards;
  std::vector<int> action_cards;
  std::vector<double> coefficients;  // size cells()
  std::optional<ReferenceBounds> reference_bounds;

  GameShape shape_with(const Memory& memory) const {
    return GameShape{type_cards, action_cards, memory};
  }
  Index cells() const;
};

// Direction (and optional offset) in payoff space, used for support queries
// over the set of reachable payoff vectors.
struct PayoffWeights {
  std::vector<double> beta;
  double offset = 0.0;
};

// U_player = sum_{theta,a} p(theta) p(a|theta) u_player(a,theta).
double expected_payoff(const MultistageGame& game, const ConditionalDistribution& dist, int player);

// Value of the functional at a distribution.
double functional_value(const BellFunctional& functional, const ConditionalDistribution& dist);

// alpha_{a,theta} = p(theta) * u_player(a,theta). Expected payoff becomes the
// functional value, which ties game analysis to Bell-inequality analysis.
BellFunctional functional_from_game(const MultistageGame& game, int player);

// Inverse direction: a symmetric game whose every player has payoff
// alpha / p(theta). Requires a strictly positive prior.
MultistageGame game_from_functional(const BellFunctional& functional,
                                    std::vector<std::vector<double>> prior, Memory memory);

}  // namespace bellgame
