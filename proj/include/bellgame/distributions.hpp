#pragma once

#include <span>
#include <vector>

#include "bellgame/shape.hpp"

namespace bellgame {

// Joint conditional distribution p(a|theta), stored as a flat table in the
// canonical cell order. Rows (one per joint type) sum to 1.
struct ConditionalDistribution {
  std::vector<int> type_cards;
  std::vector<int> action_cards;
  std::vector<double> table;

  Index type_space() const;
  Index action_space() const;
  // Tiny negative entries from finite arithmetic are clamped to zero on read.
  double at(Index type_idx, Index action_idx) const;

  // Validates shape and row sums (within tol), then renormalises each row.
  static ConditionalDistribution from_table(std::vector<int> type_cards,
                                            std::vector<int> action_cards,
                                            std::vector<double> table,
                                            double tol = 1e-9);
};

// One player's randomised decision rule sigma_i(a_i | theta_i, history),
// flattened as table[setting * action_card + action].
struct BehaviorProfile {
  std::vector<std::vector<double>> tables;
};

// A pure strategy profile: every player's lookup table from settings to
// actions. actions[i][x] is player i+1's move at setting x.
struct DeterministicStrategyProfile {
  std::vector<std::vector<int>> actions;

  bool operator==(const DeterministicStrategyProfile&) const = default;
};

// Public randomisation device: a finitely supported distribution over pure
// strategy profiles. The signal lambda is announced before play.
struct Advisor {
  std::vector<double> weights;
  std::vector<DeterministicStrategyProfile> profiles;
};

// Forward play of a pure profile for one joint type assignment.
void play_profile(const DeterministicStrategyProfile& profile, const GameShape& shape,
                  std::span<const int> types, std::span<int> actions_out);

// p(a|theta) = prod_i sigma_i(a_i | theta_i, h_i(a)). Histories only reference
// earlier stages, so the product is well defined.
ConditionalDistribution compose_behaviors(const BehaviorProfile& behaviors, const GameShape& shape);

// Point-mass distribution of a pure profile.
ConditionalDistribution strategy_distribution(const DeterministicStrategyProfile& profile,
                                              const GameShape& shape);

// Mixture of the pure-profile distributions under the advisor's weights.
ConditionalDistribution advisor_distribution(const Advisor& advisor, const GameShape& shape);

// Checks the time-ordering constraint: for every k, the marginal on the first
// k actions must not depend on the types of players k+1..n.
bool sequential_consistency_check(const ConditionalDistribution& dist, const Memory& memory,
                                  double tol = 1e-9);

}  // namespace bellgame
