#include "bellgame/distributions.hpp"

#include <cmath>
#include <numeric>

namespace bellgame {

namespace {

Index product(const std::vector<int>& cards) {
  Index p = 1;
  for (int c : cards) p *= c;
  return p;
}

}  // namespace

Index ConditionalDistribution::type_space() const { return product(type_cards); }
Index ConditionalDistribution::action_space() const { return product(action_cards); }

double ConditionalDistribution::at(Index type_idx, Index action_idx) const {
  double v = table[type_idx * action_space() + action_idx];
  return v < 0.0 ? 0.0 : v;
}

ConditionalDistribution ConditionalDistribution::from_table(std::vector<int> type_cards,
                                                            std::vector<int> action_cards,
                                                            std::vector<double> table,
                                                            double tol) {
  ConditionalDistribution d{std::move(type_cards), std::move(action_cards), std::move(table)};
  Index t_space = d.type_space(), a_space = d.action_space();
  if (static_cast<Index>(d.table.size()) != t_space * a_space)
    throw ValidationError("distribution table has " + std::to_string(d.table.size()) +
                          " entries, expected " + std::to_string(t_space * a_space));
  for (Index t = 0; t < t_space; ++t) {
    double sum = 0.0;
    for (Index a = 0; a < a_space; ++a) {
      double v = d.table[t * a_space + a];
      if (v < -1e-12)
        throw ValidationError("distribution entry at type " + std::to_string(t) + ", action " +
                              std::to_string(a) + " is negative: " + std::to_string(v));
      if (v < 0.0) d.table[t * a_space + a] = 0.0;
      sum += d.table[t * a_space + a];
    }
    if (std::abs(sum - 1.0) > tol)
      throw ValidationError("distribution row for type " + std::to_string(t) +
                            " sums to " + std::to_string(sum) + ", expected 1");
    if (sum != 1.0) {
      for (Index a = 0; a < a_space; ++a) d.table[t * a_space + a] /= sum;
    }
  }
  return d;
}

void play_profile(const DeterministicStrategyProfile& profile, const GameShape& shape,
                  std::span<const int> types, std::span<int> actions_out) {
  int n = shape.players();
  for (int i = 0; i < n; ++i) {
    Index h = shape.realized_history(i, actions_out);
    Index x = shape.setting_index(i, types[i], h);
    actions_out[i] = profile.actions[i][x];
  }
}

ConditionalDistribution compose_behaviors(const BehaviorProfile& behaviors, const GameShape& shape) {
  int n = shape.players();
  if (static_cast<int>(behaviors.tables.size()) != n)
    throw ValidationError("behavior profile has " + std::to_string(behaviors.tables.size()) +
                          " players, shape has " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    std::size_t expect = static_cast<std::size_t>(shape.setting_card(i)) * shape.action_cards[i];
    if (behaviors.tables[i].size() != expect)
      throw ValidationError("behavior table of player " + std::to_string(i + 1) + " has " +
                            std::to_string(behaviors.tables[i].size()) + " entries, expected " +
                            std::to_string(expect));
  }
  Index t_space = shape.type_space(), a_space = shape.action_space();
  std::vector<double> table(t_space * a_space);
  std::vector<int> types(n), actions(n);
  for (Index t = 0; t < t_space; ++t) {
    shape.types_at(t, types);
    for (Index a = 0; a < a_space; ++a) {
      shape.actions_at(a, actions);
      double p = 1.0;
      for (int i = 0; i < n && p != 0.0; ++i) {
        Index x = shape.setting_index(i, types[i], shape.realized_history(i, actions));
        p *= behaviors.tables[i][x * shape.action_cards[i] + actions[i]];
      }
      table[t * a_space + a] = p;
    }
  }
  return ConditionalDistribution{shape.type_cards, shape.action_cards, std::move(table)};
}

ConditionalDistribution strategy_distribution(const DeterministicStrategyProfile& profile,
                                              const GameShape& shape) {
  int n = shape.players();
  Index t_space = shape.type_space(), a_space = shape.action_space();
  std::vector<double> table(t_space * a_space, 0.0);
  std::vector<int> types(n), actions(n);
  for (Index t = 0; t < t_space; ++t) {
    shape.types_at(t, types);
    play_profile(profile, shape, types, actions);
    table[t * a_space + shape.action_index(actions)] = 1.0;
  }
  return ConditionalDistribution{shape.type_cards, shape.action_cards, std::move(table)};
}

ConditionalDistribution advisor_distribution(const Advisor& advisor, const GameShape& shape) {
  if (advisor.profiles.empty()) throw ValidationError("advisor has empty support");
  if (advisor.weights.size() != advisor.profiles.size())
    throw ValidationError("advisor has " + std::to_string(advisor.weights.size()) +
                          " weights for " + std::to_string(advisor.profiles.size()) + " profiles");
  double wsum = std::accumulate(advisor.weights.begin(), advisor.weights.end(), 0.0);
  if (std::abs(wsum - 1.0) > 1e-9)
    throw ValidationError("advisor weights sum to " + std::to_string(wsum) + ", expected 1");
  for (double w : advisor.weights)
    if (w < -1e-12) throw ValidationError("advisor weight is negative");

  Index t_space = shape.type_space(), a_space = shape.action_space();
  std::vector<double> table(t_space * a_space, 0.0);
  int n = shape.players();
  std::vector<int> types(n), actions(n);
  for (std::size_t l = 0; l < advisor.profiles.size(); ++l) {
    double w = advisor.weights[l] < 0.0 ? 0.0 : advisor.weights[l];
    for (Index t = 0; t < t_space; ++t) {
      shape.types_at(t, types);
      play_profile(advisor.profiles[l], shape, types, actions);
      table[t * a_space + shape.action_index(actions)] += w;
    }
  }
  return ConditionalDistribution::from_table(shape.type_cards, shape.action_cards,
                                             std::move(table), 1e-9);
}

bool sequential_consistency_check(const ConditionalDistribution& dist, const Memory& memory,
                                  double tol) {
  int n = static_cast<int>(dist.type_cards.size());
  if (memory.players() != n)
    throw ValidationError("memory has " + std::to_string(memory.players()) +
                          " entries, distribution has " + std::to_string(n) + " players");
  Index a_space = dist.action_space();
  std::vector<int> types(n), actions(n);

  // For each prefix length k, the marginal over a_1..a_k may only depend on
  // theta_1..theta_k. Compare against the representative with the remaining
  // types set to zero.
  for (int k = 1; k < n; ++k) {
    Index prefix_types = 1, prefix_actions = 1;
    for (int i = 0; i < k; ++i) {
      prefix_types *= dist.type_cards[i];
      prefix_actions *= dist.action_cards[i];
    }
    Index suffix_types = dist.type_space() / prefix_types;
    Index suffix_actions = a_space / prefix_actions;
    for (Index tp = 0; tp < prefix_types; ++tp) {
      for (Index ap = 0; ap < prefix_actions; ++ap) {
        double ref = 0.0;
        for (Index ts = 0; ts < suffix_types; ++ts) {
          double m = 0.0;
          Index t = tp * suffix_types + ts;
          for (Index as = 0; as < suffix_actions; ++as) m += dist.at(t, ap * suffix_actions + as);
          if (ts == 0) {
            ref = m;
          } else if (std::abs(m - ref) > tol) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace bellgame
