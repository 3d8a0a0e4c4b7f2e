#include "bellgame/classical.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace bellgame {

namespace {

std::vector<Index> setting_cards(const GameShape& shape) {
  std::vector<Index> s(shape.players());
  for (int i = 0; i < shape.players(); ++i) s[i] = shape.setting_card(i);
  return s;
}

// Flattened scenario data used by the hot enumeration loops.
struct ScanPlan {
  GameShape shape;
  int n;
  Index t_space, a_space;
  std::vector<Index> offsets;     // first digit of each player's table
  Index digit_count;
  std::vector<int> radix;         // radix of each digit (owner's action card)
  std::vector<Index> tbase;       // [t * n + i] = theta_i * H_i
  std::vector<std::vector<int>> windows;

  explicit ScanPlan(const GameShape& s) : shape(s), n(s.players()) {
    t_space = s.type_space();
    a_space = s.action_space();
    offsets.resize(n);
    Index off = 0;
    for (int i = 0; i < n; ++i) {
      offsets[i] = off;
      off += s.setting_card(i);
    }
    digit_count = off;
    radix.resize(digit_count);
    for (int i = 0; i < n; ++i)
      std::fill(radix.begin() + offsets[i],
                radix.begin() + offsets[i] + s.setting_card(i), s.action_cards[i]);
    tbase.resize(t_space * n);
    std::vector<int> types(n);
    for (Index t = 0; t < t_space; ++t) {
      s.types_at(t, types);
      for (int i = 0; i < n; ++i) tbase[t * n + i] = types[i] * s.history_card(i);
    }
    windows = s.memory.windows;
  }

  // Forward play for one joint type; returns the joint action index.
  Index play(const std::vector<int>& digits, Index t, std::vector<int>& act) const {
    Index a_idx = 0;
    for (int i = 0; i < n; ++i) {
      Index h = 0;
      for (int stage : windows[i]) h = h * shape.action_cards[stage] + act[stage];
      act[i] = digits[offsets[i] + tbase[t * n + i] + h];
      a_idx = a_idx * shape.action_cards[i] + act[i];
    }
    return a_idx;
  }

  void digits_at(std::uint64_t index, std::vector<int>& digits) const {
    for (Index d = digit_count; d-- > 0;) {
      digits[d] = static_cast<int>(index % radix[d]);
      index /= radix[d];
    }
  }

  bool advance(std::vector<int>& digits) const {
    for (Index d = digit_count; d-- > 0;) {
      if (++digits[d] < radix[d]) return true;
      digits[d] = 0;
    }
    return false;
  }

  DeterministicStrategyProfile profile_from(const std::vector<int>& digits) const {
    DeterministicStrategyProfile p;
    p.actions.resize(n);
    for (int i = 0; i < n; ++i)
      p.actions[i].assign(digits.begin() + offsets[i],
                          digits.begin() + offsets[i] + shape.setting_card(i));
    return p;
  }
};

std::uint64_t checked_count(const GameShape& shape) {
  std::uint64_t count = 1;
  for (int i = 0; i < shape.players(); ++i) {
    std::uint64_t card = static_cast<std::uint64_t>(shape.action_cards[i]);
    for (Index s = 0; s < shape.setting_card(i); ++s) {
      if (card != 0 && count > std::numeric_limits<std::uint64_t>::max() / card)
        throw SizeGuardError("profile count exceeds 2^64, scenario too large to enumerate");
      count *= card;
    }
  }
  return count;
}

void check_guard(std::uint64_t count, const EnumerationOptions& opts) {
  if (!opts.override_guard && count > opts.guard)
    throw SizeGuardError("enumeration of " + std::to_string(count) +
                         " profiles exceeds the guard of " + std::to_string(opts.guard) +
                         " (raise the guard to proceed)");
}

struct ChunkBest {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
};

// Scans [begin, end), tracking the first profile maximising sum_t c[cell].
ChunkBest best_in_range(const ScanPlan& plan, const std::vector<double>& coeffs,
                        std::uint64_t begin, std::uint64_t end) {
  std::vector<int> digits(plan.digit_count);
  plan.digits_at(begin, digits);
  std::vector<int> act(plan.n);
  ChunkBest best;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    double value = 0.0;
    for (Index t = 0; t < plan.t_space; ++t)
      value += coeffs[t * plan.a_space + plan.play(digits, t, act)];
    if (value > best.value) {
      best.value = value;
      best.index = idx;
    }
    plan.advance(digits);
  }
  return best;
}

ClassicalBoundResult bound_core(const GameShape& shape, const std::vector<double>& coeffs,
                                const EnumerationOptions& opts) {
  ScanPlan plan(shape);
  std::uint64_t count = checked_count(shape);
  check_guard(count, opts);
  if (count == 0) throw ValidationError("scenario has no pure profiles");

  int threads = opts.threads > 0 ? opts.threads : thread_budget();
  ChunkBest best;
  if (threads > 1 && count >= (std::uint64_t{1} << 18)) {
    std::uint64_t chunks = std::min<std::uint64_t>(threads, count);
    std::vector<std::future<ChunkBest>> futs;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      std::uint64_t begin = count / chunks * c + std::min<std::uint64_t>(c, count % chunks);
      std::uint64_t end = begin + count / chunks + (c < count % chunks ? 1 : 0);
      futs.push_back(std::async(std::launch::async, [&plan, &coeffs, begin, end] {
        return best_in_range(plan, coeffs, begin, end);
      }));
    }
    for (auto& f : futs) {
      ChunkBest b = f.get();
      if (b.value > best.value || (b.value == best.value && b.index < best.index)) best = b;
    }
  } else {
    best = best_in_range(plan, coeffs, 0, count);
  }

  ClassicalBoundResult result;
  result.value = best.value;
  result.witness_index = best.index;
  result.profile_count = count;
  std::vector<int> digits(plan.digit_count);
  plan.digits_at(best.index, digits);
  result.witness = plan.profile_from(digits);
  return result;
}

}  // namespace

ProfileEnumerator::ProfileEnumerator(GameShape shape) : shape_(std::move(shape)) {
  auto diagnostics = validate_shape(shape_);
  if (!diagnostics.empty()) throw ValidationError("enumerate: " + diagnostics.front());
  count_ = checked_count(shape_);
  setting_cards_ = setting_cards(shape_);
}

DeterministicStrategyProfile ProfileEnumerator::at(std::uint64_t index) const {
  ScanPlan plan(shape_);
  std::vector<int> digits(plan.digit_count);
  plan.digits_at(index, digits);
  return plan.profile_from(digits);
}

void ProfileEnumerator::visit(
    std::uint64_t begin, std::uint64_t end,
    const std::function<void(const DeterministicStrategyProfile&, std::uint64_t)>& fn) const {
  ScanPlan plan(shape_);
  std::vector<int> digits(plan.digit_count);
  plan.digits_at(begin, digits);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    fn(plan.profile_from(digits), idx);
    plan.advance(digits);
  }
}

ClassicalBoundResult classical_bound(const BellFunctional& functional, const Memory& memory,
                                     const EnumerationOptions& opts) {
  GameShape shape = functional.shape_with(memory);
  auto diagnostics = validate_shape(shape);
  if (!diagnostics.empty()) throw ValidationError("classical_bound: " + diagnostics.front());
  if (static_cast<Index>(functional.coefficients.size()) != shape.cells())
    throw ValidationError("classical_bound: coefficient tensor has " +
                          std::to_string(functional.coefficients.size()) + " entries, expected " +
                          std::to_string(shape.cells()));
  return bound_core(shape, functional.coefficients, opts);
}

ClassicalBoundResult support_function(const MultistageGame& game, const PayoffWeights& weights,
                                      const Memory& memory, const EnumerationOptions& opts) {
  auto diagnostics = validate_game(game);
  if (!diagnostics.empty()) throw ValidationError("support_function: " + diagnostics.front());
  if (weights.beta.size() != game.payoffs.size())
    throw ValidationError("support_function: " + std::to_string(weights.beta.size()) +
                          " weights for " + std::to_string(game.payoffs.size()) + " players");
  GameShape shape{game.type_cards, game.action_cards, memory};
  Index t_space = shape.type_space(), a_space = shape.action_space();
  // Combine payoffs before applying the prior so that integer payoff data
  // stays exact as long as p(theta) * u is exactly representable.
  std::vector<double> coeffs(t_space * a_space);
  for (Index t = 0; t < t_space; ++t) {
    double w = game.joint_prior(t);
    for (Index a = 0; a < a_space; ++a) {
      double u = 0.0;
      for (std::size_t j = 0; j < game.payoffs.size(); ++j)
        u += weights.beta[j] * game.payoffs[j][t * a_space + a];
      coeffs[t * a_space + a] = w * u;
    }
  }
  return bound_core(shape, coeffs, opts);
}

std::vector<std::vector<double>> payoff_vertices(const MultistageGame& game, const Memory& memory,
                                                 const EnumerationOptions& opts, double dedup_tol) {
  auto diagnostics = validate_game(game);
  if (!diagnostics.empty()) throw ValidationError("payoff_vertices: " + diagnostics.front());
  GameShape shape{game.type_cards, game.action_cards, memory};
  ScanPlan plan(shape);
  std::uint64_t count = checked_count(shape);
  check_guard(count, opts);

  int n = game.players();
  Index a_space = plan.a_space;
  std::vector<double> prior = game.joint_prior_table();
  std::vector<std::vector<double>> unique;
  std::vector<int> digits(plan.digit_count), act(n);
  std::vector<double> point(n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::fill(point.begin(), point.end(), 0.0);
    for (Index t = 0; t < plan.t_space; ++t) {
      Index cell = t * a_space + plan.play(digits, t, act);
      for (int j = 0; j < n; ++j) point[j] += prior[t] * game.payoffs[j][cell];
    }
    bool seen = false;
    for (const auto& q : unique) {
      double dist = 0.0;
      for (int j = 0; j < n; ++j) dist = std::max(dist, std::abs(q[j] - point[j]));
      if (dist <= dedup_tol) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(point);
    plan.advance(digits);
  }
  return unique;
}

double deviation_gain(const MultistageGame& game, const Advisor& advisor, int player) {
  auto diagnostics = validate_game(game);
  if (!diagnostics.empty()) throw ValidationError("deviation_gain: " + diagnostics.front());
  if (player < 0 || player >= game.players())
    throw ValidationError("deviation_gain: player index out of range");
  if (advisor.profiles.empty()) throw ValidationError("deviation_gain: advisor has empty support");
  if (advisor.weights.size() != advisor.profiles.size())
    throw ValidationError("deviation_gain: weights/profiles size mismatch");

  GameShape shape = game.shape();
  int n = game.players();
  int cand = game.action_cards[player];
  Index settings = shape.setting_card(player);
  const auto& u = game.payoffs[player];
  std::vector<double> prior = game.joint_prior_table();
  Index t_space = shape.type_space(), a_space = shape.action_space();

  // q[x * cand + a] accumulates the prior-weighted payoff of playing a at the
  // deviator's information set x, with everyone else following the signal.
  // Upstream players never see the deviator's move, so information sets are
  // reached with policy-independent probability and pointwise maximisation
  // over each (lambda, x) cell is an exact best response.
  std::vector<double> q(settings * cand);
  std::vector<int> types(n), act(n);
  double gain = 0.0;
  for (std::size_t l = 0; l < advisor.profiles.size(); ++l) {
    const auto& profile = advisor.profiles[l];
    for (int i = 0; i < n; ++i) {
      if (static_cast<Index>(profile.actions[i].size()) != shape.setting_card(i))
        throw ValidationError("deviation_gain: profile " + std::to_string(l + 1) +
                              " has a lookup table of wrong size for player " +
                              std::to_string(i + 1));
    }
    std::fill(q.begin(), q.end(), 0.0);
    for (Index t = 0; t < t_space; ++t) {
      shape.types_at(t, types);
      // Upstream stages are fixed by the signal regardless of the deviation.
      for (int i = 0; i < player; ++i) {
        Index x = shape.setting_index(i, types[i], shape.realized_history(i, act));
        act[i] = profile.actions[i][x];
      }
      Index x_dev = shape.setting_index(player, types[player],
                                        shape.realized_history(player, act));
      for (int a = 0; a < cand; ++a) {
        act[player] = a;
        for (int i = player + 1; i < n; ++i) {
          Index x = shape.setting_index(i, types[i], shape.realized_history(i, act));
          act[i] = profile.actions[i][x];
        }
        q[x_dev * cand + a] += prior[t] * u[t * a_space + shape.action_index(act)];
      }
    }
    double profile_gain = 0.0;
    for (Index x = 0; x < settings; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < cand; ++a) best = std::max(best, q[x * cand + a]);
      profile_gain += best - q[x * cand + profile.actions[player][x]];
    }
    gain += advisor.weights[l] * profile_gain;
  }
  return gain;
}

bool is_correlated_equilibrium(const MultistageGame& game, const Advisor& advisor, double tol) {
  for (int i = 0; i < game.players(); ++i)
    if (deviation_gain(game, advisor, i) > tol) return false;
  return true;
}

}  // namespace bellgame
