#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "bellgame/game.hpp"

namespace bellgame {

struct EnumerationOptions {
  // Refuse scenarios with more pure profiles than this unless overridden.
  std::uint64_t guard = std::uint64_t{1} << 26;
  bool override_guard = false;
  int threads = 0;  // 0 = thread_budget()
};

// Pure strategy profiles of a scenario, in lexicographic order of the
// concatenated per-player lookup tables (player 1's table is most
// significant, the last setting of the last player moves fastest).
class ProfileEnumerator {
 public:
  explicit ProfileEnumerator(GameShape shape);

  // Total profile count prod_i |A_i|^(S_i); throws SizeGuardError on 64-bit
  // overflow, which is treated as "scenario too large to enumerate".
  std::uint64_t count() const { return count_; }
  DeterministicStrategyProfile at(std::uint64_t index) const;
  const GameShape& shape() const { return shape_; }

  // Visits profiles [begin, end) in order.
  void visit(std::uint64_t begin, std::uint64_t end,
             const std::function<void(const DeterministicStrategyProfile&, std::uint64_t)>& fn) const;

 private:
  GameShape shape_;
  std::uint64_t count_ = 1;
  std::vector<Index> setting_cards_;  // per player
};

struct ClassicalBoundResult {
  double value = 0.0;
  DeterministicStrategyProfile witness;
  std::uint64_t witness_index = 0;
  std::uint64_t profile_count = 0;
};

// Exact maximum of the functional over pure profiles with the given memory.
// The witness is the first maximiser in enumeration order.
ClassicalBoundResult classical_bound(const BellFunctional& functional, const Memory& memory,
                                     const EnumerationOptions& opts = {});

// max over pure profiles of sum_j beta_j U_j (the support function of the
// reachable payoff set; the offset in weights is not added).
ClassicalBoundResult support_function(const MultistageGame& game, const PayoffWeights& weights,
                                      const Memory& memory, const EnumerationOptions& opts = {});

// All payoff vectors (U_1..U_n) reachable by pure profiles, deduplicated
// within dedup_tol in the max norm.
std::vector<std::vector<double>> payoff_vertices(const MultistageGame& game, const Memory& memory,
                                                 const EnumerationOptions& opts = {},
                                                 double dedup_tol = 1e-9);

// Best improvement a single player can secure by deviating from the advisor's
// recommendations. The deviator sees the public signal lambda, their own type
// and their memory window, and downstream players react to the actions
// actually played. Exact, and always >= 0.
double deviation_gain(const MultistageGame& game, const Advisor& advisor, int player);

// True when no player gains more than tol by deviating.
bool is_correlated_equilibrium(const MultistageGame& game, const Advisor& advisor,
                               double tol = 1e-9);

}  // namespace bellgame
