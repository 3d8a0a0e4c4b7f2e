#pragma once

#include <cstdint>

#include "bellgame/quantum.hpp"

namespace bellgame {

struct FamilyUpdate {
  MeasurementFamily family;
  double value = 0.0;
};

// Exact best response of one player's binary POVM family, all else fixed.
// Per setting, the optimum assigns outcome 0 the projector onto the strictly
// positive eigenspace of the effective operator difference. The returned
// value never drops below the current one (up to 1e-10).
FamilyUpdate best_response_update(const BellFunctional& functional,
                                  const QuantumStrategy& strategy, int player);

struct StateUpdate {
  QuantumState state;
  double value = 0.0;
};

// Replaces the state by the top eigenvector of the dual operator
// B = sum alpha * tensor(M); the new value is the top eigenvalue.
StateUpdate state_update(const BellFunctional& functional, const QuantumStrategy& strategy);

struct SeesawOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_sweeps = 500;
  int threads = 0;  // 0 = thread_budget()
};

struct SeesawResult {
  double best_value = 0.0;
  QuantumStrategy best_strategy;
  int best_restart = 0;
  std::vector<double> restart_values;  // final value of each restart
  std::vector<double> best_sweep_values;
};

// Alternating optimisation from Haar-random starts. Restart k draws from the
// substream seeded with seed + k, so runs are reproducible and restarts are
// order-independent. Binary outcomes only; the joint dimension is guarded at
// 2^10.
SeesawResult seesaw_optimize(const BellFunctional& functional,
                             const std::vector<int>& local_dims, const Memory& memory,
                             const SeesawOptions& opts = {});

// Best response value minus current value for the player's own payoff
// functional; approximately zero at a quantum equilibrium. The deviation
// keeps the conditioning structure of the strategy itself.
double quantum_equilibrium_gain(const MultistageGame& game, const QuantumStrategy& strategy,
                                int player);

}  // namespace bellgame
