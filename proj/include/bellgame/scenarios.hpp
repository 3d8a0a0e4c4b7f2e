#pragma once

#include <string>
#include <vector>

#include "bellgame/game.hpp"
#include "bellgame/quantum.hpp"

namespace bellgame {

// A named reference number attached to a scenario. Keys in use:
//   classical      exact pure-strategy bound under the scenario's memory
//   classical_ccd  same but with no communication
//   quantum        value attained by the builtin strategy (1e-9)
//   quantum_qecd   builtin value known only to printed precision (2e-2 slack)
//   nonsignaling   no-signaling polytope bound (1e-7)
//   algebraic      sum of per-type coefficient maxima, exact
struct ReferenceValue {
  std::string key;
  double value = 0.0;
  std::string note;
};

// Bundled game, its canonical functional (exact coefficients, so the exact
// reference comparisons are meaningful), an optional builtin quantum
// strategy, and the reference numbers it must reproduce.
struct ScenarioRecord {
  std::string name;
  std::string summary;
  MultistageGame game;
  BellFunctional functional;
  QuantumStrategy (*builtin)() = nullptr;
  std::vector<ReferenceValue> references;

  const Memory& memory() const { return game.memory; }
};

// Canonical catalog names, in a fixed order.
std::vector<std::string> list_scenarios();

// Accepts every canonical name plus the variant "svetlichny-3-fig2", where
// the third player is shown the first action instead of the second.
ScenarioRecord load_scenario(const std::string& name);

// Cross-checks between the payoff tensors and the functional: symmetric
// scenarios must have every player's derived functional equal the canonical
// one, the asymmetric scenario's player functionals must sum to it, and the
// zero-sum scenario's payoffs must cancel. Empty result means consistent.
std::vector<std::string> consistency_report(const ScenarioRecord& record);

}  // namespace bellgame
