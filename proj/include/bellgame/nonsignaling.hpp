#pragma once

#include <string>
#include <vector>

#include "bellgame/game.hpp"
#include "bellgame/simplex.hpp"

namespace bellgame {

// Multipartite box P(a|x) whose inputs enumerate (type, history) settings as
// free choices. Flat table cell: joint_input * output_space + joint_output,
// inputs before outputs, player 1 most significant.
struct AugmentedBox {
  std::vector<int> input_cards;
  std::vector<int> output_cards;
  std::vector<double> table;

  Index input_space() const;
  Index output_space() const;
  double at(Index input_idx, Index output_idx) const;
};

// Normalisation, nonnegativity and full no-signaling: for every player
// subset, the marginal over its outputs must not depend on its inputs.
std::vector<std::string> validate_box(const AugmentedBox& box, double tol = 1e-9);

// One-bit forward wiring for a bipartite box: the second input is chosen as a
// function of theta_2 and the first party's realised output.
struct Wiring {
  int receiver_types = 0;   // |Theta_2|
  int sender_outputs = 0;   // |A_1|
  std::vector<int> map;     // map[theta_2 * |A_1| + a_1] = x_2
};

// sum_theta max_a alpha: the ceiling of the functional over all normalised
// conditional distributions, signaling or not. Exact arithmetic.
double algebraic_max(const BellFunctional& functional);

struct NsBoundOptions {
  Index variable_guard = 100000;
};

struct NsBoundResult {
  double value = 0.0;
  AugmentedBox optimizer;
};

// Maximum of the functional over no-signaling boxes whose inputs are the
// (type, memory-window) settings of the scenario. The communication pattern
// is encoded purely in which box cells the objective touches: the functional
// only ever reads cells whose history inputs match the realised actions.
NsBoundResult ns_bound(const BellFunctional& functional, const Memory& memory,
                       const NsBoundOptions& opts = {});

// p(a_1,a_2|theta_1,theta_2) = q(a_1,a_2 | theta_1, f(theta_2, a_1)).
// No-signaling of q makes the result a valid sequential distribution.
ConditionalDistribution wire_box(const AugmentedBox& box, const Wiring& wiring);

}  // namespace bellgame
