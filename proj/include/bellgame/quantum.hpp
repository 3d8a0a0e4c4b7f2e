#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bellgame/game.hpp"

namespace bellgame {

using Mat = Eigen::MatrixXcd;
using cxd = std::complex<double>;

// Density operator on the joint Hilbert space.
struct QuantumState {
  Mat rho;
};

// One player's measurements: a POVM per (type, history) setting, one element
// per action. by_setting[x][a] acts on that player's local space.
struct MeasurementFamily {
  std::vector<std::vector<Mat>> by_setting;
};

// Shared state plus per-player measurement families. The memory field records
// which earlier actions the measurement choice may depend on; an all-empty
// memory means measurement settings are types only (no communication used).
struct QuantumStrategy {
  std::vector<int> local_dims;
  std::vector<int> type_cards;
  std::vector<int> action_cards;
  Memory memory;
  QuantumState state;
  std::vector<MeasurementFamily> families;

  GameShape shape() const { return GameShape{type_cards, action_cards, memory}; }
  Index dim() const;
};

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
// (I + v.sigma) / 2 for a Bloch vector v; the +/- pair is a binary POVM.
Mat bloch_half(double vx, double vy, double vz, int sign);
Mat kron(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& m, double tol = 1e-10);

// Hermiticity, positivity (eigenvalues >= -tol), completeness of every POVM,
// unit trace of the state, dimension bookkeeping. Diagnostics carry player /
// setting / element indices.
std::vector<std::string> validate_quantum(const QuantumStrategy& strategy, double tol = 1e-9);

// p(a|theta) = Tr[ (tensor_i M^{(theta_i, h_i(a))}_{a_i}) rho ]. The strategy
// may condition on at most the windows the game grants (its memory must be
// contained in the game's), and the result always passes the sequential
// consistency check.
ConditionalDistribution evaluate_quantum_strategy(const QuantumStrategy& strategy,
                                                  const GameShape& game_shape);

// Two-qubit singlet with the two players' measurement triangles interleaved
// at 120 degrees in the x-z plane. No communication is used.
QuantumStrategy make_singlet_triangle();

// n-partite GHZ state with the standard x-y plane measurements reaching
// 2^(n-1) * sqrt(2) on the n-party Svetlichny functional. For even n the
// first player's outcomes are relabelled so the value comes out positive.
QuantumStrategy make_ghz_svetlichny(int n);

// Three-qubit rank-2 state and history-conditioned POVMs reaching close to
// the algebraic ceiling of the tripartite Svetlichny functional when the
// second and third players see the previous action.
QuantumStrategy make_tripartite_qecd();

}  // namespace bellgame
