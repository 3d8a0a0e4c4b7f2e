#pragma once

#include <vector>

#include "bellgame/shape.hpp"

namespace bellgame {

// Equality-form linear program: maximize c.x subject to A x = b, x >= 0.
// Rows may be redundant; the solver tolerates and drops them.
struct LinearProgram {
  Index vars = 0;
  std::vector<double> objective;          // size vars
  std::vector<std::vector<double>> rows;  // each of size vars
  std::vector<double> rhs;                // one per row
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> solution;
};

// Dense two-phase primal simplex with Bland's rule, so pivoting is
// deterministic and cannot cycle. Intended for the small polytopes that show
// up here; no external solver is involved.
LpResult solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace bellgame
