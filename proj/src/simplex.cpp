#include "bellgame/simplex.hpp"

#include <cmath>
#include <limits>

namespace bellgame {

namespace {

// Tableau with one artificial variable per row. Columns: vars real columns,
// then m artificials, then the rhs.
struct Tableau {
  Index m, n, cols;
  std::vector<double> a;       // m x cols
  std::vector<Index> basis;    // basic variable of each row
  double tol;

  double& at(Index r, Index c) { return a[r * cols + c]; }
  double at(Index r, Index c) const { return a[r * cols + c]; }

  void pivot(Index row, Index col) {
    double p = at(row, col);
    for (Index c = 0; c < cols; ++c) at(row, c) /= p;
    for (Index r = 0; r < m; ++r) {
      if (r == row) continue;
      double f = at(r, col);
      if (f == 0.0) continue;
      for (Index c = 0; c < cols; ++c) at(r, c) -= f * at(row, c);
      at(r, col) = 0.0;
    }
    basis[row] = col;
  }

  // Bland's rule: entering variable is the lowest-index column with positive
  // reduced cost, leaving variable is the lowest-index basic variable among
  // the minimum-ratio rows. Maximises cost.x over the current columns.
  // Returns false when unbounded.
  bool run(const std::vector<double>& cost, Index active_cols) {
    while (true) {
      // Reduced costs from scratch each iteration keeps the logic simple and
      // is fine at these sizes.
      Index enter = -1;
      for (Index j = 0; j < active_cols; ++j) {
        bool basic = false;
        for (Index r = 0; r < m; ++r)
          if (basis[r] == j) { basic = true; break; }
        if (basic) continue;
        double rc = cost[j];
        for (Index r = 0; r < m; ++r) rc -= cost[basis[r]] * at(r, j);
        if (rc > tol) { enter = j; break; }
      }
      if (enter < 0) return true;

      Index leave = -1;
      double best_ratio = 0.0;
      for (Index r = 0; r < m; ++r) {
        double coef = at(r, enter);
        if (coef > tol) {
          double ratio = at(r, cols - 1) / coef;
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
            leave = r;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double tol) {
  Index m = static_cast<Index>(lp.rows.size());
  Index n = lp.vars;
  for (const auto& row : lp.rows)
    if (static_cast<Index>(row.size()) != n)
      throw ValidationError("linear program row width does not match variable count");
  if (static_cast<Index>(lp.rhs.size()) != m)
    throw ValidationError("linear program rhs length does not match row count");

  Tableau t;
  t.m = m;
  t.n = n;
  t.cols = n + m + 1;
  t.tol = tol;
  t.a.assign(m * t.cols, 0.0);
  t.basis.resize(m);
  for (Index r = 0; r < m; ++r) {
    double sign = lp.rhs[r] < 0.0 ? -1.0 : 1.0;
    for (Index c = 0; c < n; ++c) t.at(r, c) = sign * lp.rows[r][c];
    t.at(r, n + r) = 1.0;
    t.at(r, t.cols - 1) = sign * lp.rhs[r];
    t.basis[r] = n + r;
  }

  LpResult result;

  // Phase 1: drive the artificial variables to zero.
  std::vector<double> phase1(n + m, 0.0);
  for (Index r = 0; r < m; ++r) phase1[n + r] = -1.0;
  t.run(phase1, n + m);
  double infeas = 0.0;
  for (Index r = 0; r < m; ++r)
    if (t.basis[r] >= n) infeas += t.at(r, t.cols - 1);
  if (infeas > tol * std::max<Index>(1, m)) {
    result.status = LpResult::Status::Infeasible;
    return result;
  }

  // Pivot leftover artificials out of the basis; an all-zero row is a
  // redundant constraint and is neutralised by keeping its artificial fixed
  // at zero level.
  for (Index r = 0; r < m; ++r) {
    if (t.basis[r] < n) continue;
    Index col = -1;
    for (Index c = 0; c < n; ++c)
      if (std::abs(t.at(r, c)) > tol) { col = c; break; }
    if (col >= 0) t.pivot(r, col);
  }

  // Phase 2: original objective, artificial columns frozen.
  std::vector<double> cost(n + m, 0.0);
  for (Index c = 0; c < n; ++c) cost[c] = lp.objective[c];
  if (!t.run(cost, n)) {
    result.status = LpResult::Status::Unbounded;
    return result;
  }

  result.solution.assign(n, 0.0);
  for (Index r = 0; r < m; ++r)
    if (t.basis[r] < n) result.solution[t.basis[r]] = t.at(r, t.cols - 1);
  for (Index c = 0; c < n; ++c)
    if (result.solution[c] < 0.0 && result.solution[c] > -tol) result.solution[c] = 0.0;
  result.objective = 0.0;
  for (Index c = 0; c < n; ++c) result.objective += lp.objective[c] * result.solution[c];
  return result;
}

}  // namespace bellgame
