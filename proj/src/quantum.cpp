#include "bellgame/quantum.hpp"

#include <cmath>

namespace bellgame {

namespace {

bool window_contained(const std::vector<int>& inner, const std::vector<int>& outer) {
  for (int stage : inner) {
    bool found = false;
    for (int s : outer)
      if (s == stage) { found = true; break; }
    if (!found) return false;
  }
  return true;
}

}  // namespace

Index QuantumStrategy::dim() const {
  Index d = 1;
  for (int x : local_dims) d *= x;
  return d;
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat bloch_half(double vx, double vy, double vz, int sign) {
  double s = sign >= 0 ? 1.0 : -1.0;
  Mat m = Mat::Identity(2, 2) + s * (vx * pauli_x() + vy * pauli_y() + vz * pauli_z());
  return 0.5 * m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<std::string> validate_quantum(const QuantumStrategy& strategy, double tol) {
  std::vector<std::string> out;
  int n = static_cast<int>(strategy.local_dims.size());
  if (static_cast<int>(strategy.type_cards.size()) != n ||
      static_cast<int>(strategy.action_cards.size()) != n || strategy.memory.players() != n) {
    out.push_back("strategy: player counts of dims, types, actions and memory disagree");
    return out;
  }
  for (auto& d : validate_shape(strategy.shape())) out.push_back(d);

  Index dim = strategy.dim();
  if (strategy.state.rho.rows() != dim || strategy.state.rho.cols() != dim) {
    out.push_back("state: is " + std::to_string(strategy.state.rho.rows()) + "x" +
                  std::to_string(strategy.state.rho.cols()) + ", expected " +
                  std::to_string(dim) + "x" + std::to_string(dim));
  } else {
    if (!is_hermitian(strategy.state.rho, 1e-10)) out.push_back("state: not Hermitian");
    double tr = strategy.state.rho.trace().real();
    if (std::abs(tr - 1.0) > tol)
      out.push_back("state: trace = " + std::to_string(tr) + ", expected 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(
        Mat(0.5 * (strategy.state.rho + strategy.state.rho.adjoint())));
    if (es.eigenvalues().minCoeff() < -tol)
      out.push_back("state: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }

  if (static_cast<int>(strategy.families.size()) != n) {
    out.push_back("families: " + std::to_string(strategy.families.size()) + " players, expected " +
                  std::to_string(n));
    return out;
  }
  GameShape shape = strategy.shape();
  for (int i = 0; i < n; ++i) {
    const auto& fam = strategy.families[i];
    Index want = shape.setting_card(i);
    if (static_cast<Index>(fam.by_setting.size()) != want) {
      out.push_back("player " + std::to_string(i + 1) + ": " +
                    std::to_string(fam.by_setting.size()) + " settings, expected " +
                    std::to_string(want));
      continue;
    }
    int d = strategy.local_dims[i];
    for (Index x = 0; x < want; ++x) {
      const auto& povm = fam.by_setting[x];
      if (static_cast<int>(povm.size()) != strategy.action_cards[i]) {
        out.push_back("player " + std::to_string(i + 1) + " setting " + std::to_string(x) +
                      ": " + std::to_string(povm.size()) + " elements, expected " +
                      std::to_string(strategy.action_cards[i]));
        continue;
      }
      Mat sum = Mat::Zero(d, d);
      for (std::size_t a = 0; a < povm.size(); ++a) {
        const Mat& m = povm[a];
        std::string where = "player " + std::to_string(i + 1) + " setting " + std::to_string(x) +
                            " element " + std::to_string(a);
        if (m.rows() != d || m.cols() != d) {
          out.push_back(where + ": wrong dimension");
          continue;
        }
        if (!is_hermitian(m, 1e-10)) out.push_back(where + ": not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (m + m.adjoint())));
        if (es.eigenvalues().minCoeff() < -tol)
          out.push_back(where + ": negative eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
        sum += m;
      }
      double defect = (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
      if (defect > tol)
        out.push_back("player " + std::to_string(i + 1) + " setting " + std::to_string(x) +
                      ": POVM completeness defect " + std::to_string(defect));
    }
  }
  return out;
}

ConditionalDistribution evaluate_quantum_strategy(const QuantumStrategy& strategy,
                                                  const GameShape& game_shape) {
  auto diagnostics = validate_quantum(strategy);
  if (!diagnostics.empty())
    throw ValidationError("evaluate_quantum_strategy: " + diagnostics.front());
  if (strategy.type_cards != game_shape.type_cards ||
      strategy.action_cards != game_shape.action_cards)
    throw ValidationError("evaluate_quantum_strategy: strategy and game cardinalities differ");
  int n = game_shape.players();
  for (int i = 0; i < n; ++i) {
    if (!window_contained(strategy.memory.windows[i], game_shape.memory.windows[i]))
      throw ValidationError("evaluate_quantum_strategy: strategy of player " +
                            std::to_string(i + 1) +
                            " conditions on actions outside the game's memory window");
  }

  GameShape own = strategy.shape();
  Index t_space = game_shape.type_space(), a_space = game_shape.action_space();
  std::vector<double> table(t_space * a_space);
  std::vector<int> types(n), actions(n);
  const Mat& rho = strategy.state.rho;
  for (Index t = 0; t < t_space; ++t) {
    game_shape.types_at(t, types);
    double row_sum = 0.0;
    for (Index a = 0; a < a_space; ++a) {
      game_shape.actions_at(a, actions);
      Mat op = strategy.families[0]
                   .by_setting[own.setting_index(0, types[0], own.realized_history(0, actions))]
                   [actions[0]];
      for (int i = 1; i < n; ++i) {
        Index x = own.setting_index(i, types[i], own.realized_history(i, actions));
        op = kron(op, strategy.families[i].by_setting[x][actions[i]]);
      }
      double p = (op.transpose().cwiseProduct(rho)).sum().real();
      if (p < 0.0 && p > -1e-12) p = 0.0;
      table[t * a_space + a] = p;
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > 1e-8)
      throw ValidationError("evaluate_quantum_strategy: outcome law for type " +
                            std::to_string(t) + " sums to " + std::to_string(row_sum));
  }
  return ConditionalDistribution::from_table(game_shape.type_cards, game_shape.action_cards,
                                             std::move(table), 1e-8);
}

QuantumStrategy make_singlet_triangle() {
  QuantumStrategy s;
  s.local_dims = {2, 2};
  s.type_cards = {3, 3};
  s.action_cards = {2, 2};
  s.memory = Memory::no_communication(2);

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  s.state.rho = psi * psi.adjoint();

  const double r3 = std::sqrt(3.0);
  // Bloch vectors in the x-z plane; the two triangles interleave so that
  // every first-player direction bisects a pair of second-player directions.
  double v1[3][3] = {{0, 0, 1}, {r3 / 2, 0, -0.5}, {-r3 / 2, 0, -0.5}};
  double v2[3][3] = {{-0.5, 0, -r3 / 2}, {1, 0, 0}, {-0.5, 0, r3 / 2}};
  s.families.resize(2);
  for (int x = 0; x < 3; ++x) {
    s.families[0].by_setting.push_back(
        {bloch_half(v1[x][0], v1[x][1], v1[x][2], +1), bloch_half(v1[x][0], v1[x][1], v1[x][2], -1)});
    s.families[1].by_setting.push_back(
        {bloch_half(v2[x][0], v2[x][1], v2[x][2], +1), bloch_half(v2[x][0], v2[x][1], v2[x][2], -1)});
  }
  return s;
}

QuantumStrategy make_ghz_svetlichny(int n) {
  if (n < 2 || n > 10)
    throw ValidationError("make_ghz_svetlichny: party count " + std::to_string(n) +
                          " outside the supported range 2..10");
  QuantumStrategy s;
  s.local_dims.assign(n, 2);
  s.type_cards.assign(n, 2);
  s.action_cards.assign(n, 2);
  s.memory = Memory::no_communication(n);

  Index dim = Index{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(dim - 1) = 1.0 / std::sqrt(2.0);
  s.state.rho = psi * psi.adjoint();

  // First player measures (sigma_y +/- sigma_x)/sqrt(2), the others measure
  // -sigma_x or -sigma_y by type. The observables all lie in the x-y plane,
  // where GHZ correlations are cos of the summed azimuths; relabelling the
  // first player's outcomes for even n flips the overall sign to +.
  double flip = (n % 2 == 0) ? -1.0 : 1.0;
  s.families.resize(n);
  const double r2 = std::sqrt(2.0);
  for (int theta = 0; theta < 2; ++theta) {
    double sign = theta == 0 ? 1.0 : -1.0;
    double vx = flip * sign / r2, vy = flip / r2;
    s.families[0].by_setting.push_back({bloch_half(vx, vy, 0, +1), bloch_half(vx, vy, 0, -1)});
  }
  for (int i = 1; i < n; ++i) {
    for (int theta = 0; theta < 2; ++theta) {
      double vx = theta == 0 ? -1.0 : 0.0;
      double vy = theta == 0 ? 0.0 : -1.0;
      s.families[i].by_setting.push_back({bloch_half(vx, vy, 0, +1), bloch_half(vx, vy, 0, -1)});
    }
  }
  return s;
}

QuantumStrategy make_tripartite_qecd() {
  QuantumStrategy s;
  s.local_dims = {2, 2, 2};
  s.type_cards = {2, 2, 2};
  s.action_cards = {2, 2, 2};
  s.memory = Memory::from_depths({0, 1, 1});

  // Numerically optimised rank-2 state, printed to four decimals; the vectors
  // are renormalised so the state is exactly unit trace.
  const cxd i(0, 1);
  Eigen::VectorXcd psi1(8), psi2(8);
  psi1 << 0.0609 - 0.0704 * i, -0.0296 + 0.6751 * i, -0.0421 - 0.6386 * i, 0.1811 - 0.1257 * i,
      0.0260 - 0.0067 * i, -0.1178 + 0.1548 * i, 0.0949 - 0.1579 * i, 0.0634 + 0.0000 * i;
  psi2 << 0.6644 - 0.0953 * i, 0.0685 - 0.0543 * i, 0.0211 + 0.2330 * i, 0.5264 - 0.3653 * i,
      0.1728 + 0.0865 * i, 0.0251 - 0.0016 * i, -0.0332 + 0.0586 * i, 0.1845 + 0.0000 * i;
  psi1.normalize();
  psi2.normalize();
  s.state.rho = 0.5 * (psi1 * psi1.adjoint() + psi2 * psi2.adjoint());

  auto unit = [](double x, double y, double z, double* v) {
    double norm = std::sqrt(x * x + y * y + z * z);
    v[0] = x / norm;
    v[1] = y / norm;
    v[2] = z / norm;
  };
  double av[3], bv[3], cv[3];
  unit(-0.4368, -0.3031, -0.8469, av);
  unit(-0.2855, -0.9581, 0.0214, bv);
  unit(0.1391, 0.9556, -0.2599, cv);
  const double kappa = 0.4989;

  s.families.resize(3);

  // First player: a weighted projector and its complement, swapped across the
  // two types.
  Mat p = kappa * bloch_half(av[0], av[1], av[2], +1);
  Mat pc = Mat::Identity(2, 2) - p;
  s.families[0].by_setting.push_back({pc, p});  // theta_1 = 0: element 1 is the weighted one
  s.families[0].by_setting.push_back({p, pc});  // theta_1 = 1: element 0 is the weighted one

  // Second player, settings (theta_2, a_1). When theta_2 != a_1 the POVM
  // deterministically reports the opposite of a_1; when theta_2 == a_1 it is
  // the projective +/- b measurement.
  for (int theta = 0; theta < 2; ++theta) {
    for (int a1 = 0; a1 < 2; ++a1) {
      std::vector<Mat> povm(2);
      for (int a2 = 0; a2 < 2; ++a2) {
        double coef = 0.0;
        if (a2 == 1 - a1) coef += 0.5;
        if (a2 == theta) coef += 0.5;
        double bcoef = ((theta ^ a1 ^ 1) != 0) ? 0.5 : 0.0;
        double sgn = (a2 == 0) ? -1.0 : 1.0;  // -(-1)^{a_2}
        povm[a2] = coef * Mat::Identity(2, 2) +
                   sgn * bcoef * (bv[0] * pauli_x() + bv[1] * pauli_y() + bv[2] * pauli_z());
      }
      s.families[1].by_setting.push_back(std::move(povm));
    }
  }

  // Third player, settings (theta_3, a_2). Deterministic 0 when theta_3 equals
  // the received action, otherwise a projective +/- c measurement whose
  // orientation depends on a_2.
  for (int theta = 0; theta < 2; ++theta) {
    for (int a2 = 0; a2 < 2; ++a2) {
      std::vector<Mat> povm(2);
      if (theta == a2) {
        povm[0] = Mat::Identity(2, 2);
        povm[1] = Mat::Zero(2, 2);
      } else {
        for (int a3 = 0; a3 < 2; ++a3) {
          double sgn = ((a3 + a2) % 2 == 0) ? 1.0 : -1.0;
          povm[a3] = bloch_half(sgn * cv[0], sgn * cv[1], sgn * cv[2], +1);
        }
      }
      s.families[2].by_setting.push_back(std::move(povm));
    }
  }
  return s;
}

}  // namespace bellgame
