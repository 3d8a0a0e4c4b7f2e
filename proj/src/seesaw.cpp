#include "bellgame/seesaw.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <random>

namespace bellgame {

namespace {

constexpr double kEigCut = 1e-12;  // eigenvalues above this count as positive

void require_compatible(const BellFunctional& functional, const QuantumStrategy& strategy,
                        const char* what) {
  if (functional.type_cards != strategy.type_cards ||
      functional.action_cards != strategy.action_cards)
    throw ValidationError(std::string(what) + ": functional and strategy cardinalities differ");
}

// Sum over branches of alpha * tensor_j op_j with the given player's slot
// replaced by the identity, bucketed by that player's (setting, action).
// Contracting bucket G against rho and tracing out everyone else yields the
// effective operators F^x_a with value = sum_x sum_a Tr[M^x_a F^x_a].
struct EffectiveOperators {
  std::vector<std::vector<Mat>> f;  // [setting][action], d_i x d_i
};

EffectiveOperators effective_operators(const BellFunctional& functional,
                                       const QuantumStrategy& strategy, int player) {
  GameShape shape = strategy.shape();
  int n = shape.players();
  Index t_space = shape.type_space(), a_space = shape.action_space();
  Index dim = strategy.dim();
  int d = strategy.local_dims[player];

  Index settings = shape.setting_card(player);
  int outcomes = strategy.action_cards[player];
  std::vector<std::vector<Mat>> buckets(settings, std::vector<Mat>(outcomes, Mat::Zero(dim, dim)));

  std::vector<int> types(n), actions(n);
  for (Index t = 0; t < t_space; ++t) {
    shape.types_at(t, types);
    for (Index a = 0; a < a_space; ++a) {
      double alpha = functional.coefficients[t * a_space + a];
      if (alpha == 0.0) continue;
      shape.actions_at(a, actions);
      Mat op = Mat::Identity(1, 1);
      for (int j = 0; j < n; ++j) {
        if (j == player) {
          op = kron(op, Mat::Identity(strategy.local_dims[j], strategy.local_dims[j]));
        } else {
          Index x = shape.setting_index(j, types[j], shape.realized_history(j, actions));
          op = kron(op, strategy.families[j].by_setting[x][actions[j]]);
        }
      }
      Index x = shape.setting_index(player, types[player],
                                    shape.realized_history(player, actions));
      buckets[x][actions[player]] += alpha * op;
    }
  }

  // Stride of the player's slot in the joint row-major index.
  Index stride = 1;
  for (int j = n - 1; j > player; --j) stride *= strategy.local_dims[j];

  EffectiveOperators eff;
  eff.f.assign(settings, std::vector<Mat>(outcomes));
  const Mat& rho = strategy.state.rho;
  for (Index x = 0; x < settings; ++x) {
    for (int a = 0; a < outcomes; ++a) {
      // F(s, t) = sum_r with slot digit s of [G rho]_{r, r with digit t}.
      Mat f = Mat::Zero(d, d);
      const Mat& g = buckets[x][a];
      for (Index r = 0; r < dim; ++r) {
        Index s = (r / stride) % d;
        Index base = r - s * stride;
        for (int tt = 0; tt < d; ++tt) {
          Index c = base + tt * stride;
          f(s, tt) += (g.row(r) * rho.col(c))(0, 0);
        }
      }
      eff.f[x][a] = 0.5 * (f + f.adjoint());
    }
  }
  return eff;
}

MeasurementFamily random_family(std::mt19937_64& rng, Index settings, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MeasurementFamily fam;
  for (Index x = 0; x < settings; ++x) {
    Eigen::VectorXcd w(d);
    for (int k = 0; k < d; ++k) w(k) = cxd(gauss(rng), gauss(rng));
    w.normalize();
    Mat m0 = w * w.adjoint();
    fam.by_setting.push_back({m0, Mat::Identity(d, d) - m0});
  }
  return fam;
}

QuantumState random_state(std::mt19937_64& rng, Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Index k = 0; k < dim; ++k) v(k) = cxd(gauss(rng), gauss(rng));
  v.normalize();
  return QuantumState{v * v.adjoint()};
}

double strategy_value(const BellFunctional& functional, const QuantumStrategy& strategy) {
  return functional_value(functional, evaluate_quantum_strategy(strategy, strategy.shape()));
}

struct RestartOutcome {
  double value = 0.0;
  QuantumStrategy strategy;
  std::vector<double> sweep_values;
};

RestartOutcome run_restart(const BellFunctional& functional, const std::vector<int>& local_dims,
                           const Memory& memory, std::uint64_t seed, double tol, int max_sweeps) {
  std::mt19937_64 rng(seed);
  int n = static_cast<int>(local_dims.size());
  QuantumStrategy qs;
  qs.local_dims = local_dims;
  qs.type_cards = functional.type_cards;
  qs.action_cards = functional.action_cards;
  qs.memory = memory;
  GameShape shape = qs.shape();
  qs.state = random_state(rng, qs.dim());
  qs.families.resize(n);
  for (int i = 0; i < n; ++i)
    qs.families[i] = random_family(rng, shape.setting_card(i), local_dims[i]);

  RestartOutcome out;
  out.value = strategy_value(functional, qs);
  out.sweep_values.push_back(out.value);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double before = out.value;
    for (int i = 0; i < n; ++i) {
      FamilyUpdate up = best_response_update(functional, qs, i);
      qs.families[i] = std::move(up.family);
      out.value = up.value;
    }
    StateUpdate su = state_update(functional, qs);
    qs.state = std::move(su.state);
    out.value = su.value;
    out.sweep_values.push_back(out.value);
    if (out.value - before < tol) break;
  }
  out.strategy = std::move(qs);
  return out;
}

}  // namespace

FamilyUpdate best_response_update(const BellFunctional& functional,
                                  const QuantumStrategy& strategy, int player) {
  require_compatible(functional, strategy, "best_response_update");
  if (player < 0 || player >= static_cast<int>(strategy.local_dims.size()))
    throw ValidationError("best_response_update: player index out of range");
  if (strategy.action_cards[player] != 2)
    throw ValidationError("best_response_update: only binary outcomes are supported");

  EffectiveOperators eff = effective_operators(functional, strategy, player);
  int d = strategy.local_dims[player];

  FamilyUpdate up;
  up.value = 0.0;
  for (auto& fx : eff.f) {
    // value contribution = Tr[M_0 (F_0 - F_1)] + Tr[F_1]; the best M_0 is the
    // projector onto the strictly positive eigenspace of the difference.
    Mat delta = fx[0] - fx[1];
    Eigen::SelfAdjointEigenSolver<Mat> es(delta);
    Mat m0 = Mat::Zero(d, d);
    double gain = 0.0;
    for (int k = 0; k < d; ++k) {
      if (es.eigenvalues()(k) > kEigCut) {
        m0 += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        gain += es.eigenvalues()(k);
      }
    }
    up.value += gain + fx[1].trace().real();
    up.family.by_setting.push_back({m0, Mat::Identity(d, d) - m0});
  }
  return up;
}

StateUpdate state_update(const BellFunctional& functional, const QuantumStrategy& strategy) {
  require_compatible(functional, strategy, "state_update");
  GameShape shape = strategy.shape();
  int n = shape.players();
  Index t_space = shape.type_space(), a_space = shape.action_space();
  Index dim = strategy.dim();

  Mat b = Mat::Zero(dim, dim);
  std::vector<int> types(n), actions(n);
  for (Index t = 0; t < t_space; ++t) {
    shape.types_at(t, types);
    for (Index a = 0; a < a_space; ++a) {
      double alpha = functional.coefficients[t * a_space + a];
      if (alpha == 0.0) continue;
      shape.actions_at(a, actions);
      Mat op = strategy.families[0]
                   .by_setting[shape.setting_index(0, types[0], shape.realized_history(0, actions))]
                   [actions[0]];
      for (int j = 1; j < n; ++j) {
        Index x = shape.setting_index(j, types[j], shape.realized_history(j, actions));
        op = kron(op, strategy.families[j].by_setting[x][actions[j]]);
      }
      b += alpha * op;
    }
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (b + b.adjoint())));
  Index top = dim - 1;  // ascending order
  StateUpdate up;
  up.value = es.eigenvalues()(top);
  Eigen::VectorXcd v = es.eigenvectors().col(top);
  up.state.rho = v * v.adjoint();
  return up;
}

SeesawResult seesaw_optimize(const BellFunctional& functional,
                             const std::vector<int>& local_dims, const Memory& memory,
                             const SeesawOptions& opts) {
  int n = static_cast<int>(local_dims.size());
  if (static_cast<int>(functional.type_cards.size()) != n)
    throw ValidationError("seesaw_optimize: dims and functional player counts differ");
  for (int a : functional.action_cards)
    if (a != 2) throw ValidationError("seesaw_optimize: only binary outcomes are supported");
  Index dim = 1;
  for (int d : local_dims) {
    if (d < 1) throw ValidationError("seesaw_optimize: local dimension must be >= 1");
    dim *= d;
  }
  if (dim > (Index{1} << 10))
    throw SizeGuardError("seesaw_optimize: joint dimension " + std::to_string(dim) +
                         " exceeds the 2^10 guard");
  if (opts.restarts < 1) throw ValidationError("seesaw_optimize: need at least one restart");

  int threads = opts.threads > 0 ? opts.threads : thread_budget();
  std::vector<RestartOutcome> outcomes(opts.restarts);
  auto run = [&](int k) {
    outcomes[k] = run_restart(functional, local_dims, memory, opts.seed + k, opts.tol,
                              opts.max_sweeps);
  };
  if (threads > 1 && opts.restarts > 1) {
    std::vector<std::future<void>> futs;
    std::atomic<int> next{0};
    int workers = std::min(threads, opts.restarts);
    for (int w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, [&] {
        for (int k = next.fetch_add(1); k < opts.restarts; k = next.fetch_add(1)) run(k);
      }));
    }
    for (auto& f : futs) f.get();
  } else {
    for (int k = 0; k < opts.restarts; ++k) run(k);
  }

  SeesawResult result;
  result.best_restart = 0;
  for (int k = 0; k < opts.restarts; ++k) {
    result.restart_values.push_back(outcomes[k].value);
    if (outcomes[k].value > outcomes[result.best_restart].value) result.best_restart = k;
  }
  result.best_value = outcomes[result.best_restart].value;
  result.best_strategy = std::move(outcomes[result.best_restart].strategy);
  result.best_sweep_values = std::move(outcomes[result.best_restart].sweep_values);
  return result;
}

double quantum_equilibrium_gain(const MultistageGame& game, const QuantumStrategy& strategy,
                                int player) {
  BellFunctional f = functional_from_game(game, player);
  double current = functional_value(f, evaluate_quantum_strategy(strategy, game.shape()));
  FamilyUpdate up = best_response_update(f, strategy, player);
  return up.value - current;
}

}  // namespace bellgame
