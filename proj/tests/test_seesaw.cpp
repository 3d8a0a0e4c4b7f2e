#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "bellgame/seesaw.hpp"
#include "bellgame/scenarios.hpp"

using namespace bellgame;

namespace {

const double kRoot2 = std::sqrt(2.0);
const double kTriangleMax = 3.0 * std::sqrt(3.0);

QuantumStrategy singlet_measuring_z() {
  QuantumStrategy s;
  s.local_dims = {2, 2};
  s.type_cards = {2, 2};
  s.action_cards = {2, 2};
  s.memory = Memory::no_communication(2);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / kRoot2;
  psi(2) = -1.0 / kRoot2;
  s.state.rho = psi * psi.adjoint();
  MeasurementFamily z;
  z.by_setting = {{bloch_half(0, 0, 1, +1), bloch_half(0, 0, 1, -1)},
                  {bloch_half(0, 0, 1, +1), bloch_half(0, 0, 1, -1)}};
  s.families = {z, z};
  return s;
}

double value_of(const BellFunctional& f, const QuantumStrategy& s, const Memory& memory) {
  return functional_value(f, evaluate_quantum_strategy(s, f.shape_with(memory)));
}

MeasurementFamily random_axes(int settings, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  MeasurementFamily fam;
  for (int x = 0; x < settings; ++x) {
    double vx = gauss(rng), vy = gauss(rng), vz = gauss(rng);
    double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
    fam.by_setting.push_back({bloch_half(vx / norm, vy / norm, vz / norm, +1),
                              bloch_half(vx / norm, vy / norm, vz / norm, -1)});
  }
  return fam;
}

}  // namespace

TEST_CASE("best-response updates are monotone and correctly valued") {
  BellFunctional chaves = load_scenario("chaves-triangle").functional;
  QuantumStrategy s = make_singlet_triangle();
  Memory none = Memory::no_communication(2);
  double current = value_of(chaves, s, none);

  for (int player = 0; player < 2; ++player) {
    FamilyUpdate up = best_response_update(chaves, s, player);
    CHECK(up.value >= current - 1e-10);
    QuantumStrategy swapped = s;
    swapped.families[static_cast<std::size_t>(player)] = up.family;
    CHECK(std::abs(value_of(chaves, swapped, none) - up.value) < 1e-9);
    // already optimal: the update is a fixed point
    CHECK(std::abs(up.value - current) < 1e-9);
  }

  // from a deliberately bad start the update must strictly recover
  QuantumStrategy bad = s;
  bad.families[0] = MeasurementFamily{{{bloch_half(0, 0, 1, +1), bloch_half(0, 0, 1, -1)},
                                       {bloch_half(0, 0, 1, +1), bloch_half(0, 0, 1, -1)},
                                       {bloch_half(0, 0, 1, +1), bloch_half(0, 0, 1, -1)}}};
  double bad_value = value_of(chaves, bad, none);
  FamilyUpdate rescue = best_response_update(chaves, bad, 0);
  CHECK(rescue.value > bad_value + 0.1);
}

TEST_CASE("no sampled measurement family beats the analytic best response") {
  BellFunctional chaves = load_scenario("chaves-triangle").functional;
  QuantumStrategy s = make_singlet_triangle();
  Memory none = Memory::no_communication(2);
  FamilyUpdate best = best_response_update(chaves, s, 0);

  std::mt19937 rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    QuantumStrategy probe = s;
    probe.families[0] = random_axes(3, rng);
    CHECK(value_of(chaves, probe, none) <= best.value + 1e-9);
  }
}

TEST_CASE("no sampled state beats the eigenvector update") {
  BellFunctional chaves = load_scenario("chaves-triangle").functional;
  QuantumStrategy s = make_singlet_triangle();
  Memory none = Memory::no_communication(2);
  StateUpdate up = state_update(chaves, s);
  CHECK(up.value >= value_of(chaves, s, none) - 1e-10);

  QuantumStrategy swapped = s;
  swapped.state = up.state;
  CHECK(std::abs(value_of(chaves, swapped, none) - up.value) < 1e-9);

  std::mt19937 rng(4711);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXcd psi(4);
    for (int k = 0; k < 4; ++k) psi(k) = cxd(gauss(rng), gauss(rng));
    psi.normalize();
    QuantumStrategy probe = s;
    probe.state.rho = psi * psi.adjoint();
    CHECK(value_of(chaves, probe, none) <= up.value + 1e-9);
  }
}

TEST_CASE("seesaw reaches the known optima from random starts") {
  BellFunctional chsh = load_scenario("chsh").functional;

  SeesawOptions opts;
  opts.restarts = 8;
  SeesawResult silent = seesaw_optimize(chsh, {2, 2}, Memory::no_communication(2), opts);
  CHECK(std::abs(silent.best_value - (kRoot2 - 1.0) / 2.0) < 1e-9);

  SeesawResult chain = seesaw_optimize(chsh, {2, 2}, Memory::from_depths({0, 1}), opts);
  CHECK(std::abs(chain.best_value - 0.5) < 1e-9);

  BellFunctional chaves = load_scenario("chaves-triangle").functional;
  SeesawOptions twelve;
  twelve.restarts = 12;
  SeesawResult tri = seesaw_optimize(chaves, {2, 2}, Memory::from_depths({0, 1}), twelve);
  CHECK(tri.best_value >= kTriangleMax - 1e-7);
  CHECK(tri.best_value <= 6.0 + 1e-9);

  BellFunctional sv3 = load_scenario("svetlichny-3").functional;
  SeesawOptions ten;
  ten.restarts = 10;
  SeesawResult ghz = seesaw_optimize(sv3, {2, 2, 2}, Memory::no_communication(3), ten);
  CHECK(ghz.best_value >= 4.0 * kRoot2 - 1e-6);
  CHECK(ghz.best_value <= 4.0 * kRoot2 + 1e-3);
}

TEST_CASE("seesaw results are reproducible and internally consistent") {
  BellFunctional chaves = load_scenario("chaves-triangle").functional;
  SeesawOptions opts;
  opts.restarts = 5;
  opts.seed = 12345;
  Memory chain = Memory::from_depths({0, 1});

  SeesawResult a = seesaw_optimize(chaves, {2, 2}, chain, opts);
  SeesawResult b = seesaw_optimize(chaves, {2, 2}, chain, opts);
  CHECK(a.best_value == b.best_value);
  REQUIRE(a.restart_values.size() == 5);
  CHECK(a.restart_values == b.restart_values);

  double top = a.restart_values[0];
  for (double v : a.restart_values) top = std::max(top, v);
  CHECK(a.best_value == top);
  CHECK(a.restart_values[static_cast<std::size_t>(a.best_restart)] == a.best_value);
  for (std::size_t k = 1; k < a.best_sweep_values.size(); ++k)
    CHECK(a.best_sweep_values[k] >= a.best_sweep_values[k - 1] - 1e-9);

  CHECK(validate_quantum(a.best_strategy).empty());
  CHECK(a.best_strategy.memory == chain);
  CHECK(std::abs(value_of(chaves, a.best_strategy, chain) - a.best_value) < 1e-8);
}

TEST_CASE("seesaw refuses oversized or non-binary problems") {
  BellFunctional chsh = load_scenario("chsh").functional;
  CHECK_THROWS_AS(seesaw_optimize(chsh, {33, 32}, Memory::no_communication(2)), SizeGuardError);

  BellFunctional ternary;
  ternary.type_cards = {2, 2};
  ternary.action_cards = {3, 3};
  ternary.coefficients.assign(static_cast<std::size_t>(ternary.cells()), 0.1);
  CHECK_THROWS_AS(seesaw_optimize(ternary, {2, 2}, Memory::no_communication(2)), ValidationError);
}

TEST_CASE("quantum equilibrium gains vanish at the optima and flag bad play") {
  MultistageGame chaves_game = load_scenario("chaves-triangle").game;
  QuantumStrategy triangle = make_singlet_triangle();
  for (int player = 0; player < 2; ++player) {
    double gain = quantum_equilibrium_gain(chaves_game, triangle, player);
    CHECK(gain <= 1e-7);
    CHECK(gain >= -1e-9);
  }

  MultistageGame sv3_game = load_scenario("svetlichny-3").game;
  QuantumStrategy ghz = make_ghz_svetlichny(3);
  for (int player = 0; player < 3; ++player)
    CHECK(quantum_equilibrium_gain(sv3_game, ghz, player) <= 1e-7);

  MultistageGame chsh_game = load_scenario("chsh").game;
  QuantumStrategy lazy = singlet_measuring_z();
  for (int player = 0; player < 2; ++player)
    CHECK(std::abs(quantum_equilibrium_gain(chsh_game, lazy, player) - 1.0) < 1e-9);
}
