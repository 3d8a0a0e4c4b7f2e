#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"

#include "bellgame/classical.hpp"
#include "bellgame/nonsignaling.hpp"
#include "bellgame/scenarios.hpp"

using namespace bellgame;

namespace {

// Forward simulation written independently of play_profile: one player may
// override their lookup table, later players react to what was really played.
double simulate_payoff(const MultistageGame& game, const DeterministicStrategyProfile& profile,
                       int deviator, const std::vector<int>& override_table, int player) {
  GameShape shape = game.shape();
  int n = game.players();
  std::vector<int> types(n), actions(n);
  double total = 0.0;
  for (Index t = 0; t < shape.type_space(); ++t) {
    shape.types_at(t, types);
    for (int i = 0; i < n; ++i) {
      Index x = shape.setting_index(i, types[i], shape.realized_history(i, actions));
      actions[i] = (i == deviator) ? override_table[static_cast<std::size_t>(x)]
                                   : profile.actions[i][static_cast<std::size_t>(x)];
    }
    Index cell = shape.cell(t, shape.action_index(actions));
    total += game.joint_prior(t) * game.payoffs[player][static_cast<std::size_t>(cell)];
  }
  return total;
}

// Naive deviation oracle: enumerate every signal-dependent deviation table
// jointly and take the best total payoff.
double brute_deviation_gain(const MultistageGame& game, const Advisor& advisor, int player) {
  GameShape shape = game.shape();
  Index settings = shape.setting_card(player);
  int acts = game.action_cards[player];
  std::size_t lambdas = advisor.weights.size();

  double base = 0.0;
  for (std::size_t k = 0; k < lambdas; ++k)
    base += advisor.weights[k] * simulate_payoff(game, advisor.profiles[k], -1, {}, player);

  std::uint64_t per_lambda = 1;
  for (Index x = 0; x < settings; ++x) per_lambda *= static_cast<std::uint64_t>(acts);
  std::uint64_t combos = 1;
  for (std::size_t k = 0; k < lambdas; ++k) combos *= per_lambda;
  REQUIRE(combos <= (std::uint64_t{1} << 16));

  double best = base;
  std::vector<int> table(static_cast<std::size_t>(settings));
  for (std::uint64_t joint = 0; joint < combos; ++joint) {
    std::uint64_t rest = joint;
    double total = 0.0;
    for (std::size_t k = 0; k < lambdas; ++k) {
      std::uint64_t code = rest % per_lambda;
      rest /= per_lambda;
      for (Index x = 0; x < settings; ++x) {
        table[static_cast<std::size_t>(x)] = static_cast<int>(code % acts);
        code /= static_cast<std::uint64_t>(acts);
      }
      total += advisor.weights[k] * simulate_payoff(game, advisor.profiles[k], player, table, player);
    }
    if (total > best) best = total;
  }
  return best - base;
}

Advisor random_advisor(const GameShape& shape, std::size_t lambdas, std::mt19937& rng) {
  Advisor advisor;
  advisor.weights.resize(lambdas);
  double sum = 0.0;
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (double& w : advisor.weights) sum += (w = unif(rng));
  for (double& w : advisor.weights) w /= sum;
  for (std::size_t k = 0; k < lambdas; ++k) {
    DeterministicStrategyProfile p;
    for (int i = 0; i < shape.players(); ++i) {
      std::vector<int> table(static_cast<std::size_t>(shape.setting_card(i)));
      std::uniform_int_distribution<int> act(0, shape.action_cards[i] - 1);
      for (int& a : table) a = act(rng);
      p.actions.push_back(std::move(table));
    }
    advisor.profiles.push_back(std::move(p));
  }
  return advisor;
}

MultistageGame random_game(std::vector<int> types, std::vector<int> actions, Memory memory,
                           std::mt19937& rng) {
  MultistageGame game;
  game.type_cards = std::move(types);
  game.action_cards = std::move(actions);
  game.memory = std::move(memory);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int card : game.type_cards) {
    std::vector<double> row(static_cast<std::size_t>(card));
    double sum = 0.0;
    for (double& p : row) sum += (p = 0.1 + std::abs(unif(rng)));
    for (double& p : row) p /= sum;
    game.prior.push_back(std::move(row));
  }
  Index cells = game.shape().cells();
  for (int i = 0; i < game.players(); ++i) {
    std::vector<double> u(static_cast<std::size_t>(cells));
    for (double& x : u) x = unif(rng);
    game.payoffs.push_back(std::move(u));
  }
  return game;
}

BellFunctional random_functional(std::vector<int> types, std::vector<int> actions,
                                 std::mt19937& rng) {
  BellFunctional f;
  f.type_cards = std::move(types);
  f.action_cards = std::move(actions);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  f.coefficients.resize(static_cast<std::size_t>(f.cells()));
  for (double& c : f.coefficients) c = unif(rng);
  return f;
}

}  // namespace

TEST_CASE("profile enumeration is lexicographic with player 1 most significant") {
  GameShape shape{{2, 2}, {2, 2}, Memory::from_depths({0, 1})};
  ProfileEnumerator en(shape);
  REQUIRE(en.count() == 64);
  CHECK(en.at(0) == DeterministicStrategyProfile{{{0, 0}, {0, 0, 0, 0}}});
  CHECK(en.at(63) == DeterministicStrategyProfile{{{1, 1}, {1, 1, 1, 1}}});
  CHECK(en.at(20) == DeterministicStrategyProfile{{{0, 1}, {0, 1, 0, 0}}});

  std::vector<DeterministicStrategyProfile> seen;
  en.visit(0, en.count(),
           [&](const DeterministicStrategyProfile& p, std::uint64_t) { seen.push_back(p); });
  REQUIRE(seen.size() == 64);
  for (std::uint64_t k = 0; k < 64; ++k) CHECK(seen[static_cast<std::size_t>(k)] == en.at(k));
}

TEST_CASE("profile counts follow the setting cards") {
  CHECK(ProfileEnumerator(GameShape{{2, 2}, {2, 2}, Memory::no_communication(2)}).count() == 16);
  CHECK(ProfileEnumerator(GameShape{{3, 3}, {2, 2}, Memory::from_depths({0, 1})}).count() == 512);
  CHECK(ProfileEnumerator(GameShape{{2, 2, 2}, {2, 2, 2}, Memory::from_depths({0, 1, 1})}).count() ==
        1024);
  // 16^32 overflows 64 bits and must be refused, not wrapped
  CHECK_THROWS_AS(ProfileEnumerator(GameShape{{2, 2}, {16, 16}, Memory::from_depths({0, 1})}),
                  SizeGuardError);
}

TEST_CASE("silent CHSH is worthless, reported CHSH earns one half") {
  BellFunctional chsh = load_scenario("chsh").functional;

  ClassicalBoundResult silent = classical_bound(chsh, Memory::no_communication(2));
  CHECK(silent.value == 0.0);
  CHECK(silent.profile_count == 16);

  ClassicalBoundResult chain = classical_bound(chsh, Memory::from_depths({0, 1}));
  CHECK(chain.value == 0.5);
  CHECK(chain.profile_count == 64);
  CHECK(chain.witness_index == 20);
  CHECK(chain.witness == DeterministicStrategyProfile{{{0, 1}, {0, 1, 0, 0}}});
}

TEST_CASE("catalog classical bounds are reproduced exactly") {
  ScenarioRecord chaves = load_scenario("chaves-triangle");
  ClassicalBoundResult r = classical_bound(chaves.functional, chaves.memory());
  CHECK(r.value == 4.0);
  CHECK(r.profile_count == 512);

  ScenarioRecord sv2 = load_scenario("svetlichny-2");
  CHECK(classical_bound(sv2.functional, sv2.memory()).value == 4.0);

  ScenarioRecord sv3 = load_scenario("svetlichny-3");
  ClassicalBoundResult c3 = classical_bound(sv3.functional, sv3.memory());
  CHECK(c3.value == 6.0);
  CHECK(c3.profile_count == 1024);
  CHECK(classical_bound(sv3.functional, Memory::no_communication(3)).value == 4.0);
  CHECK(classical_bound(sv3.functional, Memory{{{}, {0}, {0}}}).value == 4.0);

  ScenarioRecord sv4 = load_scenario("svetlichny-4");
  ClassicalBoundResult c4 = classical_bound(sv4.functional, sv4.memory());
  CHECK(c4.value == 10.0);
  CHECK(c4.profile_count == 16384);

  EnumerationOptions three;
  three.threads = 3;
  CHECK(classical_bound(sv3.functional, sv3.memory(), three).value == 6.0);
}

TEST_CASE("the enumeration guard can be tightened and overridden") {
  BellFunctional chsh = load_scenario("chsh").functional;
  EnumerationOptions opts;
  opts.guard = 10;
  CHECK_THROWS_AS(classical_bound(chsh, Memory::from_depths({0, 1}), opts), SizeGuardError);
  opts.override_guard = true;
  CHECK(classical_bound(chsh, Memory::from_depths({0, 1}), opts).value == 0.5);
}

TEST_CASE("support function and payoff vertices agree with hand values") {
  ScenarioRecord asym = load_scenario("asymmetric");
  CHECK(support_function(asym.game, PayoffWeights{{1.0, 1.0}, 0.0}, asym.memory()).value == 4.0);
  CHECK(support_function(asym.game, PayoffWeights{{1.0, 0.0}, 0.0}, asym.memory()).value == 3.0);

  ScenarioRecord zs = load_scenario("zero-sum");
  CHECK(support_function(zs.game, PayoffWeights{{1.0, 1.0}, 0.0}, zs.memory()).value == 0.0);

  MultistageGame chsh = load_scenario("chsh").game;
  CHECK(support_function(chsh, PayoffWeights{{1.0, 1.0}, 0.0}, chsh.memory).value == 1.0);

  std::vector<std::vector<double>> verts = payoff_vertices(chsh, chsh.memory);
  REQUIRE_FALSE(verts.empty());
  double lo = 1e9, hi = -1e9;
  for (const auto& v : verts) {
    REQUIRE(v.size() == 2);
    CHECK(v[0] == v[1]);  // identical payoff tensors
    lo = std::min(lo, v[0]);
    hi = std::max(hi, v[0]);
  }
  CHECK(hi == 0.5);
  CHECK(lo == -1.5);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      CHECK(std::max(std::abs(verts[i][0] - verts[j][0]), std::abs(verts[i][1] - verts[j][1])) >
            1e-9);
}

TEST_CASE("deviation gains match hand-computed CHSH cases") {
  MultistageGame game = load_scenario("chsh").game;

  Advisor optimal;
  optimal.weights = {1.0};
  optimal.profiles = {DeterministicStrategyProfile{{{0, 1}, {0, 1, 0, 0}}}};
  CHECK(deviation_gain(game, optimal, 0) == 0.0);
  CHECK(deviation_gain(game, optimal, 1) == 0.0);
  CHECK(is_correlated_equilibrium(game, optimal));

  Advisor bad;
  bad.weights = {1.0};
  bad.profiles = {DeterministicStrategyProfile{{{0, 0}, {1, 0, 0, 0}}}};
  CHECK(deviation_gain(game, bad, 0) == 0.5);
  CHECK(deviation_gain(game, bad, 1) == 1.0);
  CHECK_FALSE(is_correlated_equilibrium(game, bad));
}

TEST_CASE("deviation gains agree with the naive oracle") {
  std::mt19937 rng(20240817);
  MultistageGame chsh = load_scenario("chsh").game;
  for (int trial = 0; trial < 12; ++trial) {
    Advisor advisor = random_advisor(chsh.shape(), 1 + trial % 2, rng);
    for (int player = 0; player < 2; ++player) {
      double expected = brute_deviation_gain(chsh, advisor, player);
      double actual = deviation_gain(chsh, advisor, player);
      CHECK(actual >= -1e-15);
      CHECK(std::abs(actual - expected) < 1e-12);
    }
  }

  MultistageGame wide = random_game({2, 1, 2}, {2, 2, 2}, Memory::from_depths({0, 1, 1}), rng);
  REQUIRE(validate_game(wide).empty());
  for (int trial = 0; trial < 6; ++trial) {
    Advisor advisor = random_advisor(wide.shape(), 1 + trial % 2, rng);
    for (int player = 0; player < 3; ++player) {
      double expected = brute_deviation_gain(wide, advisor, player);
      double actual = deviation_gain(wide, advisor, player);
      CHECK(std::abs(actual - expected) < 1e-12);
    }
  }
}

TEST_CASE("advisor payoffs are signal-weighted sums of pure payoffs") {
  std::mt19937 rng(99);
  int checked = 0;
  while (checked < 100) {
    MultistageGame game =
        (checked % 2 == 0)
            ? random_game({2, 2}, {2, 2}, Memory::from_depths({0, 1}), rng)
            : random_game({2, 2, 2}, {2, 2, 2}, Memory::from_depths({0, 1, 1}), rng);
    GameShape shape = game.shape();
    Advisor advisor = random_advisor(shape, 1 + static_cast<std::size_t>(checked % 3), rng);
    ConditionalDistribution mixed = advisor_distribution(advisor, shape);
    for (int player = 0; player < game.players(); ++player) {
      double direct = expected_payoff(game, mixed, player);
      double weighted = 0.0;
      for (std::size_t k = 0; k < advisor.weights.size(); ++k)
        weighted += advisor.weights[k] *
                    expected_payoff(game, strategy_distribution(advisor.profiles[k], shape), player);
      CHECK(std::abs(direct - weighted) < 1e-12);
    }
    ++checked;
  }
}

TEST_CASE("classical bounds grow with the memory and stay under the ceiling") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    BellFunctional f = random_functional({2, 2}, {2, 2}, rng);
    double silent = classical_bound(f, Memory::no_communication(2)).value;
    double chain = classical_bound(f, Memory::from_depths({0, 1})).value;
    CHECK(silent <= chain + 1e-12);
    CHECK(chain <= algebraic_max(f) + 1e-12);
  }
  for (int trial = 0; trial < 25; ++trial) {
    BellFunctional f = random_functional({2, 2, 2}, {2, 2, 2}, rng);
    double silent = classical_bound(f, Memory::no_communication(3)).value;
    double chain = classical_bound(f, Memory::from_depths({0, 1, 1})).value;
    double deep = classical_bound(f, Memory::from_depths({0, 1, 2})).value;
    CHECK(silent <= chain + 1e-12);
    CHECK(chain <= deep + 1e-12);
    CHECK(deep <= algebraic_max(f) + 1e-12);
  }
}
