#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"

#include "bellgame/distributions.hpp"
#include "bellgame/game.hpp"
#include "bellgame/scenarios.hpp"

using namespace bellgame;

namespace {

MultistageGame tiny_game() {
  MultistageGame game;
  game.type_cards = {2, 3};
  game.action_cards = {2, 2};
  game.memory = Memory::from_depths({0, 0});
  game.prior = {{0.25, 0.75}, {0.5, 0.3, 0.2}};
  game.payoffs.assign(2, std::vector<double>(24, 0.0));
  for (Index c = 0; c < 24; ++c) {
    game.payoffs[0][c] = static_cast<double>(c) - 11.5;
    game.payoffs[1][c] = 1.0 / (1.0 + static_cast<double>(c));
  }
  return game;
}

}  // namespace

TEST_CASE("joint prior multiplies the independent per-player laws") {
  MultistageGame game = tiny_game();
  CHECK(validate_game(game).empty());
  CHECK(game.joint_prior(0) == 0.25 * 0.5);
  CHECK(game.joint_prior(5) == 0.75 * 0.2);
  std::vector<double> table = game.joint_prior_table();
  REQUIRE(table.size() == 6);
  double sum = 0.0;
  for (double p : table) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-12);
  CHECK(table[3] == game.joint_prior(3));
}

TEST_CASE("game validation flags broken priors, payoffs and memory") {
  MultistageGame game = tiny_game();

  MultistageGame bad_prior = game;
  bad_prior.prior[1] = {0.5, 0.3, 0.1};
  CHECK_FALSE(validate_game(bad_prior).empty());

  MultistageGame bad_payoff = game;
  bad_payoff.payoffs[0].pop_back();
  CHECK_FALSE(validate_game(bad_payoff).empty());

  MultistageGame bad_memory = game;
  bad_memory.memory = Memory::from_depths({0, 0, 0});
  CHECK_FALSE(validate_game(bad_memory).empty());

  MultistageGame negative = game;
  negative.prior[0] = {1.5, -0.5};
  CHECK_FALSE(validate_game(negative).empty());
}

TEST_CASE("functional coefficients are prior-weighted payoffs") {
  MultistageGame game = tiny_game();
  BellFunctional f = functional_from_game(game, 0);
  REQUIRE(f.cells() == 24);
  GameShape shape = game.shape();
  // cell (theta = (1,2), a = (0,1)) sits at (1*3+2)*4 + 1
  Index cell = shape.cell(5, 1);
  CHECK(f.coefficients[cell] == game.joint_prior(5) * game.payoffs[0][cell]);

  // expected payoff and functional value agree on any distribution
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> table(24);
  for (Index t = 0; t < 6; ++t) {
    double row = 0.0;
    for (Index a = 0; a < 4; ++a) row += (table[t * 4 + a] = unif(rng));
    for (Index a = 0; a < 4; ++a) table[t * 4 + a] /= row;
  }
  ConditionalDistribution dist =
      ConditionalDistribution::from_table(game.type_cards, game.action_cards, table);
  for (int player = 0; player < 2; ++player) {
    BellFunctional fp = functional_from_game(game, player);
    CHECK(std::abs(expected_payoff(game, dist, player) - functional_value(fp, dist)) < 1e-12);
  }
}

TEST_CASE("a functional lifts back to a symmetric game") {
  BellFunctional f = load_scenario("chsh").functional;
  std::vector<std::vector<double>> prior = {{0.5, 0.5}, {0.5, 0.5}};
  MultistageGame game = game_from_functional(f, prior, Memory::from_depths({0, 1}));
  CHECK(validate_game(game).empty());
  CHECK(game.payoffs[0] == game.payoffs[1]);
  BellFunctional back = functional_from_game(game, 1);
  REQUIRE(back.coefficients.size() == f.coefficients.size());
  for (std::size_t c = 0; c < f.coefficients.size(); ++c)
    CHECK(std::abs(back.coefficients[c] - f.coefficients[c]) < 1e-15);

  std::vector<std::vector<double>> zero_prior = {{1.0, 0.0}, {0.5, 0.5}};
  CHECK_THROWS_AS(game_from_functional(f, zero_prior, Memory::from_depths({0, 1})),
                  ValidationError);
}

TEST_CASE("the reporting CHSH witness earns exactly one half") {
  MultistageGame game = load_scenario("chsh").game;
  DeterministicStrategyProfile witness{{{0, 1}, {0, 1, 0, 0}}};
  ConditionalDistribution dist = strategy_distribution(witness, game.shape());
  CHECK(expected_payoff(game, dist, 0) == 0.5);
  CHECK(expected_payoff(game, dist, 1) == 0.5);
  CHECK(functional_value(load_scenario("chsh").functional, dist) == 0.5);
}
