#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "bellgame/nonsignaling.hpp"
#include "bellgame/scenarios.hpp"

using namespace bellgame;

namespace {

AugmentedBox pr_box() {
  AugmentedBox box;
  box.input_cards = {2, 2};
  box.output_cards = {2, 2};
  box.table.assign(16, 0.0);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          if (((a1 + a2) & 1) == (x1 & x2))
            box.table[static_cast<std::size_t>(((x1 * 2 + x2) * 2 + a1) * 2 + a2)] = 0.5;
  return box;
}

}  // namespace

TEST_CASE("algebraic maxima are exact per-type sums") {
  CHECK(algebraic_max(load_scenario("chsh").functional) == 0.5);
  CHECK(algebraic_max(load_scenario("chaves-triangle").functional) == 6.0);
  CHECK(algebraic_max(load_scenario("svetlichny-2").functional) == 4.0);
  CHECK(algebraic_max(load_scenario("svetlichny-3").functional) == 8.0);
  CHECK(algebraic_max(load_scenario("svetlichny-4").functional) == 16.0);
}

TEST_CASE("box validation accepts the PR box and catches signalling") {
  CHECK(validate_box(pr_box()).empty());

  AugmentedBox leak;
  leak.input_cards = {2, 2};
  leak.output_cards = {2, 2};
  leak.table.assign(16, 0.0);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      leak.table[static_cast<std::size_t>(((x1 * 2 + x2) * 2 + x2) * 2 + 0)] = 1.0;  // a1 = x2
  CHECK_FALSE(validate_box(leak).empty());

  AugmentedBox unnorm = pr_box();
  unnorm.table[0] = 0.4;
  CHECK_FALSE(validate_box(unnorm).empty());
}

TEST_CASE("no-signaling bounds match the catalog values") {
  ScenarioRecord chsh = load_scenario("chsh");
  NsBoundResult r = ns_bound(chsh.functional, chsh.memory());
  CHECK(r.value == 0.5);
  CHECK(r.optimizer.input_cards == std::vector<int>{2, 4});
  CHECK(validate_box(r.optimizer).empty());

  CHECK(ns_bound(chsh.functional, Memory::no_communication(2)).value == 0.5);

  ScenarioRecord chaves = load_scenario("chaves-triangle");
  CHECK(ns_bound(chaves.functional, chaves.memory()).value == 6.0);

  ScenarioRecord sv2 = load_scenario("svetlichny-2");
  CHECK(ns_bound(sv2.functional, sv2.memory()).value == 4.0);

  ScenarioRecord fig2 = load_scenario("svetlichny-3-fig2");
  CHECK(ns_bound(fig2.functional, fig2.memory()).value == 8.0);
}

TEST_CASE("the LP variable guard refuses oversized boxes") {
  ScenarioRecord chaves = load_scenario("chaves-triangle");
  NsBoundOptions opts;
  opts.variable_guard = 10;
  CHECK_THROWS_AS(ns_bound(chaves.functional, chaves.memory(), opts), SizeGuardError);
}

TEST_CASE("wiring the PR box reproduces known distributions") {
  BellFunctional chsh = load_scenario("chsh").functional;
  Memory chain = Memory::from_depths({0, 1});

  Wiring free_choice{2, 2, {0, 0, 1, 1}};  // x2 = theta_2, the report is ignored
  ConditionalDistribution direct = wire_box(pr_box(), free_choice);
  CHECK(functional_value(chsh, direct) == 0.5);
  CHECK(sequential_consistency_check(direct, chain));

  Wiring echo{2, 2, {0, 1, 0, 1}};  // x2 = a1, the type is ignored
  ConditionalDistribution fed = wire_box(pr_box(), echo);
  CHECK(sequential_consistency_check(fed, chain));
  CHECK(functional_value(chsh, fed) == 0.0);
  for (Index t = 0; t < 4; ++t) {
    double row = 0.0;
    for (Index a = 0; a < 4; ++a) row += fed.at(t, a);
    CHECK(std::abs(row - 1.0) < 1e-12);
  }
}
