#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"

#include "bellgame/classical.hpp"
#include "bellgame/nonsignaling.hpp"
#include "bellgame/scenarios.hpp"

using namespace bellgame;

namespace {

std::map<std::string, double> references_of(const ScenarioRecord& rec) {
  std::map<std::string, double> out;
  for (const auto& r : rec.references) out[r.key] = r.value;
  return out;
}

}  // namespace

TEST_CASE("the catalog lists a fixed set of names") {
  std::vector<std::string> expected = {"chsh",         "chaves-triangle", "svetlichny-2",
                                       "svetlichny-3", "svetlichny-4",    "svetlichny-5",
                                       "svetlichny-6", "tripartite-qecd", "asymmetric",
                                       "zero-sum"};
  CHECK(list_scenarios() == expected);

  CHECK_THROWS_AS(load_scenario("nope"), ValidationError);
  CHECK_THROWS_AS(load_scenario("svetlichny-7"), ValidationError);
  CHECK_THROWS_AS(load_scenario("svetlichny-23"), ValidationError);
  CHECK_THROWS_AS(load_scenario("Svetlichny-3"), ValidationError);
  CHECK_NOTHROW(load_scenario("svetlichny-3-fig2"));
}

TEST_CASE("every record is well formed and internally consistent") {
  std::vector<std::string> names = list_scenarios();
  names.push_back("svetlichny-3-fig2");
  for (const auto& name : names) {
    CAPTURE(name);
    ScenarioRecord rec = load_scenario(name);
    CHECK(rec.name == name);
    CHECK_FALSE(rec.summary.empty());
    CHECK(validate_game(rec.game).empty());
    CHECK(consistency_report(rec).empty());
    CHECK_FALSE(rec.references.empty());
    CHECK(rec.functional.reference_bounds.has_value());
    CHECK(rec.functional.cells() ==
          static_cast<Index>(rec.functional.coefficients.size()));
  }
}

TEST_CASE("reporting chains lift the svetlichny classical bound to 2^(n-1)+2") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    ScenarioRecord rec = load_scenario("svetlichny-" + std::to_string(n));
    auto refs = references_of(rec);
    double chain = std::ldexp(1.0, n - 1) + 2.0;
    double silent = std::ldexp(1.0, (n + 1) / 2);
    CHECK(refs.at("classical") == chain);
    CHECK(refs.at("classical_ccd") == silent);
    CHECK(refs.at("algebraic") == std::ldexp(1.0, n));
    CHECK(classical_bound(rec.functional, rec.memory()).value == chain);
    CHECK(classical_bound(rec.functional, Memory::no_communication(n)).value == silent);
    CHECK(algebraic_max(rec.functional) == std::ldexp(1.0, n));
  }

  // n = 6 is too slow to re-enumerate here; its record must still carry the
  // same closed forms
  auto big = references_of(load_scenario("svetlichny-6"));
  CHECK(big.at("classical") == 34.0);
  CHECK(big.at("classical_ccd") == 8.0);
  CHECK(big.at("algebraic") == 64.0);
}

TEST_CASE("the forwarding-free variant keeps the classical bound at 4") {
  ScenarioRecord fig2 = load_scenario("svetlichny-3-fig2");
  CHECK_FALSE(fig2.memory().is_sliding());
  auto refs = references_of(fig2);
  CHECK(refs.at("classical") == 4.0);
  CHECK(classical_bound(fig2.functional, fig2.memory()).value == 4.0);
  // same functional as the chain scenario, different information structure
  ScenarioRecord sv3 = load_scenario("svetlichny-3");
  CHECK(fig2.functional.coefficients == sv3.functional.coefficients);
  CHECK(classical_bound(sv3.functional, sv3.memory()).value == 6.0);
}

TEST_CASE("builtin strategies reproduce the quantum references") {
  std::vector<std::string> names = list_scenarios();
  names.push_back("svetlichny-3-fig2");
  for (const auto& name : names) {
    CAPTURE(name);
    ScenarioRecord rec = load_scenario(name);
    REQUIRE(rec.builtin != nullptr);
    ConditionalDistribution dist = evaluate_quantum_strategy(
        rec.builtin(), rec.functional.shape_with(rec.memory()));
    double value = functional_value(rec.functional, dist);
    auto refs = references_of(rec);
    if (refs.count("quantum")) {
      CHECK(std::abs(value - refs.at("quantum")) < 1e-9);
    } else {
      REQUIRE(refs.count("quantum_qecd"));
      CHECK(value >= refs.at("quantum_qecd") - 2e-2);
      CHECK(value <= refs.at("quantum_qecd") + 1e-3);
    }
  }
}

TEST_CASE("the tripartite scenario records the reporting ceiling") {
  ScenarioRecord rec = load_scenario("tripartite-qecd");
  auto refs = references_of(rec);
  CHECK(refs.at("classical") == 6.0);
  CHECK(refs.at("classical_ccd") == 4.0);
  CHECK(refs.at("nonsignaling") == 8.0);
  CHECK(classical_bound(rec.functional, rec.memory()).value == 6.0);
}

TEST_CASE("no-signaling references hold where the LP is tractable") {
  for (const auto& name : {"chsh", "chaves-triangle", "svetlichny-2", "svetlichny-3",
                           "svetlichny-3-fig2", "tripartite-qecd"}) {
    CAPTURE(name);
    ScenarioRecord rec = load_scenario(name);
    auto refs = references_of(rec);
    CHECK(std::abs(ns_bound(rec.functional, rec.memory()).value - refs.at("nonsignaling")) <
          1e-7);
  }
}

TEST_CASE("payoff tensors respect the advertised symmetries") {
  ScenarioRecord zs = load_scenario("zero-sum");
  for (std::size_t c = 0; c < zs.game.payoffs[0].size(); ++c)
    CHECK(zs.game.payoffs[0][c] + zs.game.payoffs[1][c] == 0.0);

  ScenarioRecord asym = load_scenario("asymmetric");
  BellFunctional f1 = functional_from_game(asym.game, 0);
  BellFunctional f2 = functional_from_game(asym.game, 1);
  for (std::size_t c = 0; c < asym.functional.coefficients.size(); ++c)
    CHECK(std::abs(f1.coefficients[c] + f2.coefficients[c] - asym.functional.coefficients[c]) <
          1e-12);

  ScenarioRecord chsh = load_scenario("chsh");
  CHECK(chsh.game.payoffs[0] == chsh.game.payoffs[1]);
}
