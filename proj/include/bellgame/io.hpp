#pragma once

#include <string>

#include "json.hpp"

#include "bellgame/distributions.hpp"
#include "bellgame/game.hpp"
#include "bellgame/nonsignaling.hpp"
#include "bellgame/quantum.hpp"

namespace bellgame {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// JSON converters. Loaders validate structure and value constraints and throw
// ValidationError with a message naming the offending field; writers emit keys
// in a fixed order so a dump is byte-stable for identical inputs.

ordered_json game_to_json(const MultistageGame& game);
MultistageGame game_from_json(const json& j);

ordered_json functional_to_json(const BellFunctional& functional);
BellFunctional functional_from_json(const json& j);

ordered_json distribution_to_json(const ConditionalDistribution& dist);
ConditionalDistribution distribution_from_json(const json& j);

ordered_json advisor_to_json(const Advisor& advisor, const GameShape& shape);
// Returns the advisor together with the shape it was serialised against.
std::pair<Advisor, GameShape> advisor_from_json(const json& j);

ordered_json quantum_to_json(const QuantumStrategy& strategy);
QuantumStrategy quantum_from_json(const json& j);

ordered_json box_to_json(const AugmentedBox& box);
AugmentedBox box_from_json(const json& j);

ordered_json memory_to_json(const Memory& memory);
Memory memory_from_json(const json& j);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);
std::string dump_json(const ordered_json& j);

}  // namespace bellgame
