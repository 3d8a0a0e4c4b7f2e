#include "bellgame/io.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "bellgame/common.hpp"

namespace bellgame {

namespace {

const json& need(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(what + ": missing field \"" + key + "\"");
  return *it;
}

std::vector<int> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ValidationError(what + ": expected integer entries");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<double> double_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw ValidationError(what + ": expected numeric entries");
    out.push_back(e.get<double>());
  }
  return out;
}

// Rows are accepted if they sum to 1 within tol, then renormalised exactly.
std::vector<double> normalized_rows(std::vector<double> flat, Index rows, Index cols,
                                    const std::string& what, double tol) {
  for (Index r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (Index c = 0; c < cols; ++c) {
      double v = flat[static_cast<std::size_t>(r * cols + c)];
      if (v < -1e-12)
        throw ValidationError(what + ": negative entry " + std::to_string(v) + " in row " +
                              std::to_string(r));
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw ValidationError(what + ": row " + std::to_string(r) + " sums to " +
                            std::to_string(sum) + ", expected 1");
    for (Index c = 0; c < cols; ++c) flat[static_cast<std::size_t>(r * cols + c)] /= sum;
  }
  return flat;
}

ordered_json mat_to_json(const Mat& m) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  ordered_json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

Mat mat_from_json(const json& j, Index dim, const std::string& what) {
  std::vector<double> re = double_list(need(j, "re", what), what + ".re");
  std::vector<double> im = double_list(need(j, "im", what), what + ".im");
  const std::size_t n = static_cast<std::size_t>(dim * dim);
  if (re.size() != n || im.size() != n)
    throw ValidationError(what + ": expected " + std::to_string(n) + " entries for a " +
                          std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  Mat m(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) {
      std::size_t k = static_cast<std::size_t>(r * dim + c);
      m(r, c) = cxd(re[k], im[k]);
    }
  return m;
}

void throw_if_invalid(const std::vector<std::string>& diagnostics, const std::string& what) {
  if (diagnostics.empty()) return;
  std::string msg = what + ":";
  for (const auto& d : diagnostics) msg += "\n  " + d;
  throw ValidationError(msg);
}

}  // namespace

ordered_json memory_to_json(const Memory& memory) {
  if (memory.is_sliding()) return ordered_json(memory.depths());
  return ordered_json(memory.windows);
}

Memory memory_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("memory: expected an array");
  Memory memory;
  int i = 0;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      int depth = e.get<int>();
      if (depth < 0 || depth > i)
        throw ValidationError("memory: depth m_" + std::to_string(i + 1) + " = " +
                              std::to_string(depth) + " is outside [0, " + std::to_string(i) +
                              "]");
      std::vector<int> window;
      for (int k = 1; k <= depth; ++k) window.push_back(i - k);
      memory.windows.push_back(std::move(window));
    } else if (e.is_array()) {
      memory.windows.push_back(int_list(e, "memory window " + std::to_string(i + 1)));
    } else {
      throw ValidationError("memory: entries must be depths or stage lists");
    }
    ++i;
  }
  return memory;
}

ordered_json game_to_json(const MultistageGame& game) {
  ordered_json j;
  j["players"] = game.players();
  j["types"] = game.type_cards;
  j["actions"] = game.action_cards;
  j["memory"] = memory_to_json(game.memory);
  j["prior"] = game.prior;
  j["payoffs"] = game.payoffs;
  return j;
}

MultistageGame game_from_json(const json& j) {
  MultistageGame game;
  game.type_cards = int_list(need(j, "types", "game"), "game.types");
  game.action_cards = int_list(need(j, "actions", "game"), "game.actions");
  game.memory = memory_from_json(need(j, "memory", "game"));
  const int n = static_cast<int>(game.type_cards.size());
  if (j.contains("players") && j.at("players") != n)
    throw ValidationError("game.players: does not match the length of \"types\"");

  const json& prior = need(j, "prior", "game");
  if (!prior.is_array() || static_cast<int>(prior.size()) != n)
    throw ValidationError("game.prior: expected one row per player");
  for (int i = 0; i < n; ++i) {
    std::string what = "game.prior row " + std::to_string(i + 1);
    std::vector<double> row = double_list(prior.at(static_cast<std::size_t>(i)), what);
    if (static_cast<int>(row.size()) != game.type_cards[static_cast<std::size_t>(i)])
      throw ValidationError(what + ": expected " +
                            std::to_string(game.type_cards[static_cast<std::size_t>(i)]) +
                            " entries");
    row = normalized_rows(std::move(row), 1, static_cast<Index>(row.size()), what, 1e-9);
    game.prior.push_back(std::move(row));
  }

  const json& payoffs = need(j, "payoffs", "game");
  if (!payoffs.is_array() || static_cast<int>(payoffs.size()) != n)
    throw ValidationError("game.payoffs: expected one tensor per player");
  for (int i = 0; i < n; ++i)
    game.payoffs.push_back(double_list(payoffs.at(static_cast<std::size_t>(i)),
                                       "game.payoffs tensor " + std::to_string(i + 1)));

  throw_if_invalid(validate_game(game), "game");
  return game;
}

ordered_json functional_to_json(const BellFunctional& functional) {
  ordered_json j;
  j["types"] = functional.type_cards;
  j["actions"] = functional.action_cards;
  j["coefficients"] = functional.coefficients;
  if (functional.reference_bounds) {
    ordered_json rb;
    if (functional.reference_bounds->classical) rb["classical"] = *functional.reference_bounds->classical;
    if (functional.reference_bounds->quantum) rb["quantum"] = *functional.reference_bounds->quantum;
    if (functional.reference_bounds->nonsignaling)
      rb["nonsignaling"] = *functional.reference_bounds->nonsignaling;
    j["reference_bounds"] = rb;
  }
  return j;
}

BellFunctional functional_from_json(const json& j) {
  BellFunctional f;
  f.type_cards = int_list(need(j, "types", "functional"), "functional.types");
  f.action_cards = int_list(need(j, "actions", "functional"), "functional.actions");
  f.coefficients = double_list(need(j, "coefficients", "functional"), "functional.coefficients");
  GameShape shape = f.shape_with(Memory::no_communication(static_cast<int>(f.type_cards.size())));
  throw_if_invalid(validate_shape(shape), "functional");
  if (static_cast<Index>(f.coefficients.size()) != shape.cells())
    throw ValidationError("functional.coefficients: expected " + std::to_string(shape.cells()) +
                          " entries, got " + std::to_string(f.coefficients.size()));
  if (j.contains("reference_bounds")) {
    const json& rb = j.at("reference_bounds");
    if (!rb.is_object()) throw ValidationError("functional.reference_bounds: expected an object");
    ReferenceBounds bounds;
    if (rb.contains("classical")) bounds.classical = rb.at("classical").get<double>();
    if (rb.contains("quantum")) bounds.quantum = rb.at("quantum").get<double>();
    if (rb.contains("nonsignaling")) bounds.nonsignaling = rb.at("nonsignaling").get<double>();
    f.reference_bounds = bounds;
  }
  return f;
}

ordered_json distribution_to_json(const ConditionalDistribution& dist) {
  ordered_json j;
  j["types"] = dist.type_cards;
  j["actions"] = dist.action_cards;
  std::vector<std::vector<double>> rows;
  const Index A = dist.action_space();
  for (Index t = 0; t < dist.type_space(); ++t) {
    std::vector<double> row(static_cast<std::size_t>(A));
    for (Index a = 0; a < A; ++a) row[static_cast<std::size_t>(a)] = dist.table[static_cast<std::size_t>(t * A + a)];
    rows.push_back(std::move(row));
  }
  j["table"] = rows;
  return j;
}

ConditionalDistribution distribution_from_json(const json& j) {
  std::vector<int> types = int_list(need(j, "types", "distribution"), "distribution.types");
  std::vector<int> actions = int_list(need(j, "actions", "distribution"), "distribution.actions");
  const json& table = need(j, "table", "distribution");
  if (!table.is_array()) throw ValidationError("distribution.table: expected an array of rows");
  std::vector<double> flat;
  Index cols = -1;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::vector<double> row =
        double_list(table.at(r), "distribution.table row " + std::to_string(r));
    if (cols < 0) cols = static_cast<Index>(row.size());
    if (static_cast<Index>(row.size()) != cols)
      throw ValidationError("distribution.table: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ConditionalDistribution::from_table(std::move(types), std::move(actions),
                                             std::move(flat));
}

ordered_json advisor_to_json(const Advisor& advisor, const GameShape& shape) {
  ordered_json j;
  j["types"] = shape.type_cards;
  j["actions"] = shape.action_cards;
  j["memory"] = memory_to_json(shape.memory);
  j["weights"] = advisor.weights;
  std::vector<std::vector<std::vector<int>>> profiles;
  profiles.reserve(advisor.profiles.size());
  for (const auto& p : advisor.profiles) profiles.push_back(p.actions);
  j["profiles"] = profiles;
  return j;
}

std::pair<Advisor, GameShape> advisor_from_json(const json& j) {
  GameShape shape;
  shape.type_cards = int_list(need(j, "types", "advisor"), "advisor.types");
  shape.action_cards = int_list(need(j, "actions", "advisor"), "advisor.actions");
  shape.memory = memory_from_json(need(j, "memory", "advisor"));
  throw_if_invalid(validate_shape(shape), "advisor");

  Advisor advisor;
  advisor.weights = double_list(need(j, "weights", "advisor"), "advisor.weights");
  advisor.weights = normalized_rows(std::move(advisor.weights), 1,
                                    static_cast<Index>(advisor.weights.size()),
                                    "advisor.weights", 1e-9);
  const json& profiles = need(j, "profiles", "advisor");
  if (!profiles.is_array() || profiles.size() != advisor.weights.size())
    throw ValidationError("advisor.profiles: expected one profile per weight");
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const json& pj = profiles.at(k);
    std::string what = "advisor.profiles[" + std::to_string(k) + "]";
    if (!pj.is_array() || static_cast<int>(pj.size()) != shape.players())
      throw ValidationError(what + ": expected one action table per player");
    DeterministicStrategyProfile profile;
    for (int i = 0; i < shape.players(); ++i) {
      std::vector<int> row = int_list(pj.at(static_cast<std::size_t>(i)),
                                      what + " player " + std::to_string(i + 1));
      if (static_cast<Index>(row.size()) != shape.setting_card(i))
        throw ValidationError(what + " player " + std::to_string(i + 1) + ": expected " +
                              std::to_string(shape.setting_card(i)) + " settings");
      for (int a : row)
        if (a < 0 || a >= shape.action_cards[static_cast<std::size_t>(i)])
          throw ValidationError(what + " player " + std::to_string(i + 1) +
                                ": action out of range");
      profile.actions.push_back(std::move(row));
    }
    advisor.profiles.push_back(std::move(profile));
  }
  return {std::move(advisor), std::move(shape)};
}

ordered_json quantum_to_json(const QuantumStrategy& strategy) {
  ordered_json j;
  j["dims"] = strategy.local_dims;
  j["types"] = strategy.type_cards;
  j["actions"] = strategy.action_cards;
  j["memory"] = memory_to_json(strategy.memory);
  j["state"] = mat_to_json(strategy.state.rho);
  ordered_json families = ordered_json::array();
  for (const auto& family : strategy.families) {
    ordered_json settings = ordered_json::array();
    for (const auto& effects : family.by_setting) {
      ordered_json outcome = ordered_json::array();
      for (const auto& m : effects) outcome.push_back(mat_to_json(m));
      settings.push_back(std::move(outcome));
    }
    families.push_back(std::move(settings));
  }
  j["families"] = families;
  return j;
}

QuantumStrategy quantum_from_json(const json& j) {
  QuantumStrategy qs;
  qs.local_dims = int_list(need(j, "dims", "strategy"), "strategy.dims");
  qs.type_cards = int_list(need(j, "types", "strategy"), "strategy.types");
  qs.action_cards = int_list(need(j, "actions", "strategy"), "strategy.actions");
  qs.memory = memory_from_json(need(j, "memory", "strategy"));
  throw_if_invalid(validate_shape(qs.shape()), "strategy");
  if (qs.local_dims.size() != qs.type_cards.size())
    throw ValidationError("strategy.dims: expected one dimension per player");
  for (int d : qs.local_dims)
    if (d < 1) throw ValidationError("strategy.dims: dimensions must be positive");

  qs.state.rho = mat_from_json(need(j, "state", "strategy"), qs.dim(), "strategy.state");

  const json& families = need(j, "families", "strategy");
  GameShape shape = qs.shape();
  if (!families.is_array() || static_cast<int>(families.size()) != shape.players())
    throw ValidationError("strategy.families: expected one family per player");
  for (int i = 0; i < shape.players(); ++i) {
    const json& fj = families.at(static_cast<std::size_t>(i));
    std::string what = "strategy.families player " + std::to_string(i + 1);
    if (!fj.is_array() || static_cast<Index>(fj.size()) != shape.setting_card(i))
      throw ValidationError(what + ": expected " + std::to_string(shape.setting_card(i)) +
                            " settings");
    MeasurementFamily family;
    for (std::size_t x = 0; x < fj.size(); ++x) {
      const json& oj = fj.at(x);
      std::string swhat = what + " setting " + std::to_string(x);
      if (!oj.is_array() ||
          static_cast<int>(oj.size()) != qs.action_cards[static_cast<std::size_t>(i)])
        throw ValidationError(swhat + ": expected " +
                              std::to_string(qs.action_cards[static_cast<std::size_t>(i)]) +
                              " effects");
      std::vector<Mat> effects;
      for (std::size_t a = 0; a < oj.size(); ++a)
        effects.push_back(mat_from_json(oj.at(a), qs.local_dims[static_cast<std::size_t>(i)],
                                        swhat + " effect " + std::to_string(a)));
      family.by_setting.push_back(std::move(effects));
    }
    qs.families.push_back(std::move(family));
  }
  return qs;
}

ordered_json box_to_json(const AugmentedBox& box) {
  ordered_json j;
  j["inputs"] = box.input_cards;
  j["outputs"] = box.output_cards;
  std::vector<std::vector<double>> rows;
  const Index O = box.output_space();
  for (Index x = 0; x < box.input_space(); ++x) {
    std::vector<double> row(static_cast<std::size_t>(O));
    for (Index o = 0; o < O; ++o) row[static_cast<std::size_t>(o)] = box.table[static_cast<std::size_t>(x * O + o)];
    rows.push_back(std::move(row));
  }
  j["table"] = rows;
  return j;
}

AugmentedBox box_from_json(const json& j) {
  AugmentedBox box;
  box.input_cards = int_list(need(j, "inputs", "box"), "box.inputs");
  box.output_cards = int_list(need(j, "outputs", "box"), "box.outputs");
  const json& table = need(j, "table", "box");
  if (!table.is_array()) throw ValidationError("box.table: expected an array of rows");
  const Index X = box.input_space();
  const Index O = box.output_space();
  if (static_cast<Index>(table.size()) != X)
    throw ValidationError("box.table: expected " + std::to_string(X) + " rows");
  std::vector<double> flat;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::vector<double> row = double_list(table.at(r), "box.table row " + std::to_string(r));
    if (static_cast<Index>(row.size()) != O)
      throw ValidationError("box.table row " + std::to_string(r) + ": expected " +
                            std::to_string(O) + " entries");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  box.table = normalized_rows(std::move(flat), X, O, "box.table", 1e-9);
  return box;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << dump_json(j);
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace bellgame
