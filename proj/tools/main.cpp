#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bellgame/classical.hpp"
#include "bellgame/common.hpp"
#include "bellgame/distributions.hpp"
#include "bellgame/game.hpp"
#include "bellgame/io.hpp"
#include "bellgame/nonsignaling.hpp"
#include "bellgame/quantum.hpp"
#include "bellgame/scenarios.hpp"
#include "bellgame/seesaw.hpp"
#include "bellgame/shape.hpp"

namespace {

using namespace bellgame;

int g_exit_code = 0;

class Stopwatch {
 public:
  double ms() const {
    auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// Accepts either a comma list of depths ("0,1,1") or a JSON array of windows
// ("[[],[0],[0]]").
Memory parse_memory(const std::string& spec) {
  std::string trimmed = spec;
  while (!trimmed.empty() && trimmed.front() == ' ') trimmed.erase(trimmed.begin());
  if (!trimmed.empty() && trimmed.front() == '[')
    return memory_from_json(json::parse(trimmed, nullptr, true));
  std::vector<int> depths;
  std::size_t pos = 0;
  while (pos <= trimmed.size()) {
    std::size_t comma = trimmed.find(',', pos);
    std::string tok = trimmed.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      depths.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ValidationError("memory: cannot parse \"" + spec + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Memory::from_depths(depths);
}

struct SourceArgs {
  std::string scenario;
  std::string game_path;
  std::string functional_path;
  std::string memory_spec;
  int player = 1;
};

struct OutputArgs {
  std::string format = "table";
  std::string out_path;
  std::string witness_out;
};

void add_source_options(CLI::App* cmd, SourceArgs& src, bool with_functional) {
  cmd->add_option("--scenario", src.scenario, "Builtin scenario name");
  cmd->add_option("--game", src.game_path, "Game description (JSON)");
  if (with_functional) {
    cmd->add_option("--functional", src.functional_path, "Functional description (JSON)");
    cmd->add_option("--player", src.player,
                    "Player whose payoff defines the functional when --game is used (1-based)");
  }
  cmd->add_option("--memory", src.memory_spec,
                  "Override memory: comma depths like 0,1,1 or JSON windows like [[],[0],[0]]");
}

void add_output_options(CLI::App* cmd, OutputArgs& out, bool with_witness) {
  cmd->add_option("--format", out.format, "Output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--out", out.out_path, "Write the JSON report to this path");
  if (with_witness) cmd->add_option("--witness-out", out.witness_out, "Write the witness to this path");
}

MultistageGame resolve_game(const SourceArgs& src) {
  MultistageGame game;
  if (!src.scenario.empty()) {
    game = load_scenario(src.scenario).game;
  } else if (!src.game_path.empty()) {
    game = game_from_json(load_json_file(src.game_path));
  } else {
    throw ValidationError("provide --scenario or --game");
  }
  if (!src.memory_spec.empty()) {
    game.memory = parse_memory(src.memory_spec);
    auto issues = validate_game(game);
    if (!issues.empty()) throw ValidationError("after --memory override: " + issues.front());
  }
  return game;
}

struct FunctionalTarget {
  BellFunctional functional;
  Memory memory;
  std::string source;
};

FunctionalTarget resolve_functional(const SourceArgs& src) {
  FunctionalTarget t;
  if (!src.scenario.empty()) {
    ScenarioRecord rec = load_scenario(src.scenario);
    t.functional = std::move(rec.functional);
    t.memory = rec.game.memory;
    t.source = "scenario:" + src.scenario;
  } else if (!src.functional_path.empty()) {
    t.functional = functional_from_json(load_json_file(src.functional_path));
    t.memory = Memory::no_communication(static_cast<int>(t.functional.type_cards.size()));
    t.source = src.functional_path;
  } else if (!src.game_path.empty()) {
    MultistageGame game = game_from_json(load_json_file(src.game_path));
    if (src.player < 1 || src.player > game.players())
      throw ValidationError("--player out of range");
    t.functional = functional_from_game(game, src.player - 1);
    t.memory = game.memory;
    t.source = src.game_path + "#player" + std::to_string(src.player);
  } else {
    throw ValidationError("provide --scenario, --functional or --game");
  }
  if (!src.memory_spec.empty()) t.memory = parse_memory(src.memory_spec);
  if (t.memory.players() != static_cast<int>(t.functional.type_cards.size()))
    throw ValidationError("memory: wrong number of players");
  return t;
}

void emit(const ordered_json& report, const OutputArgs& out,
          const std::function<void()>& table) {
  if (out.format == "json")
    std::cout << dump_json(report);
  else
    table();
  if (!out.out_path.empty()) write_json_file(out.out_path, report);
}

ordered_json advisor_json_for_profile(const DeterministicStrategyProfile& profile,
                                      const GameShape& shape) {
  Advisor advisor;
  advisor.weights = {1.0};
  advisor.profiles = {profile};
  return advisor_to_json(advisor, shape);
}

void print_profile(const DeterministicStrategyProfile& profile) {
  for (std::size_t i = 0; i < profile.actions.size(); ++i)
    std::cout << "  player " << i + 1 << " table   " << fmt_list(profile.actions[i]) << "\n";
}

// ---------------------------------------------------------------- commands

void run_classical_bound(const SourceArgs& src, const OutputArgs& out, bool force) {
  FunctionalTarget t = resolve_functional(src);
  EnumerationOptions opts;
  opts.override_guard = force;
  Stopwatch sw;
  ClassicalBoundResult res = classical_bound(t.functional, t.memory, opts);
  ordered_json report;
  report["command"] = "classical-bound";
  report["source"] = t.source;
  report["memory"] = memory_to_json(t.memory);
  report["profile_count"] = res.profile_count;
  report["value"] = res.value;
  report["witness_index"] = res.witness_index;
  report["witness"] = res.witness.actions;
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "classical-bound " << t.source << "\n";
    std::cout << "  profiles        " << res.profile_count << "\n";
    std::cout << "  value           " << fmt(res.value) << "\n";
    std::cout << "  witness index   " << res.witness_index << "\n";
    print_profile(res.witness);
  });
  if (!out.witness_out.empty())
    write_json_file(out.witness_out,
                    advisor_json_for_profile(res.witness, t.functional.shape_with(t.memory)));
}

void run_support(const SourceArgs& src, const OutputArgs& out, std::vector<double> beta,
                 double offset, bool force) {
  MultistageGame game = resolve_game(src);
  if (static_cast<int>(beta.size()) != game.players())
    throw ValidationError("--beta: expected one weight per player");
  EnumerationOptions opts;
  opts.override_guard = force;
  Stopwatch sw;
  ClassicalBoundResult res = support_function(game, PayoffWeights{beta, offset}, game.memory, opts);
  ordered_json report;
  report["command"] = "support";
  report["beta"] = beta;
  report["offset"] = offset;
  report["profile_count"] = res.profile_count;
  report["value"] = res.value;
  report["witness_index"] = res.witness_index;
  report["witness"] = res.witness.actions;
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "support function\n";
    std::cout << "  profiles        " << res.profile_count << "\n";
    std::cout << "  value           " << fmt(res.value) << "\n";
    print_profile(res.witness);
  });
  if (!out.witness_out.empty())
    write_json_file(out.witness_out, advisor_json_for_profile(res.witness, game.shape()));
}

void run_algebraic_max(const SourceArgs& src, const OutputArgs& out) {
  FunctionalTarget t = resolve_functional(src);
  double value = algebraic_max(t.functional);
  ordered_json report;
  report["command"] = "algebraic-max";
  report["source"] = t.source;
  report["value"] = value;
  emit(report, out, [&] { std::cout << "algebraic-max   " << fmt(value) << "\n"; });
}

void run_ns_bound(const SourceArgs& src, const OutputArgs& out, Index guard) {
  FunctionalTarget t = resolve_functional(src);
  NsBoundOptions opts;
  if (guard > 0) opts.variable_guard = guard;
  Stopwatch sw;
  NsBoundResult res = ns_bound(t.functional, t.memory, opts);
  ordered_json report;
  report["command"] = "ns-bound";
  report["source"] = t.source;
  report["memory"] = memory_to_json(t.memory);
  report["box_inputs"] = res.optimizer.input_cards;
  report["box_outputs"] = res.optimizer.output_cards;
  report["lp_variables"] = res.optimizer.table.size();
  report["value"] = res.value;
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "ns-bound " << t.source << "\n";
    std::cout << "  box inputs      " << fmt_list(res.optimizer.input_cards) << "\n";
    std::cout << "  lp variables    " << res.optimizer.table.size() << "\n";
    std::cout << "  value           " << fmt(res.value) << "\n";
  });
  if (!out.witness_out.empty()) write_json_file(out.witness_out, box_to_json(res.optimizer));
}

void run_quantum_eval(const SourceArgs& src, const OutputArgs& out,
                      const std::string& strategy_path) {
  std::optional<ScenarioRecord> rec;
  if (!src.scenario.empty()) rec = load_scenario(src.scenario);

  QuantumStrategy qs;
  std::string strategy_source;
  if (!strategy_path.empty()) {
    qs = quantum_from_json(load_json_file(strategy_path));
    strategy_source = strategy_path;
  } else if (rec && rec->builtin) {
    qs = rec->builtin();
    strategy_source = "builtin:" + rec->name;
  } else {
    throw ValidationError(rec ? "scenario has no builtin strategy; provide --strategy"
                              : "provide --strategy or --scenario");
  }

  std::optional<MultistageGame> game;
  std::optional<BellFunctional> functional;
  if (!src.game_path.empty()) {
    game = game_from_json(load_json_file(src.game_path));
  } else if (!src.functional_path.empty()) {
    functional = functional_from_json(load_json_file(src.functional_path));
  } else if (rec) {
    game = rec->game;
    functional = rec->functional;
  } else {
    throw ValidationError("provide --game, --functional or --scenario for the target");
  }

  GameShape shape = game ? game->shape()
                         : functional->shape_with(
                               src.memory_spec.empty()
                                   ? Memory::no_communication(
                                         static_cast<int>(functional->type_cards.size()))
                                   : parse_memory(src.memory_spec));
  if (!src.memory_spec.empty()) shape.memory = parse_memory(src.memory_spec);

  Stopwatch sw;
  ConditionalDistribution dist = evaluate_quantum_strategy(qs, shape);
  ordered_json report;
  report["command"] = "quantum-eval";
  report["strategy"] = strategy_source;
  if (functional) report["value"] = functional_value(*functional, dist);
  if (game) {
    std::vector<double> payoffs;
    for (int j = 0; j < game->players(); ++j) payoffs.push_back(expected_payoff(*game, dist, j));
    report["payoffs"] = payoffs;
  }
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "quantum-eval " << strategy_source << "\n";
    if (report.contains("value"))
      std::cout << "  value           " << fmt(report["value"].get<double>()) << "\n";
    if (report.contains("payoffs")) {
      const auto& p = report["payoffs"];
      for (std::size_t j = 0; j < p.size(); ++j)
        std::cout << "  payoff U_" << j + 1 << "      " << fmt(p[j].get<double>()) << "\n";
    }
  });
  if (!out.witness_out.empty()) write_json_file(out.witness_out, distribution_to_json(dist));
}

void run_seesaw(const SourceArgs& src, const OutputArgs& out, std::vector<int> dims,
                const SeesawOptions& opts) {
  FunctionalTarget t = resolve_functional(src);
  if (dims.empty()) dims.assign(t.functional.type_cards.size(), 2);
  Stopwatch sw;
  SeesawResult res = seesaw_optimize(t.functional, dims, t.memory, opts);
  ordered_json report;
  report["command"] = "seesaw";
  report["source"] = t.source;
  report["memory"] = memory_to_json(t.memory);
  report["dims"] = dims;
  report["restarts"] = opts.restarts;
  report["seed"] = opts.seed;
  report["best_value"] = res.best_value;
  report["best_restart"] = res.best_restart;
  report["restart_values"] = res.restart_values;
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "seesaw " << t.source << "\n";
    std::cout << "  dims            " << fmt_list(dims) << "\n";
    std::cout << "  restarts        " << opts.restarts << " (seed " << opts.seed << ")\n";
    std::cout << "  best value      " << fmt(res.best_value) << " (restart " << res.best_restart
              << ")\n";
  });
  if (!out.witness_out.empty()) write_json_file(out.witness_out, quantum_to_json(res.best_strategy));
}

void run_equilibrium_check(const SourceArgs& src, const OutputArgs& out,
                           const std::string& advisor_path, const std::string& strategy_path,
                           double tol) {
  MultistageGame game = resolve_game(src);
  ordered_json report;
  report["command"] = "equilibrium-check";
  std::vector<double> gains;
  std::string kind;

  if (!advisor_path.empty()) {
    kind = "advisor";
    auto [advisor, shape] = advisor_from_json(load_json_file(advisor_path));
    if (shape != game.shape())
      throw ValidationError("advisor: shape does not match the game");
    for (int j = 0; j < game.players(); ++j) gains.push_back(deviation_gain(game, advisor, j));
  } else {
    kind = "quantum";
    QuantumStrategy qs;
    if (!strategy_path.empty()) {
      qs = quantum_from_json(load_json_file(strategy_path));
    } else if (!src.scenario.empty()) {
      ScenarioRecord rec = load_scenario(src.scenario);
      if (!rec.builtin) throw ValidationError("scenario has no builtin strategy");
      qs = rec.builtin();
    } else {
      throw ValidationError("provide --advisor or --strategy");
    }
    for (int j = 0; j < game.players(); ++j)
      gains.push_back(quantum_equilibrium_gain(game, qs, j));
  }

  double max_gain = 0.0;
  for (double g : gains) max_gain = std::max(max_gain, g);
  report["kind"] = kind;
  report["tol"] = tol;
  report["gains"] = gains;
  report["max_gain"] = max_gain;
  report["equilibrium"] = max_gain <= tol;
  emit(report, out, [&] {
    std::cout << "equilibrium-check (" << kind << ")\n";
    for (std::size_t j = 0; j < gains.size(); ++j)
      std::cout << "  gain player " << j + 1 << "   " << fmt(gains[j]) << "\n";
    std::cout << "  equilibrium     " << (max_gain <= tol ? "yes" : "no") << " (tol " << tol
              << ")\n";
  });
  if (max_gain > tol) g_exit_code = 2;
}

void run_vertices(const SourceArgs& src, const OutputArgs& out, bool force) {
  MultistageGame game = resolve_game(src);
  EnumerationOptions opts;
  opts.override_guard = force;
  Stopwatch sw;
  std::vector<std::vector<double>> verts = payoff_vertices(game, game.memory, opts);
  ordered_json report;
  report["command"] = "vertices";
  report["count"] = verts.size();
  report["vertices"] = verts;
  report["wall_time_ms"] = sw.ms();
  emit(report, out, [&] {
    std::cout << "payoff vertices (" << verts.size() << ")\n";
    for (const auto& v : verts) {
      std::cout << " ";
      for (double x : v) std::cout << " " << fmt(x);
      std::cout << "\n";
    }
  });
}

void run_scenario_list(const OutputArgs& out) {
  std::vector<std::string> names = list_scenarios();
  ordered_json report;
  report["command"] = "scenario-list";
  report["scenarios"] = names;
  emit(report, out, [&] {
    for (const auto& n : names) std::cout << n << "\n";
  });
}

void run_scenario_emit(const std::string& name, const std::string& dir, const OutputArgs& out) {
  ScenarioRecord rec = load_scenario(name);
  std::vector<std::string> written;
  std::string base = dir.empty() ? rec.name : dir + "/" + rec.name;
  write_json_file(base + ".game.json", game_to_json(rec.game));
  written.push_back(base + ".game.json");
  write_json_file(base + ".functional.json", functional_to_json(rec.functional));
  written.push_back(base + ".functional.json");
  if (rec.builtin) {
    write_json_file(base + ".strategy.json", quantum_to_json(rec.builtin()));
    written.push_back(base + ".strategy.json");
  }
  ordered_json report;
  report["command"] = "scenario-emit";
  report["scenario"] = rec.name;
  report["written"] = written;
  emit(report, out, [&] {
    for (const auto& p : written) std::cout << "wrote " << p << "\n";
  });
}

void run_scenario_verify(const std::string& name, const OutputArgs& out) {
  ScenarioRecord rec = load_scenario(name);
  ordered_json checks = ordered_json::array();
  bool all_pass = true;

  auto add_check = [&](const std::string& key, double expected, double actual, double tol,
                       const std::string& note) {
    bool pass = std::abs(actual - expected) <= tol;
    all_pass = all_pass && pass;
    ordered_json c;
    c["key"] = key;
    c["expected"] = expected;
    c["actual"] = actual;
    c["pass"] = pass;
    if (!note.empty()) c["note"] = note;
    checks.push_back(c);
  };

  std::vector<std::string> issues = consistency_report(rec);
  all_pass = all_pass && issues.empty();

  for (const ReferenceValue& ref : rec.references) {
    if (ref.key == "classical") {
      ClassicalBoundResult res = classical_bound(rec.functional, rec.game.memory);
      add_check(ref.key, ref.value, res.value, 0.0, "");
    } else if (ref.key == "classical_ccd") {
      Memory silent = Memory::no_communication(rec.game.players());
      ClassicalBoundResult res = classical_bound(rec.functional, silent);
      add_check(ref.key, ref.value, res.value, 0.0, "");
    } else if (ref.key == "quantum" || ref.key == "quantum_qecd") {
      if (!rec.builtin) continue;
      ConditionalDistribution dist =
          evaluate_quantum_strategy(rec.builtin(), rec.game.shape());
      double v = functional_value(rec.functional, dist);
      if (ref.key == "quantum") {
        add_check(ref.key, ref.value, v, 1e-9, "");
      } else {
        bool pass = v >= ref.value - 2e-2 && v <= ref.value + 1e-3;
        all_pass = all_pass && pass;
        ordered_json c;
        c["key"] = ref.key;
        c["expected"] = ref.value;
        c["actual"] = v;
        c["pass"] = pass;
        c["note"] = "builtin state printed to fixed precision; interval [-2e-2, +1e-3]";
        checks.push_back(c);
      }
    } else if (ref.key == "nonsignaling") {
      GameShape shape = rec.functional.shape_with(rec.game.memory);
      Index vars = shape.action_space();
      for (int i = 0; i < shape.players(); ++i) vars *= shape.setting_card(i);
      if (vars <= 512) {
        NsBoundResult res = ns_bound(rec.functional, rec.game.memory);
        add_check(ref.key, ref.value, res.value, 1e-7, "");
      } else {
        add_check(ref.key, ref.value, algebraic_max(rec.functional), 0.0,
                  "large instance; checked against the algebraic ceiling");
      }
    } else if (ref.key == "algebraic") {
      add_check(ref.key, ref.value, algebraic_max(rec.functional), 0.0, "");
    }
  }

  ordered_json report;
  report["command"] = "scenario-verify";
  report["scenario"] = rec.name;
  report["consistency"] = issues;
  report["checks"] = checks;
  report["pass"] = all_pass;
  emit(report, out, [&] {
    std::cout << "scenario-verify " << rec.name << "\n";
    if (!issues.empty())
      for (const auto& d : issues) std::cout << "  inconsistent:   " << d << "\n";
    for (const auto& c : checks)
      std::cout << "  " << (c["pass"].get<bool>() ? "pass" : "FAIL") << "  "
                << c["key"].get<std::string>() << "  expected " << fmt(c["expected"].get<double>())
                << "  actual " << fmt(c["actual"].get<double>()) << "\n";
    std::cout << (all_pass ? "ok" : "FAILED") << "\n";
  });
  if (!all_pass) g_exit_code = 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistage Bell game toolbox: classical, quantum and no-signaling analysis"};
  app.require_subcommand(1);

  SourceArgs src;
  OutputArgs out;
  bool force = false;
  std::vector<double> beta;
  double offset = 0.0;
  Index ns_guard = 0;
  std::string strategy_path, advisor_path;
  std::vector<int> dims;
  SeesawOptions seesaw_opts;
  double eq_tol = 1e-7;
  std::string scenario_name, emit_dir;

  auto* cb = app.add_subcommand("classical-bound", "Exact optimum over pure classical strategies");
  add_source_options(cb, src, true);
  add_output_options(cb, out, true);
  cb->add_flag("--force", force, "Ignore the enumeration size guard");
  cb->callback([&] { run_classical_bound(src, out, force); });

  auto* sp = app.add_subcommand("support", "Support function of the reachable payoff set");
  add_source_options(sp, src, false);
  add_output_options(sp, out, true);
  sp->add_option("--beta", beta, "Payoff weights, e.g. --beta 1,1")->delimiter(',')->required();
  sp->add_option("--offset", offset, "Reported alongside the value; not added to it");
  sp->add_flag("--force", force, "Ignore the enumeration size guard");
  sp->callback([&] { run_support(src, out, beta, offset, force); });

  auto* am = app.add_subcommand("algebraic-max", "Per-type coefficient maxima, summed");
  add_source_options(am, src, true);
  add_output_options(am, out, false);
  am->callback([&] { run_algebraic_max(src, out); });

  auto* nb = app.add_subcommand("ns-bound", "Optimum over no-signaling boxes (LP)");
  add_source_options(nb, src, true);
  add_output_options(nb, out, true);
  nb->add_option("--guard", ns_guard, "Override the LP variable guard");
  nb->callback([&] { run_ns_bound(src, out, ns_guard); });

  auto* qe = app.add_subcommand("quantum-eval", "Evaluate a measurement strategy");
  add_source_options(qe, src, true);
  add_output_options(qe, out, true);
  qe->add_option("--strategy", strategy_path, "Quantum strategy (JSON); default: scenario builtin");
  qe->callback([&] { run_quantum_eval(src, out, strategy_path); });

  auto* ss = app.add_subcommand("seesaw", "Alternating variational optimisation");
  add_source_options(ss, src, true);
  add_output_options(ss, out, true);
  ss->add_option("--dims", dims, "Local dimensions, e.g. --dims 2,2,2")->delimiter(',');
  ss->add_option("--restarts", seesaw_opts.restarts, "Random restarts");
  ss->add_option("--seed", seesaw_opts.seed, "Base seed");
  ss->add_option("--tol", seesaw_opts.tol, "Sweep improvement stop threshold");
  ss->add_option("--sweeps", seesaw_opts.max_sweeps, "Maximum sweeps per restart");
  ss->add_option("--threads", seesaw_opts.threads, "Worker threads (0 = auto)");
  ss->callback([&] { run_seesaw(src, out, dims, seesaw_opts); });

  auto* ec = app.add_subcommand("equilibrium-check", "Best unilateral deviation gains");
  add_source_options(ec, src, false);
  add_output_options(ec, out, false);
  ec->add_option("--advisor", advisor_path, "Advisor (JSON): weighted pure profiles");
  ec->add_option("--strategy", strategy_path, "Quantum strategy (JSON); default: scenario builtin");
  ec->add_option("--tol", eq_tol, "Equilibrium tolerance on the maximum gain");
  ec->callback([&] { run_equilibrium_check(src, out, advisor_path, strategy_path, eq_tol); });

  auto* vx = app.add_subcommand("vertices", "All pure-strategy payoff vectors, deduplicated");
  add_source_options(vx, src, false);
  add_output_options(vx, out, false);
  vx->add_flag("--force", force, "Ignore the enumeration size guard");
  vx->callback([&] { run_vertices(src, out, force); });

  auto* sc = app.add_subcommand("scenario", "Catalog operations");
  sc->require_subcommand(1);
  auto* sl = sc->add_subcommand("list", "List catalog names");
  add_output_options(sl, out, false);
  sl->callback([&] { run_scenario_list(out); });
  auto* se = sc->add_subcommand("emit", "Write a scenario's JSON files");
  se->add_option("name", scenario_name, "Scenario name")->required();
  se->add_option("--dir", emit_dir, "Target directory (default: current)");
  add_output_options(se, out, false);
  se->callback([&] { run_scenario_emit(scenario_name, emit_dir, out); });
  auto* sv = sc->add_subcommand("verify", "Recompute a scenario's reference values");
  sv->add_option("name", scenario_name, "Scenario name")->required();
  add_output_options(sv, out, false);
  sv->callback([&] { run_scenario_verify(scenario_name, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit_code;
}
