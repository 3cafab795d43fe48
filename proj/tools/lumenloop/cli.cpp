#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lumenloop/dsl/builtins.hpp"
#include "lumenloop/dsl/format.hpp"
#include "lumenloop/dsl/interpreter.hpp"
#include "lumenloop/dsl/parser.hpp"
#include "lumenloop/dsl/validate.hpp"
#include "lumenloop/loop/http_provider.hpp"
#include "lumenloop/loop/loop.hpp"
#include "lumenloop/loop/prompts.hpp"
#include "lumenloop/loop/replay_provider.hpp"
#include "lumenloop/neuro/genetic.hpp"
#include "lumenloop/simulation.hpp"
#include "lumenloop/text.hpp"

namespace lumenloop::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Raised inside a command to stop with a given exit status; the message goes
// to the error stream.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Exit{kUsage, "cannot read '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool forces_path(const std::string& ref) { return ref.starts_with("./") || ref.starts_with("/"); }

ScenarioSpec resolve_scenario(const std::string& ref) {
  if (!forces_path(ref) && is_builtin_scenario(ref)) {
    return builtin_scenario(ref);
  }
  try {
    return load_scenario(read_file(ref));
  } catch (const SchemaError& e) {
    throw Exit{kUsage, ref + ": invalid scenario: " + e.what()};
  } catch (const ValidationError& e) {
    throw Exit{kUsage, ref + ": invalid scenario: " + e.what()};
  }
}

struct ResolvedController {
  std::string kind;  // builtin, rules or genome
  ControllerFactory factory;
};

ResolvedController resolve_controller(const std::string& ref, std::ostream& err) {
  std::string source;
  std::string kind;
  if (!forces_path(ref) && dsl::is_builtin(ref)) {
    source = std::string(dsl::builtin_source(ref));
    kind = "builtin";
  } else {
    source = read_file(ref);
    kind = ref.ends_with(".json") ? "genome" : "rules";
  }

  if (kind == "genome") {
    try {
      auto [spec, genome] = neuro::genome_from_json(source);
      return {kind, neuro::network_controller_factory(spec, std::make_shared<const neuro::Genome>(genome))};
    } catch (const Error& e) {
      throw Exit{kUsage, ref + ": invalid genome: " + e.what()};
    }
  }

  try {
    auto program = dsl::parse_program(source);
    const auto diagnostics = dsl::validate(program);
    for (const auto& d : diagnostics) {
      err << ref << ": " << dsl::to_string(d) << '\n';
    }
    if (dsl::has_errors(diagnostics)) {
      throw Exit{kUsage, ref + ": controller rejected"};
    }
    return {kind, dsl::rule_controller_factory(std::make_shared<const dsl::RuleProgram>(std::move(program)))};
  } catch (const dsl::LexError& e) {
    throw Exit{kUsage, ref + ": " + e.what()};
  } catch (const dsl::ParseError& e) {
    throw Exit{kUsage, ref + ": " + e.what()};
  }
}

FitnessWeights parse_weights(const std::string& text) {
  FitnessWeights w;
  std::vector<double> values;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) {
        throw std::invalid_argument(part);
      }
    } catch (const std::exception&) {
      throw Exit{kUsage, "--weights expects three numbers 'people,energy,trip', got '" + text + "'"};
    }
  }
  if (values.size() != 3 || !std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw Exit{kUsage, "--weights expects three numbers 'people,energy,trip', got '" + text + "'"};
  }
  w.w_people = values[0];
  w.w_energy = values[1];
  w.w_trip = values[2];
  return w;
}

json weights_json(const FitnessWeights& w) {
  return {{"people", w.w_people}, {"energy", w.w_energy}, {"trip", w.w_trip}};
}

constexpr const char* kCsvHeader = "scenario,solution,energy,people,trip,fitness";

void write_row(std::ostream& out, const std::string& scenario, const std::string& solution,
               const SimulationMetrics& m) {
  out << scenario << ',' << solution << ',' << to_decimal(m.energy_pct) << ',' << to_decimal(m.people_pct) << ','
      << to_decimal(m.trip_pct) << ',' << to_decimal(m.fitness) << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    throw Exit{kUsage, "cannot write '" + path.string() + "'"};
  }
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Exit{kUsage, "cannot create output directory '" + dir + "': " + ec.message()};
  }
  return fs::path(dir);
}

// Written before any work starts; `argv` alone is enough to re-run.
void write_manifest(const fs::path& dir, const std::string& command, const std::vector<std::string>& args,
                    json config, json outputs) {
  json doc = {{"tool", "lumenloop"},
              {"version", LUMENLOOP_VERSION},
              {"command", command},
              {"argv", std::vector<std::string>(args.begin() + 1, args.end())},
              {"config", std::move(config)},
              {"outputs", std::move(outputs)}};
  write_text(dir / "manifest.json", doc.dump(2) + "\n");
}

json trace_line(const TickTrace& t) {
  json poles = json::array();
  for (const auto& p : t.poles) {
    poles.push_back({{"id", p.pole_id},
                     {"ambient", p.reading.ambient},
                     {"motion", p.reading.motion},
                     {"signal", p.reading.signal},
                     {"current_light", p.reading.current_light},
                     {"ticks_since_motion", p.reading.ticks_since_motion},
                     {"light", p.command.light},
                     {"listen", p.command.listen},
                     {"broadcast", p.command.broadcast}});
  }
  json people = json::array();
  for (const auto& p : t.people) {
    people.push_back({{"id", p.person_id},
                      {"pole", p.pole_id},
                      {"active", p.active},
                      {"moved", p.moved},
                      {"finished", p.finished}});
  }
  return {{"tick", t.tick}, {"poles", std::move(poles)}, {"people", std::move(people)}};
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOptions {
  std::string scenario = "scenario1";
  std::string controller;
  std::string trace;
  std::string weights = "1,0.4,0.6";
  std::uint64_t seed = 0;
  std::string out_dir = kDefaultOutDir;
};

int cmd_simulate(const SimulateOptions& o, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  const FitnessWeights weights = parse_weights(o.weights);
  ScenarioSpec scenario = resolve_scenario(o.scenario);
  scenario.rng_seed = o.seed;
  const ResolvedController controller = resolve_controller(o.controller, err);

  const fs::path dir = prepare_out_dir(o.out_dir);
  json outputs = json::object();
  if (!o.trace.empty()) {
    outputs["trace"] = o.trace;
  }
  write_manifest(dir, "simulate", args,
                 {{"scenario", o.scenario},
                  {"controller", o.controller},
                  {"controller_kind", controller.kind},
                  {"seed", o.seed},
                  {"weights", weights_json(weights)}},
                 outputs);

  SimulationResult result;
  try {
    result = run_simulation(scenario, controller.factory, !o.trace.empty(), weights);
  } catch (const ControllerError& e) {
    throw Exit{kUsage, std::string("controller fault: ") + e.what()};
  }
  if (!o.trace.empty()) {
    std::ofstream trace(o.trace, std::ios::trunc);
    if (!trace) {
      throw Exit{kUsage, "cannot write trace '" + o.trace + "'"};
    }
    for (const auto& t : result.trace) {
      trace << trace_line(t).dump() << '\n';
    }
  }
  out << kCsvHeader << '\n';
  write_row(out, scenario.name, o.controller, result.metrics);
  return kSuccess;
}

// ---- evolve -----------------------------------------------------------------

struct EvolveOptions {
  std::string scenario = "scenario1";
  neuro::EvolutionConfig config;
  int hidden = 6;
  unsigned threads = 0;
  std::string weights = "1,0.4,0.6";
  std::string out_dir = kDefaultOutDir;
};

int cmd_evolve(const EvolveOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const FitnessWeights weights = parse_weights(o.weights);
  const ScenarioSpec scenario = resolve_scenario(o.scenario);
  neuro::NetworkSpec spec;
  spec.n_hidden = o.hidden;
  try {
    o.config.validate();
    spec.validate();
  } catch (const ConfigError& e) {
    throw Exit{kUsage, e.what()};
  }

  const fs::path dir = prepare_out_dir(o.out_dir);
  const auto& c = o.config;
  write_manifest(dir, "evolve", args,
                 {{"scenario", o.scenario},
                  {"generations", c.generations},
                  {"population", c.population_size},
                  {"tournament", c.tournament_size},
                  {"elitism", c.elitism_count},
                  {"crossover", c.crossover_probability},
                  {"mutation_rate", c.mutation_rate},
                  {"mutation_sigma", c.mutation_sigma},
                  {"init_range", c.init_range},
                  {"hidden", spec.n_hidden},
                  {"seed", c.seed},
                  {"weights", weights_json(weights)}},
                 {{"log", "evolution.csv"}, {"best_genome", "best_genome.json"}});

  const auto result = neuro::run_evolution(c, spec, scenario, weights, o.threads);
  {
    std::ofstream csv(dir / "evolution.csv", std::ios::trunc);
    neuro::write_evolution_csv(csv, result.log);
  }
  write_text(dir / "best_genome.json", neuro::genome_to_json(spec, result.best) + "\n");

  const auto best = std::make_shared<const neuro::Genome>(result.best);
  const auto metrics = run_simulation(scenario, neuro::network_controller_factory(spec, best), false, weights).metrics;
  out << kCsvHeader << '\n';
  write_row(out, scenario.name, "neuroevolution", metrics);
  err << "best fitness " << to_fixed(metrics.fitness) << " after " << c.generations << " generations; wrote "
      << (dir / "best_genome.json").string() << '\n';
  return kSuccess;
}

// ---- gpt-loop ---------------------------------------------------------------

struct LoopOptions {
  std::string scenario = "scenario1";
  loop::LoopConfig config;
  std::string replay;
  bool calibration_stub = false;
  std::string weights = "1,0.4,0.6";
  std::string out_dir = kDefaultOutDir;
};

int cmd_gpt_loop(LoopOptions o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const FitnessWeights weights = parse_weights(o.weights);
  const ScenarioSpec scenario = resolve_scenario(o.scenario);
  o.config.scenario = o.scenario;
  o.config.provider = o.replay.empty() ? "http" : "replay";
  try {
    o.config.validate();
  } catch (const ConfigError& e) {
    throw Exit{kUsage, e.what()};
  }

  std::unique_ptr<loop::Provider> provider;
  std::string endpoint;
  if (!o.replay.empty()) {
    try {
      provider = std::make_unique<loop::ReplayProvider>(loop::load_replay_script(o.replay));
    } catch (const ConfigError& e) {
      throw Exit{kUsage, e.what()};
    }
  } else {
    try {
      auto http = loop::http_config_from_env();
      http.timeout = std::chrono::seconds(o.config.timeout_seconds);
      endpoint = http.base_url;
      provider = std::make_unique<loop::HttpProvider>(std::move(http));
    } catch (const ConfigError& e) {
      throw Exit{kUsage, std::string(e.what()) + "; export " + loop::kApiKeyEnv +
                             " (and optionally " + loop::kApiBaseEnv + ") or pass --replay <script.jsonl>"};
    }
  }

  const fs::path dir = prepare_out_dir(o.out_dir);
  const auto& c = o.config;
  json config = {{"scenario", o.scenario},
                 {"threshold", c.fitness_threshold},
                 {"max_iterations", c.max_iterations},
                 {"max_repair_attempts", c.max_repair_attempts},
                 {"provider", c.provider},
                 {"model", c.model},
                 {"temperature", c.temperature},
                 {"timeout_seconds", c.timeout_seconds},
                 {"history", c.history},
                 {"calibration_stub", o.calibration_stub},
                 {"weights", weights_json(weights)}};
  if (!o.replay.empty()) {
    config["replay"] = o.replay;
  } else {
    config["endpoint"] = endpoint;
  }
  write_manifest(dir, "gpt-loop", args, config, {{"transcript", "transcript.jsonl"}, {"controller", "controller.rules"}});

  loop::TranscriptWriter writer((dir / "transcript.jsonl").string());
  loop::ProgramEvaluator evaluator = loop::simulation_evaluator(scenario, weights);
  if (o.calibration_stub) {
    evaluator = loop::calibration_stub(std::move(evaluator));
  }
  const std::string system_prompt =
      loop::build_initial_prompt(loop::describe_scenario(scenario, weights), dsl::language_reference());
  const loop::Transcript t = loop::run_loop(c, *provider, system_prompt, evaluator, &writer);

  out << "iteration,outcome,repair_attempts,energy,people,trip,fitness\n";
  const loop::IterationRecord* best = nullptr;
  for (const auto& r : t.records) {
    out << r.index << ',' << loop::to_string(r.outcome) << ',' << r.repair_attempts;
    if (r.metrics) {
      out << ',' << to_decimal(r.metrics->energy_pct) << ',' << to_decimal(r.metrics->people_pct) << ','
          << to_decimal(r.metrics->trip_pct) << ',' << to_decimal(r.metrics->fitness) << '\n';
      if (best == nullptr || r.metrics->fitness > best->metrics->fitness) {
        best = &r;
      }
    } else {
      out << ",,,,\n";
    }
  }
  if (best != nullptr) {
    write_text(dir / "controller.rules", *best->program + "\n");
  }

  err << "status: " << loop::to_string(t.status) << " after " << t.records.size() << " iteration(s)";
  if (best != nullptr) {
    err << "; best fitness " << to_fixed(best->metrics->fitness) << " (iteration " << best->index << ")";
  }
  err << '\n';
  switch (t.status) {
    case loop::TerminalStatus::threshold_met: return kSuccess;
    case loop::TerminalStatus::provider_failure:
      err << "provider failure: " << t.failure << '\n';
      return kProviderFailure;
    case loop::TerminalStatus::iteration_budget_exhausted: return kBudgetExhausted;
  }
  return kBudgetExhausted;
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
  std::vector<std::string> controllers;
  std::vector<std::string> scenarios;
  std::string weights = "1,0.4,0.6";
  std::string out_dir = kDefaultOutDir;
};

int cmd_compare(const CompareOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  const FitnessWeights weights = parse_weights(o.weights);
  struct Entry {
    std::string label;
    std::string ref;
  };
  std::vector<Entry> entries;
  for (const auto& c : o.controllers) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) {
      entries.push_back({c, c});
    } else {
      entries.push_back({c.substr(0, eq), c.substr(eq + 1)});
    }
  }
  std::vector<ScenarioSpec> scenarios;
  for (const auto& s : o.scenarios) {
    scenarios.push_back(resolve_scenario(s));
  }
  std::vector<ResolvedController> controllers;
  for (const auto& e : entries) {
    controllers.push_back(resolve_controller(e.ref, err));
  }

  const fs::path dir = prepare_out_dir(o.out_dir);
  json listed = json::array();
  for (const auto& e : entries) {
    listed.push_back({{"label", e.label}, {"ref", e.ref}});
  }
  write_manifest(dir, "compare", args,
                 {{"controllers", listed}, {"scenarios", o.scenarios}, {"weights", weights_json(weights)}},
                 {{"table", "comparison.csv"}});

  std::ostringstream table;
  table << kCsvHeader << '\n';
  for (const auto& scenario : scenarios) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      try {
        write_row(table, scenario.name, entries[i].label,
                  run_simulation(scenario, controllers[i].factory, false, weights).metrics);
      } catch (const ControllerError& e) {
        throw Exit{kUsage, entries[i].label + " on " + scenario.name + ": controller fault: " + e.what()};
      }
    }
  }
  write_text(dir / "comparison.csv", table.str());
  out << table.str();
  return kSuccess;
}

// ---- fitness-check ----------------------------------------------------------

struct CheckOptions {
  std::string table;
  double tolerance = 0.03;
  std::string weights = "1,0.4,0.6";
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

int cmd_fitness_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  const FitnessWeights weights = parse_weights(o.weights);
  std::istringstream in(read_file(o.table));
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      header = split_csv_line(line);
    }
  }
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? std::nullopt : std::optional<std::size_t>(it - header.begin());
  };
  const auto ce = column("energy");
  const auto cp = column("people");
  const auto ct = column("trip");
  const auto cf = column("fitness");
  if (!ce || !cp || !ct || !cf) {
    throw Exit{kUsage, o.table + ": header must name the columns energy, people, trip and fitness"};
  }
  auto cl = column("label");
  if (!cl) {
    cl = column("solution");
  }

  struct Row {
    std::string label;
    PublishedRow values;
    double recomputed;
    double residual;
  };
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Exit{kUsage, o.table + ": line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                             " cells, header has " + std::to_string(header.size())};
    }
    auto number = [&](std::size_t col) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[col], &used);
        if (used == cells[col].size() && std::isfinite(v)) {
          return v;
        }
      } catch (const std::exception&) {
      }
      throw Exit{kUsage, o.table + ": line " + std::to_string(lineno) + ": '" + cells[col] + "' is not a number"};
    };
    Row r;
    r.label = cl ? cells[*cl] : "row " + std::to_string(rows.size() + 1);
    r.values = {number(*ce), number(*cp), number(*ct), number(*cf)};
    r.recomputed = compute_fitness({r.values.energy, r.values.people, r.values.trip, 0.0}, weights);
    r.residual = std::abs(r.recomputed - r.values.fitness);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) {
    throw Exit{kUsage, o.table + ": table has no rows"};
  }

  out << "label,expected,recomputed,residual\n";
  double max_residual = 0.0;
  for (const auto& r : rows) {
    out << r.label << ',' << to_decimal(r.values.fitness) << ',' << to_decimal(r.recomputed) << ','
        << to_decimal(r.residual) << '\n';
    max_residual = std::max(max_residual, r.residual);
  }
  err << "max residual " << to_fixed(max_residual, 4) << " over " << rows.size() << " rows (tolerance "
      << to_decimal(o.tolerance) << ")\n";
  int status = kSuccess;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].residual > o.tolerance) {
      err << "row " << i + 1 << " (" << rows[i].label << "): expected " << to_fixed(rows[i].values.fitness)
          << ", recomputed " << to_fixed(rows[i].recomputed) << ", residual " << to_fixed(rows[i].residual, 4)
          << " exceeds tolerance\n";
      status = kCheckFailed;
    }
  }
  return status;
}

// ---- rerun ------------------------------------------------------------------

int cmd_rerun(const std::string& manifest, std::ostream& out, std::ostream& err) {
  json doc;
  try {
    doc = json::parse(read_file(manifest));
  } catch (const json::parse_error& e) {
    throw Exit{kUsage, manifest + ": " + e.what()};
  }
  if (!doc.is_object() || !doc.contains("argv") || !doc["argv"].is_array()) {
    throw Exit{kUsage, manifest + ": not a run manifest"};
  }
  std::vector<std::string> args{"lumenloop"};
  for (const auto& a : doc["argv"]) {
    if (!a.is_string()) {
      throw Exit{kUsage, manifest + ": argv must hold strings"};
    }
    args.push_back(a.get<std::string>());
  }
  if (args.size() > 1 && args[1] == "rerun") {
    throw Exit{kUsage, manifest + ": refusing to rerun a rerun"};
  }
  return run_cli(args, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streetlight controller experiments: simulation, neuroevolution and a language-model design loop",
               "lumenloop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LUMENLOOP_VERSION);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run one controller on one scenario and print its metrics");
  simulate->add_option("--scenario", sim.scenario, "Built-in scenario name or JSON path")->capture_default_str();
  simulate->add_option("--controller", sim.controller, "Built-in name, rule file, or genome .json")->required();
  simulate->add_option("--trace", sim.trace, "Write a per-tick JSONL trace to this path");
  simulate->add_option("--seed", sim.seed, "Master seed recorded with the run")->capture_default_str();
  simulate->add_option("--weights", sim.weights, "Fitness weights people,energy,trip")->capture_default_str();
  simulate->add_option("--out-dir", sim.out_dir, "Directory for the manifest")->capture_default_str();

  EvolveOptions evo;
  auto* evolve = app.add_subcommand("evolve", "Evolve network controller weights with a genetic algorithm");
  evolve->add_option("--scenario", evo.scenario, "Built-in scenario name or JSON path")->capture_default_str();
  evolve->add_option("--generations", evo.config.generations)->capture_default_str();
  evolve->add_option("--population", evo.config.population_size)->capture_default_str();
  evolve->add_option("--tournament", evo.config.tournament_size)->capture_default_str();
  evolve->add_option("--elitism", evo.config.elitism_count)->capture_default_str();
  evolve->add_option("--crossover", evo.config.crossover_probability)->capture_default_str();
  evolve->add_option("--mutation-rate", evo.config.mutation_rate)->capture_default_str();
  evolve->add_option("--mutation-sigma", evo.config.mutation_sigma)->capture_default_str();
  evolve->add_option("--init-range", evo.config.init_range)->capture_default_str();
  evolve->add_option("--hidden", evo.hidden, "Hidden units")->capture_default_str();
  evolve->add_option("--seed", evo.config.seed)->capture_default_str();
  evolve->add_option("--threads", evo.threads, "Evaluation threads, 0 = hardware concurrency")->capture_default_str();
  evolve->add_option("--weights", evo.weights, "Fitness weights people,energy,trip")->capture_default_str();
  evolve->add_option("--out-dir", evo.out_dir)->capture_default_str();

  LoopOptions lp;
  auto* gpt = app.add_subcommand("gpt-loop", "Iterate language-model generated controllers until the threshold");
  gpt->add_option("--scenario", lp.scenario, "Built-in scenario name or JSON path")->capture_default_str();
  gpt->add_option("--threshold", lp.config.fitness_threshold)->capture_default_str();
  gpt->add_option("--max-iterations", lp.config.max_iterations)->capture_default_str();
  gpt->add_option("--max-repairs", lp.config.max_repair_attempts)->capture_default_str();
  gpt->add_option("--model", lp.config.model)->capture_default_str();
  gpt->add_option("--temperature", lp.config.temperature)->capture_default_str();
  gpt->add_option("--timeout", lp.config.timeout_seconds, "Request timeout in seconds")->capture_default_str();
  gpt->add_option("--replay", lp.replay, "Serve responses from a JSONL script instead of the network");
  gpt->add_flag("--calibration-stub", lp.calibration_stub,
                "Score the three built-in iteration programs with their published metrics");
  gpt->add_option("--weights", lp.weights, "Fitness weights people,energy,trip")->capture_default_str();
  gpt->add_option("--out-dir", lp.out_dir)->capture_default_str();

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Evaluate every controller on every scenario as CSV");
  compare->add_option("--controller", cmp.controllers, "[label=]ref; repeatable")->required();
  compare->add_option("--scenario", cmp.scenarios, "Scenario name or path; repeatable")->required();
  compare->add_option("--weights", cmp.weights, "Fitness weights people,energy,trip")->capture_default_str();
  compare->add_option("--out-dir", cmp.out_dir)->capture_default_str();

  CheckOptions chk;
  auto* check = app.add_subcommand("fitness-check", "Recompute fitness for a table of published rows");
  check->add_option("table,--table", chk.table, "CSV with energy,people,trip,fitness columns")->required();
  check->add_option("--tolerance", chk.tolerance)->capture_default_str();
  check->add_option("--weights", chk.weights, "Fitness weights people,energy,trip")->capture_default_str();

  std::string manifest;
  auto* rerun = app.add_subcommand("rerun", "Re-execute the command recorded in a manifest.json");
  rerun->add_option("manifest", manifest)->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, args, out, err);
    if (*evolve) return cmd_evolve(evo, args, out, err);
    if (*gpt) return cmd_gpt_loop(lp, args, out, err);
    if (*compare) return cmd_compare(cmp, args, out, err);
    if (*check) return cmd_fitness_check(chk, out, err);
    if (*rerun) return cmd_rerun(manifest, out, err);
  } catch (const Exit& e) {
    if (!e.message.empty()) {
      err << "lumenloop: " << e.message << '\n';
    }
    return e.code;
  } catch (const loop::TranscriptWriteError& e) {
    err << "lumenloop: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "lumenloop: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.empty()) {
    args.emplace_back("lumenloop");
  }
  return run_cli(args, out, err);
}

}  // namespace lumenloop::cli
