// Command line front end: generate / solve / backbone / landscape / experiment.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrp/driver.hpp"
#include "nrp/experiment.hpp"
#include "nrp/instgen.hpp"
#include "nrp/io.hpp"
#include "nrp/landscape.hpp"

namespace {

std::string basename_no_ext(const std::string& path) {
  std::string base = path;
  if (const auto slash = base.find_last_of('/'); slash != std::string::npos)
    base = base.substr(slash + 1);
  if (const auto dot = base.find_last_of('.'); dot != std::string::npos)
    base = base.substr(0, dot);
  return base;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct BudgetFlags {
  std::string ratio;
  std::int64_t bound = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ratio", ratio,
                    "budget as a fraction of the total requirement cost");
    cmd->add_option("--budget", bound, "budget as an absolute bound");
  }

  nrp::Budget resolve(const nrp::InstanceFile& file) const {
    if (!ratio.empty() && bound >= 0)
      throw nrp::InputError("--ratio and --budget are mutually exclusive");
    if (!ratio.empty())
      return nrp::budget_from_ratio(file.instance, nrp::Ratio::parse(ratio));
    if (bound >= 0) return nrp::Budget(bound);
    if (file.budget) return nrp::Budget(*file.budget);
    throw nrp::InputError(
        "no budget given: pass --ratio or --budget, or keep a budget line in "
        "the instance file");
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nrp::InputError("cannot open '" + path + "' for writing");
  out << text;
}

nlohmann::json trace_json(const nrp::LevelTrace& t) {
  return {{"level", t.level},
          {"customers_before", t.customers_before},
          {"customers_after", t.customers_after},
          {"backbone_size", t.backbone_size},
          {"budget_after", t.budget_after}};
}

int cmd_generate(const std::string& preset_name, const std::string& config_path,
                 std::optional<std::uint64_t> seed, const std::string& ratio,
                 const std::string& out_path) {
  if (preset_name.empty() == config_path.empty())
    throw nrp::InputError("pass exactly one of --preset and --config");
  nrp::GeneratorConfig cfg = preset_name.empty()
                                 ? nrp::read_generator_config_file(config_path)
                                 : nrp::preset(preset_name);
  if (seed) cfg.seed = *seed;
  const nrp::Instance inst = nrp::generate(cfg);
  std::optional<std::int64_t> budget;
  if (!ratio.empty())
    budget = nrp::budget_from_ratio(inst, nrp::Ratio::parse(ratio)).bound;
  write_text(out_path, nrp::write_instance(inst, budget));
  return 0;
}

int cmd_solve(const std::string& instance_path, const BudgetFlags& budget_flags,
              const std::string& algo_name, std::optional<std::uint64_t> seed_flag,
              const nrp::SearchParams& search, nrp::AbmaParams abma,
              std::int32_t cap, bool verbose) {
  const auto choice = nrp::solver_from_name(algo_name);
  if (!choice) throw nrp::InputError("unknown algorithm '" + algo_name + "'");

  const nrp::InstanceFile file = nrp::read_instance_file(instance_path);
  const nrp::Budget budget = budget_flags.resolve(file);

  const std::uint64_t seed = seed_flag ? *seed_flag : random_seed();
  if (!seed_flag) std::cerr << "seed " << seed << " (chosen at random)\n";

  nrp::TraceSink sink;
  if (verbose) {
    sink = [](std::int32_t restart, const nrp::LevelTrace& t) {
      nlohmann::json line = trace_json(t);
      line["restart"] = restart;
      std::cerr << line.dump() << "\n";
    };
  }

  abma.operator_params = search;
  const nrp::SolveOutcome outcome =
      nrp::run_solver(*choice, file.instance, budget, search, abma, seed, cap, sink);

  nlohmann::json params{{"iterations", search.iterations},
                        {"restarts", search.restarts}};
  if (*choice == nrp::SolverChoice::Lmsa) {
    params["temperature"] = search.lmsa_temperature;
    params["beta"] = search.lmsa_beta;
  }
  if (*choice == nrp::SolverChoice::Abma) {
    params["locals"] = abma.local_optima_per_level;
    params["stop_ratio"] = abma.scale_stop_ratio;
    params["restarts"] = abma.restarts;
    params["operator"] = abma.op == nrp::LocalOperator::Gcs        ? "gcs"
                         : abma.op == nrp::LocalOperator::Lmsa     ? "lmsa"
                                                                   : "hillclimb";
  }
  if (*choice == nrp::SolverChoice::Exact) params["cap"] = cap;

  nlohmann::json report{{"instance", basename_no_ext(instance_path)},
                        {"algorithm", std::string(nrp::solver_name(*choice))},
                        {"seed", seed},
                        {"budget", budget.bound},
                        {"profit", outcome.profit},
                        {"cost", outcome.cost},
                        {"selected", outcome.best.selected_ids()},
                        {"evaluations", outcome.evaluations},
                        {"elapsed_ms", outcome.seconds * 1000.0},
                        {"params", params}};
  if (budget.ratio) report["ratio"] = budget.ratio->str();
  if (outcome.optima_count) report["optima_count"] = *outcome.optima_count;
  if (*choice == nrp::SolverChoice::Abma) {
    nlohmann::json traces = nlohmann::json::array();
    for (const nrp::LevelTrace& t : outcome.traces) traces.push_back(trace_json(t));
    report["level_traces"] = traces;
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_backbone(const std::string& instance_path, const BudgetFlags& budget_flags,
                 std::int32_t cap) {
  const nrp::InstanceFile file = nrp::read_instance_file(instance_path);
  const nrp::Budget budget = budget_flags.resolve(file);
  const nrp::PartialAssignment bone =
      nrp::exact_backbone(file.instance, budget, cap);
  std::cout << bone.serialize();
  return 0;
}

int cmd_landscape(const std::string& instance_path, const BudgetFlags& budget_flags,
                  const std::string& algo_name, std::int32_t rounds,
                  std::int64_t iterations, std::optional<std::uint64_t> seed_flag,
                  std::int32_t cap, const std::string& out_path) {
  const auto algo = nrp::algorithm_from_name(algo_name);
  if (!algo) throw nrp::InputError("unknown local search '" + algo_name + "'");
  const nrp::InstanceFile file = nrp::read_instance_file(instance_path);

  nrp::LandscapeParams params;
  params.algo = *algo;
  params.rounds = rounds;
  params.search.iterations = iterations;
  params.seed = seed_flag ? *seed_flag : random_seed();
  if (!seed_flag) std::cerr << "seed " << params.seed << " (chosen at random)\n";
  params.enumeration_cap = cap;

  const nrp::LandscapeResult result =
      nrp::landscape_study(file.instance, budget_flags.resolve(file), params);
  write_text(out_path, nrp::landscape_csv(result));
  return 0;
}

int cmd_experiment(const std::string& manifest_path, const std::string& csv_path,
                   const std::string& json_path) {
  std::ifstream in(manifest_path);
  if (!in) throw nrp::InputError("cannot open manifest '" + manifest_path + "'");
  const nrp::Manifest manifest = nrp::parse_manifest(in);
  const nrp::ExperimentResult result = nrp::run_experiment(manifest);
  write_text(csv_path, nrp::experiment_csv(result));
  if (!json_path.empty())
    write_text(json_path, nrp::experiment_json(result).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Next Release Problem toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate an instance file");
  std::string gen_preset, gen_config, gen_ratio, gen_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--preset", gen_preset, "bundled family: nrp-1 .. nrp-5");
  gen->add_option("--config", gen_config, "generator config file");
  gen->add_option("--seed", gen_seed, "generator seed (overrides the config)");
  gen->add_option("--ratio", gen_ratio, "append a budget line at this cost ratio");
  gen->add_option("-o,--output", gen_out, "output path (default: stdout)");

  // shared solver knobs
  std::string instance_path, algo = "gcs";
  BudgetFlags budget_flags;
  std::optional<std::uint64_t> seed;
  nrp::SearchParams search;
  nrp::AbmaParams abma;
  std::int32_t cap = nrp::kDefaultEnumerationCap;
  bool verbose = false;

  auto* solve = app.add_subcommand("solve", "run one solver on one instance");
  solve->add_option("instance", instance_path, "instance file")->required();
  budget_flags.attach(solve);
  solve->add_option("--algo", algo, "random|hillclimb|gcs|lmsa|abma|exact");
  solve->add_option("--seed", seed, "random seed (default: drawn and printed)");
  solve->add_option("--iters", search.iterations, "iterations per restart");
  solve->add_option("--restarts", search.restarts, "independent restarts");
  solve->add_option("--temp", search.lmsa_temperature, "lmsa initial temperature");
  solve->add_option("--beta", search.lmsa_beta, "lmsa cooling parameter");
  solve->add_option("--abma-restarts", abma.restarts, "abma restarts");
  solve->add_option("--locals", abma.local_optima_per_level,
                    "local optima per backbone estimate");
  solve->add_option("--stop-ratio", abma.scale_stop_ratio,
                    "stop reducing below this fraction of the customers");
  std::string op_name = "gcs";
  solve->add_option("--operator", op_name, "abma local operator: gcs|lmsa|hillclimb");
  solve->add_option("--cap", cap, "customer cap for --algo exact");
  solve->add_flag("-v,--verbose", verbose, "stream level traces to stderr");

  auto* backbone = app.add_subcommand("backbone", "exact backbone of a small instance");
  std::string bb_instance;
  BudgetFlags bb_budget;
  std::int32_t bb_cap = nrp::kDefaultEnumerationCap;
  backbone->add_option("instance", bb_instance, "instance file")->required();
  bb_budget.attach(backbone);
  backbone->add_option("--cap", bb_cap, "customer cap for the enumeration");

  auto* landscape = app.add_subcommand("landscape", "sample local optima vs a reference");
  std::string ls_instance, ls_algo = "hillclimb", ls_out;
  BudgetFlags ls_budget;
  std::int32_t ls_rounds = 1000, ls_cap = nrp::kDefaultEnumerationCap;
  std::int64_t ls_iters = 1000;
  std::optional<std::uint64_t> ls_seed;
  landscape->add_option("instance", ls_instance, "instance file")->required();
  ls_budget.attach(landscape);
  landscape->add_option("--algo", ls_algo, "random|hillclimb|gcs|lmsa");
  landscape->add_option("--rounds", ls_rounds, "sampled local optima");
  landscape->add_option("--iters", ls_iters, "iterations per round");
  landscape->add_option("--seed", ls_seed, "base seed (default: drawn and printed)");
  landscape->add_option("--cap", ls_cap, "exact reference below this size");
  landscape->add_option("-o,--output", ls_out, "CSV path (default: stdout)");

  auto* experiment = app.add_subcommand("experiment", "run a comparison manifest");
  std::string ex_manifest, ex_csv, ex_json;
  experiment->add_option("manifest", ex_manifest, "JSON manifest")->required();
  experiment->add_option("--csv", ex_csv, "CSV output path (default: stdout)");
  experiment->add_option("--json", ex_json, "JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_preset, gen_config, gen_seed, gen_ratio, gen_out);
    if (solve->parsed()) {
      if (const auto op = nrp::local_operator_from_name(op_name)) {
        abma.op = *op;
      } else {
        throw nrp::InputError("unknown abma operator '" + op_name + "'");
      }
      return cmd_solve(instance_path, budget_flags, algo, seed, search, abma,
                       cap, verbose);
    }
    if (backbone->parsed()) return cmd_backbone(bb_instance, bb_budget, bb_cap);
    if (landscape->parsed())
      return cmd_landscape(ls_instance, ls_budget, ls_algo, ls_rounds, ls_iters,
                           ls_seed, ls_cap, ls_out);
    if (experiment->parsed()) return cmd_experiment(ex_manifest, ex_csv, ex_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
