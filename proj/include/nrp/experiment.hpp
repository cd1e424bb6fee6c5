#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nrp/driver.hpp"
#include "nrp/instgen.hpp"
#include "nrp/io.hpp"

namespace nrp {

/// One instance of a comparison run: either a file on disk or a generator
/// preset with its own generation seed.
struct ManifestEntry {
  std::string name;
  std::string path;    ///< set for file-backed instances
  std::string preset;  ///< set for generated instances
  std::uint64_t generator_seed = 1;
};

struct Manifest {
  std::vector<ManifestEntry> instances;
  std::vector<Ratio> ratios;
  std::vector<SolverChoice> algorithms;
  SolverChoice baseline = SolverChoice::Gcs;
  std::int32_t repetitions = 1;
  std::uint64_t seed = 0;  ///< mandatory; every repetition's seed derives from it
  SearchParams search;
  AbmaParams abma;
};

/// Deterministic per-repetition seed; also the seed `solve --seed` needs to
/// reproduce one cell of a repetitions=1 table.
inline std::uint64_t experiment_seed(std::uint64_t base, std::size_t instance,
                                     std::size_t ratio, std::size_t algorithm,
                                     std::size_t repetition) {
  std::uint64_t s = base;
  s = splitmix64(s + 0x9e3779b97f4a7c15ull * (instance + 1));
  s = splitmix64(s + 0x9e3779b97f4a7c15ull * (ratio + 1));
  s = splitmix64(s + 0x9e3779b97f4a7c15ull * (algorithm + 1));
  s = splitmix64(s + 0x9e3779b97f4a7c15ull * (repetition + 1));
  return s;
}

/// Parses a JSON manifest:
///
///   {
///     "seed": 42,
///     "repetitions": 10,
///     "baseline": "gcs",
///     "ratios": ["0.3", 0.5, "0.7"],
///     "algorithms": ["gcs", "abma"],
///     "instances": [
///       {"path": "comm3.nrp"},
///       {"preset": "nrp-1", "seed": 7}
///     ],
///     "params": {"iterations": 1000, "restarts": 10, ...}
///   }
///
/// A missing "seed" is an error: tables must be reproducible.
inline Manifest parse_manifest(const nlohmann::json& j) {
  Manifest m;
  if (!j.contains("seed"))
    throw InputError("experiment manifest must declare a seed");
  m.seed = j.at("seed").get<std::uint64_t>();
  m.repetitions = j.value("repetitions", 1);
  if (m.repetitions < 1) throw InputError("repetitions must be >= 1");

  if (!j.contains("instances") || !j.at("instances").is_array() ||
      j.at("instances").empty())
    throw InputError("experiment manifest lists no instances");
  for (const auto& e : j.at("instances")) {
    ManifestEntry entry;
    if (e.contains("path")) {
      entry.path = e.at("path").get<std::string>();
      std::string base = entry.path;
      if (const auto slash = base.find_last_of('/'); slash != std::string::npos)
        base = base.substr(slash + 1);
      if (const auto dot = base.find_last_of('.'); dot != std::string::npos)
        base = base.substr(0, dot);
      entry.name = e.value("name", base);
    } else if (e.contains("preset")) {
      entry.preset = e.at("preset").get<std::string>();
      entry.generator_seed = e.value("seed", std::uint64_t{1});
      entry.name = e.value("name", entry.preset + "-s" +
                                       std::to_string(entry.generator_seed));
    } else {
      throw InputError("manifest instance needs either 'path' or 'preset'");
    }
    m.instances.push_back(std::move(entry));
  }

  if (!j.contains("ratios") || j.at("ratios").empty())
    throw InputError("experiment manifest lists no ratios");
  for (const auto& r : j.at("ratios")) {
    if (r.is_string())
      m.ratios.push_back(Ratio::parse(r.get<std::string>()));
    else
      m.ratios.push_back(Ratio::from_double(r.get<double>()));
  }

  if (!j.contains("algorithms") || j.at("algorithms").empty())
    throw InputError("experiment manifest lists no algorithms");
  for (const auto& a : j.at("algorithms")) {
    const auto choice = solver_from_name(a.get<std::string>());
    if (!choice) throw InputError("unknown algorithm '" + a.get<std::string>() + "'");
    m.algorithms.push_back(*choice);
  }

  {
    const std::string base = j.value("baseline", std::string(solver_name(m.algorithms.front())));
    const auto choice = solver_from_name(base);
    if (!choice) throw InputError("unknown baseline '" + base + "'");
    m.baseline = *choice;
    bool listed = false;
    for (SolverChoice a : m.algorithms) listed = listed || a == m.baseline;
    if (!listed) throw InputError("baseline must be one of the listed algorithms");
  }

  if (j.contains("params")) {
    const auto& p = j.at("params");
    m.search.iterations = p.value("iterations", m.search.iterations);
    m.search.restarts = p.value("restarts", m.search.restarts);
    m.search.lmsa_temperature = p.value("temperature", m.search.lmsa_temperature);
    m.search.lmsa_beta = p.value("beta", m.search.lmsa_beta);
    m.abma.restarts = p.value("restarts", m.abma.restarts);
    m.abma.local_optima_per_level = p.value("locals", m.abma.local_optima_per_level);
    m.abma.scale_stop_ratio = p.value("stop_ratio", m.abma.scale_stop_ratio);
    if (p.contains("operator")) {
      const auto op = local_operator_from_name(p.at("operator").get<std::string>());
      if (!op) throw InputError("unknown abma operator");
      m.abma.op = *op;
    }
    m.abma.operator_params = m.search;
    m.abma.operator_params.restarts = p.value("operator_restarts", 1);
  }
  return m;
}

inline Manifest parse_manifest(std::istream& in) {
  nlohmann::json j;
  in >> j;
  return parse_manifest(j);
}

/// One row of the comparison table.  Percent columns are relative to the
/// manifest's baseline algorithm on the same instance and ratio: positive
/// profit percent means more profit than the baseline, negative time percent
/// means faster.
struct ExperimentCell {
  std::string instance;
  Ratio ratio;
  std::int64_t bound = 0;
  SolverChoice algo = SolverChoice::Gcs;
  double mean_profit = 0.0;
  double mean_seconds = 0.0;
  double profit_pct = 0.0;
  double time_pct = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
};

inline ExperimentResult run_experiment(const Manifest& manifest) {
  ExperimentResult out;
  for (std::size_t ii = 0; ii < manifest.instances.size(); ++ii) {
    const ManifestEntry& entry = manifest.instances[ii];
    const Instance inst = entry.path.empty()
                              ? [&] {
                                  GeneratorConfig cfg = preset(entry.preset);
                                  cfg.seed = entry.generator_seed;
                                  return generate(cfg);
                                }()
                              : read_instance_file(entry.path).instance;

    for (std::size_t ir = 0; ir < manifest.ratios.size(); ++ir) {
      const Budget budget = budget_from_ratio(inst, manifest.ratios[ir]);
      std::vector<ExperimentCell> block;

      for (std::size_t ia = 0; ia < manifest.algorithms.size(); ++ia) {
        const SolverChoice algo = manifest.algorithms[ia];
        double profit_sum = 0.0, time_sum = 0.0;
        for (std::int32_t rep = 0; rep < manifest.repetitions; ++rep) {
          const std::uint64_t seed = experiment_seed(
              manifest.seed, ii, ir, ia, static_cast<std::size_t>(rep));
          const SolveOutcome one = run_solver(algo, inst, budget,
                                              manifest.search, manifest.abma, seed);
          profit_sum += static_cast<double>(one.profit);
          time_sum += one.seconds;
        }
        ExperimentCell cell;
        cell.instance = entry.name;
        cell.ratio = manifest.ratios[ir];
        cell.bound = budget.bound;
        cell.algo = algo;
        cell.mean_profit = profit_sum / manifest.repetitions;
        cell.mean_seconds = time_sum / manifest.repetitions;
        block.push_back(std::move(cell));
      }

      const ExperimentCell* base = nullptr;
      for (const ExperimentCell& c : block)
        if (c.algo == manifest.baseline) base = &c;
      for (ExperimentCell& c : block) {
        c.profit_pct = (base == nullptr || base->mean_profit == 0.0)
                           ? 0.0
                           : (c.mean_profit - base->mean_profit) /
                                 base->mean_profit * 100.0;
        c.time_pct = (base == nullptr || base->mean_seconds == 0.0)
                         ? 0.0
                         : (c.mean_seconds - base->mean_seconds) /
                               base->mean_seconds * 100.0;
        out.cells.push_back(std::move(c));
      }
    }
  }
  return out;
}

/// CSV table; mean profits are rounded to integers, times keep two decimals.
inline void write_experiment_csv(const ExperimentResult& result, std::ostream& out) {
  out << "instance,ratio,bound,algo,profit,time_s,profit_ratio_pct,time_ratio_pct\n";
  for (const ExperimentCell& c : result.cells) {
    out << c.instance << "," << c.ratio.str() << "," << c.bound << ","
        << solver_name(c.algo) << "," << std::llround(c.mean_profit) << ","
        << std::fixed << std::setprecision(2) << c.mean_seconds << ","
        << c.profit_pct << "," << c.time_pct << "\n";
    out.unsetf(std::ios_base::fixed);
  }
}

inline std::string experiment_csv(const ExperimentResult& result) {
  std::ostringstream out;
  write_experiment_csv(result, out);
  return out.str();
}

inline nlohmann::json experiment_json(const ExperimentResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ExperimentCell& c : result.cells) {
    rows.push_back({{"instance", c.instance},
                    {"ratio", c.ratio.str()},
                    {"bound", c.bound},
                    {"algo", std::string(solver_name(c.algo))},
                    {"profit", std::llround(c.mean_profit)},
                    {"time_s", c.mean_seconds},
                    {"profit_ratio_pct", c.profit_pct},
                    {"time_ratio_pct", c.time_pct}});
  }
  return nlohmann::json{{"cells", rows}};
}

}  // namespace nrp
