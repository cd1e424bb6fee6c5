#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nrp/abma.hpp"
#include "nrp/backbone.hpp"
#include "nrp/search.hpp"

namespace nrp {

/// Everything `solve` can run: the four stochastic searches, the multilevel
/// driver and the exhaustive oracle.
enum class SolverChoice { Random, HillClimb, Gcs, Lmsa, Abma, Exact };

inline std::optional<SolverChoice> solver_from_name(std::string_view name) {
  if (name == "random") return SolverChoice::Random;
  if (name == "hillclimb") return SolverChoice::HillClimb;
  if (name == "gcs") return SolverChoice::Gcs;
  if (name == "lmsa") return SolverChoice::Lmsa;
  if (name == "abma") return SolverChoice::Abma;
  if (name == "exact") return SolverChoice::Exact;
  return std::nullopt;
}

inline std::string_view solver_name(SolverChoice s) {
  switch (s) {
    case SolverChoice::Random: return "random";
    case SolverChoice::HillClimb: return "hillclimb";
    case SolverChoice::Gcs: return "gcs";
    case SolverChoice::Lmsa: return "lmsa";
    case SolverChoice::Abma: return "abma";
    case SolverChoice::Exact: return "exact";
  }
  return "?";
}

struct SolveOutcome {
  Solution best;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
  std::uint64_t evaluations = 0;
  double seconds = 0.0;
  std::vector<LevelTrace> traces;        ///< abma only
  std::optional<std::size_t> optima_count;  ///< exact only
};

/// Uniform entry point used by the CLI, the landscape study and the
/// experiment harness.  `seed` overrides the seeds inside the param structs.
inline SolveOutcome run_solver(SolverChoice choice, const Instance& inst,
                               const Budget& budget, SearchParams search,
                               AbmaParams abma, std::uint64_t seed,
                               std::int32_t enumeration_cap = kDefaultEnumerationCap,
                               const TraceSink& on_trace = {}) {
  search.seed = seed;
  abma.operator_params.seed = seed;
  SolveOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  switch (choice) {
    case SolverChoice::Exact: {
      const OptimaSet opt = enumerate_optima(inst, budget, enumeration_cap);
      out.best = opt.solutions.front();
      out.profit = opt.profit;
      out.cost = solution_cost(inst, out.best);
      out.optima_count = opt.solutions.size();
      break;
    }
    case SolverChoice::Abma: {
      Rng rng(seed);
      AbmaResult res = abma_solve(inst, budget, abma, rng, on_trace);
      out.best = std::move(res.result.best);
      out.profit = res.result.profit;
      out.cost = res.result.cost;
      out.evaluations = res.result.evaluations;
      out.traces = std::move(res.traces);
      break;
    }
    default: {
      const Algorithm algo = choice == SolverChoice::Random ? Algorithm::RandomSearch
                             : choice == SolverChoice::HillClimb ? Algorithm::HillClimb
                             : choice == SolverChoice::Gcs       ? Algorithm::Gcs
                                                                 : Algorithm::Lmsa;
      Rng rng(seed);
      SearchResult res = run_algorithm(algo, inst, budget, search, rng);
      out.best = std::move(res.best);
      out.profit = res.profit;
      out.cost = res.cost;
      out.evaluations = res.evaluations;
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace nrp
