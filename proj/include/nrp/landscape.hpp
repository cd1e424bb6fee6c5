#pragma once

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nrp/driver.hpp"

namespace nrp {

struct LandscapeParams {
  Algorithm algo = Algorithm::HillClimb;
  std::int32_t rounds = 1000;
  SearchParams search;        ///< per-round operator parameters (restarts forced to 1)
  std::uint64_t seed = 1;
  std::int32_t enumeration_cap = kDefaultEnumerationCap;
};

struct LandscapeRow {
  double distance = 0.0;  ///< hamming distance to the reference, divided by n
  double profit = 0.0;    ///< profit divided by the reference profit
};

struct LandscapeResult {
  bool exact_reference = false;  ///< true when the reference is a global optimum
  Solution reference;
  std::int64_t reference_profit = 0;
  std::vector<LandscapeRow> rows;
};

/// Samples `rounds` local optima and reports, per round, the normalized
/// distance to a reference solution and the normalized profit.
///
/// Within the enumeration cap the reference is the canonically first global
/// optimum, so both columns live in [0, 1].  Above the cap the reference is
/// the best solution a long multilevel run can find, and the columns are
/// relative to that best-known point instead.
inline LandscapeResult landscape_study(const Instance& inst, const Budget& budget,
                                       const LandscapeParams& params) {
  LandscapeResult out;
  if (inst.customer_count() <= params.enumeration_cap) {
    const OptimaSet opt = enumerate_optima(inst, budget, params.enumeration_cap);
    out.exact_reference = true;
    out.reference = opt.solutions.front();
    out.reference_profit = opt.profit;
  } else {
    AbmaParams ref;
    ref.operator_params.iterations = 1000;
    Rng rng(splitmix64(params.seed));
    const AbmaResult res = abma_solve(inst, budget, ref, rng);
    out.exact_reference = false;
    out.reference = res.result.best;
    out.reference_profit = res.result.profit;
  }

  const std::int32_t n = inst.customer_count();
  SearchParams per_round = params.search;
  per_round.restarts = 1;
  out.rows.reserve(static_cast<std::size_t>(params.rounds));
  for (std::int32_t round = 0; round < params.rounds; ++round) {
    Rng rng(splitmix64(params.seed + static_cast<std::uint64_t>(round)));
    const SearchResult res =
        run_algorithm(params.algo, inst, budget, per_round, rng);
    LandscapeRow row;
    row.distance =
        n == 0 ? 0.0
               : static_cast<double>(hamming_distance(res.best, out.reference)) / n;
    row.profit = out.reference_profit == 0
                     ? 1.0
                     : static_cast<double>(res.profit) /
                           static_cast<double>(out.reference_profit);
    out.rows.push_back(row);
  }
  return out;
}

/// CSV with two comment lines naming the reference kind and profit, then a
/// header row and one data row per round.
inline void write_landscape_csv(const LandscapeResult& result, std::ostream& out) {
  out << "# reference: " << (result.exact_reference ? "exact" : "best-known")
      << "\n";
  out << "# reference_profit: " << result.reference_profit << "\n";
  out << "normalized_distance,normalized_profit\n";
  out << std::fixed << std::setprecision(6);
  for (const LandscapeRow& row : result.rows)
    out << row.distance << "," << row.profit << "\n";
}

inline std::string landscape_csv(const LandscapeResult& result) {
  std::ostringstream out;
  write_landscape_csv(result, out);
  return out.str();
}

}  // namespace nrp
