#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nrp/backbone.hpp"
#include "nrp/search.hpp"

namespace nrp {

enum class LocalOperator { Gcs, Lmsa, HillClimb };

inline std::optional<LocalOperator> local_operator_from_name(std::string_view name) {
  if (name == "gcs") return LocalOperator::Gcs;
  if (name == "lmsa") return LocalOperator::Lmsa;
  if (name == "hillclimb") return LocalOperator::HillClimb;
  return std::nullopt;
}

struct AbmaParams {
  std::int32_t restarts = 10;
  std::int32_t local_optima_per_level = 10;  ///< operator runs per backbone estimate
  double scale_stop_ratio = 0.3;  ///< reduce while customers >= ratio * original n
  LocalOperator op = LocalOperator::Gcs;
  SearchParams operator_params;  ///< budget for each embedded operator run

  void validate() const {
    if (restarts < 1) throw InputError("restarts must be >= 1");
    if (local_optima_per_level < 2)
      throw InputError("local_optima_per_level must be >= 2");
    if (!(scale_stop_ratio > 0.0 && scale_stop_ratio < 1.0))
      throw InputError("scale_stop_ratio must lie strictly between 0 and 1");
    operator_params.validate();
  }
};

/// One reduction step of one restart.
struct LevelTrace {
  std::int32_t level = 0;  ///< 1-based
  std::int32_t customers_before = 0;
  std::int32_t customers_after = 0;
  std::int32_t backbone_size = 0;
  std::int64_t budget_after = 0;
};

struct AbmaResult {
  SearchResult result;
  std::vector<LevelTrace> traces;  ///< traces of the winning restart
};

using OperatorFn = std::function<SearchResult(
    const Instance&, const Budget&, const SearchParams&, Rng&)>;

/// Called for every reduction step as it happens; `restart` is 0-based.
using TraceSink = std::function<void(std::int32_t restart, const LevelTrace&)>;

namespace abma_detail {

inline OperatorFn operator_fn(LocalOperator op) {
  switch (op) {
    case LocalOperator::Gcs:
      return [](const Instance& i, const Budget& b, const SearchParams& p,
                Rng& r) { return gcs(i, b, p, r); };
    case LocalOperator::Lmsa:
      return [](const Instance& i, const Budget& b, const SearchParams& p,
                Rng& r) { return lmsa(i, b, p, r); };
    case LocalOperator::HillClimb:
      return [](const Instance& i, const Budget& b, const SearchParams& p,
                Rng& r) { return hill_climb(i, b, p, r); };
  }
  throw InputError("unknown local operator");
}

struct RestartOutcome {
  Solution best;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
  std::uint64_t evaluations = 0;
  std::vector<LevelTrace> traces;
};

}  // namespace abma_detail

/// Approximate-backbone multilevel driver with an injectable local operator.
///
/// Per restart: run the operator `local_optima_per_level` times, intersect
/// the local optima into an approximate backbone, fix it and recurse on the
/// reduced sub-instance; stop once the sub-instance has shrunk below
/// scale_stop_ratio * original n customers or the backbone comes out empty.
/// The terminal sub-instance gets one more operator run, and that solution is
/// refined back through the level stack.  A restart finally answers with the
/// better of its refined solution and its best level-0 operator run, so
/// reduction can only help, never hide an already-found solution.
///
/// If the fixed-in pairs of a backbone would overrun the budget by
/// themselves, 1-pairs are dropped in increasing-profit order (ties to the
/// lower id) until the remainder fits.
inline AbmaResult abma_solve_with(const Instance& inst, const Budget& budget,
                                  const AbmaParams& params, const OperatorFn& op,
                                  Rng& rng, const TraceSink& on_trace = {}) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::int32_t original_n = inst.customer_count();
  const double threshold = params.scale_stop_ratio * original_n;

  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(params.restarts));
  for (auto& s : seeds) s = rng.fork_seed();

  AbmaResult out;
  out.result.best = Solution::all_zero(original_n);
  std::uint64_t total_evaluations = 0;
  bool have = false;

  for (std::int32_t restart = 0; restart < params.restarts; ++restart) {
    Rng sub_rng(seeds[static_cast<std::size_t>(restart)]);
    CostEvaluator scorer(inst);

    Instance cur = inst;
    Budget cur_budget = budget;
    std::vector<ReductionRecord> stack;
    std::vector<LevelTrace> traces;
    abma_detail::RestartOutcome outcome;
    bool outcome_set = false;

    std::int32_t level = 1;
    while (cur.customer_count() > 0 &&
           static_cast<double>(cur.customer_count()) >= threshold) {
      std::vector<Solution> locals;
      locals.reserve(static_cast<std::size_t>(params.local_optima_per_level));
      for (std::int32_t k = 0; k < params.local_optima_per_level; ++k) {
        SearchResult one = op(cur, cur_budget, params.operator_params, sub_rng);
        outcome.evaluations += one.evaluations;
        if (level == 1) {
          // Level-0 runs are whole-instance solutions and compete directly.
          const std::int64_t c = scorer.cost(one.best);
          if (c <= budget.bound) {
            const std::int64_t p = solution_profit(inst, one.best);
            if (!outcome_set || p > outcome.profit) {
              outcome.best = one.best;
              outcome.profit = p;
              outcome.cost = c;
              outcome_set = true;
            }
          }
        }
        locals.push_back(std::move(one.best));
      }

      PartialAssignment bone = approximate_backbone(locals);
      if (bone.empty()) break;

      // Shrink the backbone if its 1-pairs alone cannot be afforded.
      {
        ReqMask chosen(cur.requirement_count());
        std::vector<CustomerId> ones;
        for (const auto& [id, bit] : bone) {
          if (bit) {
            chosen |= cur.closure_mask(id);
            ones.push_back(id);
          }
        }
        std::sort(ones.begin(), ones.end(), [&](CustomerId a, CustomerId b) {
          return cur.profit(a) != cur.profit(b) ? cur.profit(a) < cur.profit(b)
                                                : a < b;
        });
        std::size_t drop = 0;
        while (cur.cost_of(chosen) > cur_budget.bound && drop < ones.size()) {
          bone.unfix(ones[drop++]);
          chosen.clear();
          for (const auto& [id, bit] : bone)
            if (bit) chosen |= cur.closure_mask(id);
        }
        if (bone.empty()) break;
      }

      Reduction red = reduce(cur, cur_budget, bone);
      LevelTrace trace{level, cur.customer_count(),
                       red.instance.customer_count(),
                       static_cast<std::int32_t>(bone.size()),
                       red.budget.bound};
      if (on_trace) on_trace(restart, trace);
      traces.push_back(trace);
      stack.push_back(std::move(red.record));
      cur = std::move(red.instance);
      cur_budget = red.budget;
      ++level;
    }

    SearchResult terminal = op(cur, cur_budget, params.operator_params, sub_rng);
    outcome.evaluations += terminal.evaluations;
    Solution refined = std::move(terminal.best);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      refined = refine(refined, *it);

    const std::int64_t refined_cost = scorer.cost(refined);
    if (refined_cost <= budget.bound) {
      const std::int64_t refined_profit = solution_profit(inst, refined);
      // Ties go to the refined solution: the whole point of the level stack.
      if (!outcome_set || refined_profit >= outcome.profit) {
        outcome.best = std::move(refined);
        outcome.profit = refined_profit;
        outcome.cost = refined_cost;
        outcome_set = true;
      }
    }
    if (!outcome_set) {
      outcome.best = Solution::all_zero(original_n);
      outcome.profit = 0;
      outcome.cost = 0;
      outcome_set = true;
    }
    outcome.evaluations += scorer.evaluations();
    outcome.traces = std::move(traces);

    total_evaluations += outcome.evaluations;
    if (!have || outcome.profit > out.result.profit) {
      out.result.best = std::move(outcome.best);
      out.result.profit = outcome.profit;
      out.result.cost = outcome.cost;
      out.traces = std::move(outcome.traces);
      have = true;
    }
  }

  out.result.evaluations = total_evaluations;
  out.result.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

inline AbmaResult abma_solve(const Instance& inst, const Budget& budget,
                             const AbmaParams& params, Rng& rng,
                             const TraceSink& on_trace = {}) {
  return abma_solve_with(inst, budget, params, abma_detail::operator_fn(params.op),
                         rng, on_trace);
}

inline AbmaResult abma_solve(const Instance& inst, const Budget& budget,
                             const AbmaParams& params) {
  Rng rng(params.operator_params.seed);
  return abma_solve(inst, budget, params, rng);
}

}  // namespace nrp
