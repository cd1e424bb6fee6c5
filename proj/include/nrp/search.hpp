#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "nrp/model.hpp"
#include "nrp/rng.hpp"

namespace nrp {

enum class Algorithm { RandomSearch, HillClimb, Gcs, Lmsa };

inline std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "random") return Algorithm::RandomSearch;
  if (name == "hillclimb") return Algorithm::HillClimb;
  if (name == "gcs") return Algorithm::Gcs;
  if (name == "lmsa") return Algorithm::Lmsa;
  return std::nullopt;
}

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::RandomSearch: return "random";
    case Algorithm::HillClimb: return "hillclimb";
    case Algorithm::Gcs: return "gcs";
    case Algorithm::Lmsa: return "lmsa";
  }
  return "?";
}

struct SearchParams {
  std::int64_t iterations = 1000;  ///< per-restart iteration budget
  std::int32_t restarts = 1;
  std::uint64_t seed = 1;
  double lmsa_temperature = 0.3;  ///< initial temperature T0
  double lmsa_beta = 1e-8;        ///< Lundy-Mees cooling parameter

  void validate() const {
    if (iterations < 1) throw InputError("iterations must be >= 1");
    if (restarts < 1) throw InputError("restarts must be >= 1");
    if (!(lmsa_temperature > 0)) throw InputError("temperature must be positive");
    if (!(lmsa_beta > 0)) throw InputError("beta must be positive");
  }
};

struct SearchResult {
  Solution best;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
  std::uint64_t evaluations = 0;  ///< number of solution_cost computations
  std::chrono::nanoseconds elapsed{0};
};

/// Counts cost evaluations and reuses one scratch mask across calls.
class CostEvaluator {
 public:
  explicit CostEvaluator(const Instance& inst)
      : inst_(&inst), scratch_(inst.requirement_count()) {}

  std::int64_t cost(const Solution& s) {
    ++count_;
    return solution_cost(*inst_, s, scratch_);
  }

  std::uint64_t evaluations() const { return count_; }

 private:
  const Instance* inst_;
  ReqMask scratch_;
  std::uint64_t count_ = 0;
};

/// Uniformly random total assignment (each bit an independent fair coin).
inline Solution random_assignment(std::int32_t n, Rng& rng) {
  Solution s(n);
  for (CustomerId c = 1; c <= n; ++c) s.set(c, rng.coin());
  return s;
}

namespace search_detail {

/// Random assignment repaired to feasibility by removing uniformly random
/// selected customers until the cost fits the budget.  Returns the solution
/// and its (already evaluated) cost.
inline std::pair<Solution, std::int64_t> random_feasible_counted(
    const Instance& inst, const Budget& budget, Rng& rng, CostEvaluator& eval) {
  Solution s = random_assignment(inst.customer_count(), rng);
  std::int64_t c = eval.cost(s);
  while (c > budget.bound) {
    const std::vector<CustomerId> sel = s.selected_ids();
    // cost > bound >= 0 implies at least one customer is selected
    s.set(sel[rng.below(sel.size())], false);
    c = eval.cost(s);
  }
  return {std::move(s), c};
}

struct Candidate {
  Solution best;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
};

/// Multi-restart wrapper.  Restart seeds are all drawn from `rng` up front,
/// so the aggregate (max profit, ties to the lowest restart index) does not
/// depend on the order restarts are executed in.
template <class RunFn>
SearchResult with_restarts(const Instance& inst, std::int32_t restarts,
                           Rng& rng, RunFn run) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(restarts));
  for (auto& s : seeds) s = rng.fork_seed();

  SearchResult out;
  bool first = true;
  for (std::int32_t r = 0; r < restarts; ++r) {
    Rng sub(seeds[static_cast<std::size_t>(r)]);
    CostEvaluator eval(inst);
    Candidate cand = run(sub, eval);
    out.evaluations += eval.evaluations();
    if (first || cand.profit > out.profit) {
      out.best = std::move(cand.best);
      out.profit = cand.profit;
      out.cost = cand.cost;
      first = false;
    }
  }
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

}  // namespace search_detail

/// Random total assignment repaired to feasibility by random removals.
/// The all-zero solution is the guaranteed fallback.
inline Solution random_feasible(const Instance& inst, const Budget& budget,
                                Rng& rng) {
  CostEvaluator eval(inst);
  return search_detail::random_feasible_counted(inst, budget, rng, eval).first;
}

/// Best of `iterations` independent random_feasible draws per restart.
/// Keeps the first draw attaining the maximum, so for a fixed seed the
/// reported profit is non-decreasing in `iterations`.
inline SearchResult randomized_search(const Instance& inst, const Budget& budget,
                                      const SearchParams& params, Rng& rng) {
  params.validate();
  return search_detail::with_restarts(
      inst, params.restarts, rng,
      [&](Rng& r, CostEvaluator& eval) {
        search_detail::Candidate best;
        bool first = true;
        for (std::int64_t it = 0; it < params.iterations; ++it) {
          auto [s, c] = search_detail::random_feasible_counted(inst, budget, r, eval);
          const std::int64_t p = solution_profit(inst, s);
          if (first || p > best.profit) {
            best = {std::move(s), p, c};
            first = false;
          }
        }
        return best;
      });
}

inline SearchResult randomized_search(const Instance& inst, const Budget& budget,
                                      const SearchParams& params) {
  Rng rng(params.seed);
  return randomized_search(inst, budget, params, rng);
}

/// Steepest-ascent hill climbing over the 1-bit-flip neighborhood, restricted
/// to feasible neighbors, from a random_feasible start.  Profits are positive,
/// so deselecting never improves and only additions are scanned; ties go to
/// the lowest customer id.  `iterations` caps the number of accepted moves.
inline SearchResult hill_climb(const Instance& inst, const Budget& budget,
                               const SearchParams& params, Rng& rng) {
  params.validate();
  const std::int32_t n = inst.customer_count();
  return search_detail::with_restarts(
      inst, params.restarts, rng,
      [&](Rng& r, CostEvaluator& eval) {
        auto [x, xc] = search_detail::random_feasible_counted(inst, budget, r, eval);
        std::int64_t xp = solution_profit(inst, x);
        for (std::int64_t moves = 0; moves < params.iterations; ++moves) {
          CustomerId pick = 0;
          std::int64_t gain = 0, pick_cost = 0;
          for (CustomerId c = 1; c <= n; ++c) {
            if (x.selected(c) || inst.profit(c) <= gain) continue;
            x.set(c, true);
            const std::int64_t nc = eval.cost(x);
            x.set(c, false);
            if (nc <= budget.bound) {
              pick = c;
              gain = inst.profit(c);
              pick_cost = nc;
            }
          }
          if (pick == 0) break;  // local optimum
          x.set(pick, true);
          xp += gain;
          xc = pick_cost;
        }
        return search_detail::Candidate{std::move(x), xp, xc};
      });
}

inline SearchResult hill_climb(const Instance& inst, const Budget& budget,
                               const SearchParams& params) {
  Rng rng(params.seed);
  return hill_climb(inst, budget, params, rng);
}

/// One greedy-choice pass of `iterations` steps from a given start.
///
/// Each iteration evaluates the incumbent's cost exactly once.  If the
/// incumbent is feasible it is offered to the best-so-far and the non-selected
/// customer with the highest profit (ties to the lowest id) is added -- a
/// no-op when everyone is already selected; otherwise a uniformly random
/// selected customer is dropped.  A run of g iterations therefore performs
/// exactly g cost evaluations.
inline SearchResult gcs_single(const Instance& inst, const Budget& budget,
                               std::int64_t iterations, Solution start,
                               Rng& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int32_t n = inst.customer_count();
  CostEvaluator eval(inst);

  Solution x = std::move(start);
  std::int64_t xp = solution_profit(inst, x);

  std::optional<Solution> best;
  std::int64_t best_profit = 0, best_cost = 0;

  for (std::int64_t it = 0; it < iterations; ++it) {
    const std::int64_t c = eval.cost(x);
    if (c <= budget.bound) {
      if (!best || xp > best_profit) {
        best = x;
        best_profit = xp;
        best_cost = c;
      }
      CustomerId pick = 0;
      std::int64_t w = 0;
      for (CustomerId i = 1; i <= n; ++i) {
        if (!x.selected(i) && inst.profit(i) > w) {
          pick = i;
          w = inst.profit(i);
        }
      }
      if (pick != 0) {
        x.set(pick, true);
        xp += w;
      }
    } else {
      const std::vector<CustomerId> sel = x.selected_ids();
      const CustomerId drop = sel[rng.below(sel.size())];
      x.set(drop, false);
      xp -= inst.profit(drop);
    }
  }

  SearchResult out;
  if (best) {
    out.best = std::move(*best);
    out.profit = best_profit;
    out.cost = best_cost;
  } else {
    // No feasible state was seen within the budget of iterations.
    out.best = Solution::all_zero(n);
  }
  out.evaluations = eval.evaluations();
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

/// Greedy-choice search from uniformly random starts, best over restarts.
inline SearchResult gcs(const Instance& inst, const Budget& budget,
                        const SearchParams& params, Rng& rng) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(params.restarts));
  for (auto& s : seeds) s = rng.fork_seed();

  SearchResult out;
  bool first = true;
  for (std::int32_t r = 0; r < params.restarts; ++r) {
    Rng sub(seeds[static_cast<std::size_t>(r)]);
    Solution start = random_assignment(inst.customer_count(), sub);
    SearchResult one = gcs_single(inst, budget, params.iterations, std::move(start), sub);
    out.evaluations += one.evaluations;
    if (first || one.profit > out.profit) {
      out.best = std::move(one.best);
      out.profit = one.profit;
      out.cost = one.cost;
      first = false;
    }
  }
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

inline SearchResult gcs(const Instance& inst, const Budget& budget,
                        const SearchParams& params) {
  Rng rng(params.seed);
  return gcs(inst, budget, params, rng);
}

/// Simulated annealing over 1-bit flips with the Lundy-Mees schedule
/// T <- T / (1 + beta*T), applied once per proposal whether accepted or not.
/// Feasible non-worsening proposals are always accepted, feasible worsening
/// ones with probability exp(dE / T), infeasible ones never.  Each restart
/// begins from a fresh random_feasible start at the initial temperature.
inline SearchResult lmsa(const Instance& inst, const Budget& budget,
                         const SearchParams& params, Rng& rng) {
  params.validate();
  const std::int32_t n = inst.customer_count();
  return search_detail::with_restarts(
      inst, params.restarts, rng,
      [&](Rng& r, CostEvaluator& eval) {
        auto [x, xc] = search_detail::random_feasible_counted(inst, budget, r, eval);
        std::int64_t xp = solution_profit(inst, x);
        search_detail::Candidate best{x, xp, xc};
        double temp = params.lmsa_temperature;
        if (n > 0) {
          for (std::int64_t it = 0; it < params.iterations; ++it) {
            const auto j = static_cast<CustomerId>(
                1 + r.below(static_cast<std::uint64_t>(n)));
            x.flip(j);
            const std::int64_t nc = eval.cost(x);
            const std::int64_t np =
                xp + (x.selected(j) ? inst.profit(j) : -inst.profit(j));
            bool accept = false;
            if (nc <= budget.bound) {
              const std::int64_t delta = np - xp;
              accept = delta >= 0 ||
                       r.real01() < std::exp(static_cast<double>(delta) / temp);
            }
            if (accept) {
              xp = np;
              xc = nc;
              if (xp > best.profit) best = {x, xp, xc};
            } else {
              x.flip(j);  // put the bit back
            }
            temp = temp / (1.0 + params.lmsa_beta * temp);
          }
        }
        return best;
      });
}

inline SearchResult lmsa(const Instance& inst, const Budget& budget,
                         const SearchParams& params) {
  Rng rng(params.seed);
  return lmsa(inst, budget, params, rng);
}

inline SearchResult run_algorithm(Algorithm algo, const Instance& inst,
                                  const Budget& budget,
                                  const SearchParams& params, Rng& rng) {
  switch (algo) {
    case Algorithm::RandomSearch: return randomized_search(inst, budget, params, rng);
    case Algorithm::HillClimb: return hill_climb(inst, budget, params, rng);
    case Algorithm::Gcs: return gcs(inst, budget, params, rng);
    case Algorithm::Lmsa: return lmsa(inst, budget, params, rng);
  }
  throw InputError("unknown algorithm");
}

}  // namespace nrp
