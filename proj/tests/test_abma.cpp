#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <vector>

#include "fixtures.hpp"
#include "nrp/abma.hpp"
#include "nrp/backbone.hpp"
#include "nrp/instgen.hpp"

using namespace nrp;

namespace {

// Operator stub that replays a fixed list of solutions, verifying that each
// call happens on a sub-instance of the expected size.
struct ScriptedOperator {
  std::vector<Solution> script;
  std::size_t at = 0;

  OperatorFn fn() {
    return [this](const Instance& inst, const Budget&, const SearchParams&,
                  Rng&) {
      REQUIRE(at < script.size());
      SearchResult r;
      r.best = script[at++];
      REQUIRE(r.best.customer_count() == inst.customer_count());
      r.profit = solution_profit(inst, r.best);
      r.cost = solution_cost(inst, r.best);
      r.evaluations = 1;
      return r;
    };
  }
};

}  // namespace

TEST_CASE("scripted multilevel run reduces twice and refines to 105", "[abma]") {
  const Instance inst = fixtures::multilevel5();
  ScriptedOperator scripted{fixtures::multilevel5_script()};

  AbmaParams params;
  params.restarts = 1;
  params.local_optima_per_level = 3;
  params.scale_stop_ratio = 0.5;

  std::vector<std::pair<std::int32_t, LevelTrace>> streamed;
  Rng rng(1);
  const AbmaResult res = abma_solve_with(
      inst, fixtures::multilevel5_budget(), params, scripted.fn(), rng,
      [&](std::int32_t restart, const LevelTrace& t) {
        streamed.emplace_back(restart, t);
      });

  CHECK(scripted.at == scripted.script.size());  // 3 + 3 + 1 calls
  CHECK(res.result.best == fixtures::bits({1, 1, 0, 0, 1}));
  CHECK(res.result.profit == 105);
  CHECK(res.result.cost == 7);

  REQUIRE(res.traces.size() == 2);
  CHECK(res.traces[0].level == 1);
  CHECK(res.traces[0].customers_before == 5);
  CHECK(res.traces[0].customers_after == 3);
  CHECK(res.traces[0].backbone_size == 2);
  CHECK(res.traces[0].budget_after == 4);
  CHECK(res.traces[1].level == 2);
  CHECK(res.traces[1].customers_before == 3);
  CHECK(res.traces[1].customers_after == 2);
  CHECK(res.traces[1].backbone_size == 1);
  CHECK(res.traces[1].budget_after == 1);

  REQUIRE(streamed.size() == 2);
  CHECK(streamed[0].first == 0);
  CHECK(streamed[0].second.level == 1);
  CHECK(streamed[1].second.level == 2);
}

TEST_CASE("a level-0 local can beat the refined solution", "[abma]") {
  // Two disjoint customers; the scripted locals disagree everywhere, so the
  // backbone is empty and no reduction happens.  The terminal run hands back
  // the poor solution, but the level-0 candidate with profit 10 must win.
  const Instance inst({{1, 5}, {2, 5}}, {}, {{1, 10, {1}}, {2, 1, {2}}});
  ScriptedOperator scripted{
      {fixtures::bits({1, 0}), fixtures::bits({0, 1}), fixtures::bits({0, 1})}};

  AbmaParams params;
  params.restarts = 1;
  params.local_optima_per_level = 2;
  params.scale_stop_ratio = 0.5;

  Rng rng(1);
  const AbmaResult res =
      abma_solve_with(inst, Budget(5), params, scripted.fn(), rng);
  CHECK(scripted.at == 3);
  CHECK(res.result.profit == 10);
  CHECK(res.result.best == fixtures::bits({1, 0}));
  CHECK(res.traces.empty());
}

TEST_CASE("an unaffordable backbone is trimmed, cheapest profits first", "[abma]") {
  // Both scripted locals select customers 1 and 2 of comm3, whose joint
  // closure costs 51 > 36.  The fallback drops the lower-profit customer 2,
  // keeps (1,1) and (3,0), and the run continues to a feasible end.
  const Instance inst = fixtures::comm3();
  ScriptedOperator scripted{{fixtures::bits({1, 1, 0}), fixtures::bits({1, 1, 0}),
                             fixtures::bits({0}), fixtures::bits({0}),
                             Solution(0)}};

  AbmaParams params;
  params.restarts = 1;
  params.local_optima_per_level = 2;
  params.scale_stop_ratio = 0.3;

  Rng rng(1);
  const AbmaResult res =
      abma_solve_with(inst, fixtures::comm3_budget(), params, scripted.fn(), rng);

  CHECK(scripted.at == 5);
  CHECK(res.result.best == fixtures::bits({1, 0, 0}));
  CHECK(res.result.profit == 30);
  CHECK(res.result.cost == 26);

  REQUIRE(res.traces.size() == 2);
  CHECK(res.traces[0].customers_before == 3);
  CHECK(res.traces[0].customers_after == 1);
  CHECK(res.traces[0].backbone_size == 2);  // (1,1) and (3,0) after the trim
  CHECK(res.traces[0].budget_after == 10);
  CHECK(res.traces[1].customers_before == 1);
  CHECK(res.traces[1].customers_after == 0);
  CHECK(res.traces[1].budget_after == 10);
}

TEST_CASE("abma finds the comm3 optimum from any seed", "[abma]") {
  const Instance inst = fixtures::comm3();
  AbmaParams params;
  params.restarts = 10;
  params.local_optima_per_level = 5;
  params.operator_params.iterations = 200;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const AbmaResult res =
        abma_solve(inst, fixtures::comm3_budget(), params, rng);
    CAPTURE(seed);
    CHECK(res.result.profit == 45);
    CHECK(res.result.best == Solution::of(3, {2, 3}));
  }
}

TEST_CASE("abma matches the enumerated optimum of multilevel5", "[abma]") {
  const Instance inst = fixtures::multilevel5();
  const OptimaSet opt = enumerate_optima(inst, fixtures::multilevel5_budget());
  CHECK(opt.profit == 125);  // {1,2,3,5}: closures overlap into cost 7

  AbmaParams params;
  params.restarts = 8;
  params.local_optima_per_level = 3;
  params.operator_params.iterations = 400;
  Rng rng(3);
  const AbmaResult res =
      abma_solve(inst, fixtures::multilevel5_budget(), params, rng);
  CHECK(res.result.profit == 125);
}

TEST_CASE("abma is deterministic and feasible with every operator", "[abma]") {
  const Instance inst = generate(fixtures::small_config(20, 11));
  const Budget budget = budget_from_ratio(inst, Ratio::parse("0.5"));

  for (LocalOperator op :
       {LocalOperator::Gcs, LocalOperator::Lmsa, LocalOperator::HillClimb}) {
    AbmaParams params;
    params.op = op;
    params.restarts = 3;
    params.local_optima_per_level = 3;
    params.operator_params.iterations = 150;

    Rng r1(42), r2(42);
    const AbmaResult a = abma_solve(inst, budget, params, r1);
    const AbmaResult b = abma_solve(inst, budget, params, r2);
    CHECK(a.result.best == b.result.best);
    CHECK(a.result.profit == b.result.profit);
    CHECK(a.result.evaluations == b.result.evaluations);
    CHECK(is_feasible(inst, a.result.best, budget));
    CHECK(a.result.profit == solution_profit(inst, a.result.best));
  }
}

TEST_CASE("level traces shrink monotonically and respect the stop ratio",
          "[abma]") {
  const Instance inst = generate(fixtures::small_config(20, 5));
  const Budget budget = budget_from_ratio(inst, Ratio::parse("0.5"));

  AbmaParams params;
  params.restarts = 2;
  params.local_optima_per_level = 2;
  params.scale_stop_ratio = 0.4;  // keep reducing while >= 8 customers remain
  params.operator_params.iterations = 200;

  Rng rng(9);
  const AbmaResult res = abma_solve(inst, budget, params, rng);
  std::int64_t last_budget = budget.bound;
  std::int32_t level = 0;
  for (const LevelTrace& t : res.traces) {
    CHECK(t.level == ++level);
    CHECK(t.customers_before >= 8);
    CHECK(t.customers_after < t.customers_before);
    CHECK(t.backbone_size == t.customers_before - t.customers_after);
    CHECK(t.budget_after <= last_budget);
    last_budget = t.budget_after;
  }
}

TEST_CASE("abma parameter validation", "[abma]") {
  const Instance inst = fixtures::comm3();
  Rng rng(1);
  AbmaParams params;
  params.local_optima_per_level = 1;  // an intersection needs two solutions
  CHECK_THROWS_AS(abma_solve(inst, fixtures::comm3_budget(), params, rng),
                  InputError);
  params.local_optima_per_level = 2;
  params.scale_stop_ratio = 1.0;
  CHECK_THROWS_AS(abma_solve(inst, fixtures::comm3_budget(), params, rng),
                  InputError);

  CHECK(local_operator_from_name("gcs") == LocalOperator::Gcs);
  CHECK(local_operator_from_name("lmsa") == LocalOperator::Lmsa);
  CHECK(local_operator_from_name("hillclimb") == LocalOperator::HillClimb);
  CHECK_FALSE(local_operator_from_name("tabu").has_value());
}
