#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "nrp/experiment.hpp"
#include "nrp/io.hpp"
#include "nrp/landscape.hpp"

using namespace nrp;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("landscape rows are normalized against the exact optimum",
          "[harness]") {
  LandscapeParams params;
  params.rounds = 25;
  params.search.iterations = 100;
  params.seed = 9;

  const LandscapeResult res =
      landscape_study(fixtures::comm3(), fixtures::comm3_budget(), params);
  CHECK(res.exact_reference);
  CHECK(res.reference == Solution::of(3, {2, 3}));
  CHECK(res.reference_profit == 45);
  REQUIRE(res.rows.size() == 25);

  bool hit_reference = false;
  for (const LandscapeRow& row : res.rows) {
    CHECK(row.distance >= 0.0);
    CHECK(row.distance <= 1.0);
    CHECK(row.profit >= 0.0);
    CHECK(row.profit <= 1.0);
    hit_reference = hit_reference || (row.distance == 0.0 && row.profit == 1.0);
  }
  // Hill climbing lands in the optimum's basin often enough that 25 rounds
  // contain at least one exact hit.
  CHECK(hit_reference);

  const LandscapeResult again =
      landscape_study(fixtures::comm3(), fixtures::comm3_budget(), params);
  REQUIRE(again.rows.size() == res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(again.rows[i].distance == res.rows[i].distance);
    CHECK(again.rows[i].profit == res.rows[i].profit);
  }
}

TEST_CASE("landscape csv carries the reference header", "[harness]") {
  LandscapeParams params;
  params.rounds = 4;
  params.search.iterations = 50;
  params.seed = 2;
  const LandscapeResult res =
      landscape_study(fixtures::comm3(), fixtures::comm3_budget(), params);
  const std::string csv = landscape_csv(res);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# reference: exact");
  std::getline(in, line);
  CHECK(line == "# reference_profit: 45");
  std::getline(in, line);
  CHECK(line == "normalized_distance,normalized_profit");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double d = std::stod(line.substr(0, comma));
    const double p = std::stod(line.substr(comma + 1));
    CHECK(d >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(rows == 4);
}

TEST_CASE("landscape falls back to a best-known reference above the cap",
          "[harness]") {
  LandscapeParams params;
  params.rounds = 3;
  params.search.iterations = 50;
  params.seed = 4;
  params.enumeration_cap = 2;  // comm3 has 3 customers: force the fallback

  const LandscapeResult res =
      landscape_study(fixtures::comm3(), fixtures::comm3_budget(), params);
  CHECK_FALSE(res.exact_reference);
  CHECK(res.reference_profit == 45);  // the long reference run still finds it
  CHECK_THAT(landscape_csv(res),
             Catch::Matchers::StartsWith("# reference: best-known"));
}

TEST_CASE("experiment seeds are stable and distinct", "[harness]") {
  CHECK(experiment_seed(5, 0, 1, 2, 3) == experiment_seed(5, 0, 1, 2, 3));
  CHECK(experiment_seed(5, 0, 1, 2, 3) != experiment_seed(5, 0, 1, 2, 4));
  CHECK(experiment_seed(5, 0, 1, 2, 3) != experiment_seed(5, 1, 0, 2, 3));
  CHECK(experiment_seed(5, 0, 1, 2, 3) != experiment_seed(6, 0, 1, 2, 3));
}

TEST_CASE("manifest parsing and validation", "[harness]") {
  const nlohmann::json good = {
      {"seed", 11},
      {"repetitions", 2},
      {"ratios", {"0.3", 0.5}},
      {"algorithms", {"gcs", "abma", "random"}},
      {"instances", {{{"preset", "nrp-1"}, {"seed", 7}}}},
      {"params", {{"iterations", 64}, {"restarts", 3}, {"locals", 4},
                  {"operator", "lmsa"}, {"operator_restarts", 2}}}};
  const Manifest m = parse_manifest(good);
  CHECK(m.seed == 11);
  CHECK(m.repetitions == 2);
  REQUIRE(m.ratios.size() == 2);
  CHECK(m.ratios[0] == Ratio(3, 10));
  CHECK(m.ratios[1] == Ratio(1, 2));
  REQUIRE(m.algorithms.size() == 3);
  CHECK(m.baseline == SolverChoice::Gcs);  // defaults to the first algorithm
  REQUIRE(m.instances.size() == 1);
  CHECK(m.instances[0].name == "nrp-1-s7");
  CHECK(m.instances[0].generator_seed == 7);
  CHECK(m.search.iterations == 64);
  CHECK(m.search.restarts == 3);
  CHECK(m.abma.restarts == 3);
  CHECK(m.abma.local_optima_per_level == 4);
  CHECK(m.abma.op == LocalOperator::Lmsa);
  CHECK(m.abma.operator_params.iterations == 64);
  CHECK(m.abma.operator_params.restarts == 2);

  nlohmann::json bad = good;
  bad.erase("seed");
  CHECK_THROWS_WITH(parse_manifest(bad),
                    Catch::Matchers::ContainsSubstring("must declare a seed"));

  bad = good;
  bad["baseline"] = "lmsa";  // not among the listed algorithms
  CHECK_THROWS_AS(parse_manifest(bad), InputError);

  bad = good;
  bad["repetitions"] = 0;
  CHECK_THROWS_AS(parse_manifest(bad), InputError);

  bad = good;
  bad["algorithms"] = {"quantum"};
  CHECK_THROWS_AS(parse_manifest(bad), InputError);

  bad = good;
  bad["instances"] = nlohmann::json::array();
  CHECK_THROWS_AS(parse_manifest(bad), InputError);

  // File-backed entries take their name from the file stem.
  const nlohmann::json by_path = {{"seed", 1},
                                  {"ratios", {"0.5"}},
                                  {"algorithms", {"random"}},
                                  {"instances", {{{"path", "/tmp/foo/bar.nrp"}}}}};
  CHECK(parse_manifest(by_path).instances[0].name == "bar");
}

TEST_CASE("experiment cells reproduce individual solver runs", "[harness]") {
  const FileGuard guard{temp_path("nrp-harness-comm3.nrp")};
  write_instance_file(guard.path, fixtures::comm3());

  nlohmann::json j = {{"seed", 5},
                      {"repetitions", 1},
                      {"ratios", {"0.7"}},
                      {"algorithms", {"gcs", "random"}},
                      {"instances", {{{"path", guard.path}}}},
                      {"params", {{"iterations", 200}}}};
  const Manifest manifest = parse_manifest(j);
  const ExperimentResult result = run_experiment(manifest);
  REQUIRE(result.cells.size() == 2);

  const ExperimentCell& gcs_cell = result.cells[0];
  CHECK(gcs_cell.instance == "nrp-harness-comm3");
  CHECK(gcs_cell.bound == 36);
  CHECK(gcs_cell.algo == SolverChoice::Gcs);
  CHECK(gcs_cell.profit_pct == 0.0);  // the baseline compares to itself
  CHECK(gcs_cell.time_pct == 0.0);

  // One repetition: the mean is exactly one run with the derived seed.
  const SolveOutcome direct =
      run_solver(SolverChoice::Gcs, fixtures::comm3(), Budget(36),
                 manifest.search, manifest.abma, experiment_seed(5, 0, 0, 0, 0));
  CHECK(gcs_cell.mean_profit == static_cast<double>(direct.profit));

  const ExperimentCell& random_cell = result.cells[1];
  const SolveOutcome direct_random =
      run_solver(SolverChoice::Random, fixtures::comm3(), Budget(36),
                 manifest.search, manifest.abma, experiment_seed(5, 0, 0, 1, 0));
  CHECK(random_cell.mean_profit == static_cast<double>(direct_random.profit));
  if (gcs_cell.mean_profit > 0) {
    CHECK(random_cell.profit_pct ==
          Catch::Approx((random_cell.mean_profit - gcs_cell.mean_profit) /
                        gcs_cell.mean_profit * 100.0));
  }
}

TEST_CASE("experiment csv format", "[harness]") {
  const FileGuard guard{temp_path("nrp-harness-comm3-csv.nrp")};
  write_instance_file(guard.path, fixtures::comm3());

  const nlohmann::json j = {{"seed", 3},
                            {"ratios", {"0.5", "0.7"}},
                            {"algorithms", {"random", "hillclimb"}},
                            {"instances", {{{"path", guard.path}}}},
                            {"params", {{"iterations", 50}}}};
  const ExperimentResult result = run_experiment(parse_manifest(j));
  const std::string csv = experiment_csv(result);

  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "instance,ratio,bound,algo,profit,time_s,profit_ratio_pct,"
        "time_ratio_pct");
  CHECK(count_lines(csv) == 1 + 2 * 2);  // header + ratios x algorithms

  // Rows preserve manifest order: ratios outer, algorithms inner.
  std::string row;
  std::getline(in, row);
  CHECK_THAT(row, Catch::Matchers::StartsWith("nrp-harness-comm3-csv,0.5,26,random,"));
  std::getline(in, row);
  CHECK_THAT(row, Catch::Matchers::StartsWith("nrp-harness-comm3-csv,0.5,26,hillclimb,"));
  std::getline(in, row);
  CHECK_THAT(row, Catch::Matchers::StartsWith("nrp-harness-comm3-csv,0.7,36,random,"));

  const nlohmann::json out = experiment_json(result);
  REQUIRE(out.contains("cells"));
  CHECK(out["cells"].size() == 4);
  CHECK(out["cells"][0]["instance"] == "nrp-harness-comm3-csv");
  CHECK(out["cells"][0]["ratio"] == "0.5");
}

TEST_CASE("experiment supports generated preset entries", "[harness]") {
  const nlohmann::json j = {{"seed", 2},
                            {"ratios", {"0.5"}},
                            {"algorithms", {"random"}},
                            {"instances", {{{"preset", "nrp-1"}, {"seed", 7}}}},
                            {"params", {{"iterations", 10}}}};
  const ExperimentResult result = run_experiment(parse_manifest(j));
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0].instance == "nrp-1-s7");

  GeneratorConfig cfg = preset("nrp-1");
  cfg.seed = 7;
  const Instance inst = generate(cfg);
  CHECK(result.cells[0].bound ==
        budget_from_ratio(inst, Ratio(1, 2)).bound);
  CHECK(result.cells[0].mean_profit > 0.0);
}
