// Shared hand-checked fixtures for the test suite.
#pragma once

#include <cstdint>
#include <vector>

#include "nrp/backbone.hpp"
#include "nrp/instgen.hpp"
#include "nrp/model.hpp"

namespace fixtures {

// Three-customer example over eight requirements.  All expected numbers on
// this instance were worked out by hand from the closure/union-cost rules:
//
//   costs   6 10 16 4 1 7 6 1        arcs (parent,child):
//   closures  C1 = {1,3,4}           (1,3) (1,4) (4,5) (7,5)
//             C2 = {1,2,4,5,6,7,8}   (8,5) (6,7) (2,6)
//             C3 = {2,6,7,8}
//
// Full subset table (profit/cost): {}=0/0  {1}=30/26  {2}=25/35  {3}=20/24
// {1,2}=55/51  {1,3}=50/50  {2,3}=45/35  {1,2,3}=75/51.
// At budget 36 the unique optimum is {2,3} with profit 45.
inline nrp::Instance comm3() {
  std::vector<nrp::Requirement> reqs;
  const std::int64_t costs[] = {6, 10, 16, 4, 1, 7, 6, 1};
  for (std::int32_t i = 0; i < 8; ++i) reqs.push_back({i + 1, costs[i]});
  nrp::DependencyGraph graph;
  graph.arcs = {{1, 3}, {1, 4}, {4, 5}, {7, 5}, {8, 5}, {6, 7}, {2, 6}};
  std::vector<nrp::Customer> customers = {
      {1, 30, {3, 4}}, {2, 25, {5, 6}}, {3, 20, {7, 8}}};
  return nrp::Instance(std::move(reqs), std::move(graph), std::move(customers));
}

inline nrp::Budget comm3_budget() { return nrp::Budget(36); }

struct SubsetRow {
  std::vector<nrp::CustomerId> chosen;
  std::int64_t profit;
  std::int64_t cost;
};

// The full enumeration of comm3, frozen.
inline const std::vector<SubsetRow>& comm3_table() {
  static const std::vector<SubsetRow> rows = {
      {{}, 0, 0},        {{1}, 30, 26},      {{2}, 25, 35},
      {{3}, 20, 24},     {{1, 2}, 55, 51},   {{1, 3}, 50, 50},
      {{2, 3}, 45, 35},  {{1, 2, 3}, 75, 51},
  };
  return rows;
}

// Five-customer instance built to replay a two-reduction multilevel run with
// a scripted operator.  Unit costs, arcs (1,3) and (4,5):
//
//   c1 = {7} profit 30      c2 -> {1,2,3} profit 25   c3 = {1,7} profit 20
//   c4 = {8} profit 1       c5 -> {4,5,6} profit 50   budget 7
//
// Scripted locals (3 per level, stop ratio 0.5):
//   level 1 on 5 customers: 11001 01011 11010  -> backbone {2:1, 3:0}
//     reduce: implement {1,2,3}, budget 7-3=4, customers left 1,4,5 -> 1,2,3
//   level 2 on 3 customers: 101 011 111        -> backbone {3:1}
//     reduce: implement {4,5,6}, budget 4-3=1, customers left 1,4 -> 1,2
//   2 < 0.5*5, stop; terminal run on 2 customers: 10
//   refine: (1,0) -> (1,0,1) -> (1,1,0,0,1), profit 105, cost 7.
inline nrp::Instance multilevel5() {
  std::vector<nrp::Requirement> reqs;
  for (std::int32_t i = 1; i <= 8; ++i) reqs.push_back({i, 1});
  nrp::DependencyGraph graph;
  graph.arcs = {{1, 3}, {4, 5}};
  std::vector<nrp::Customer> customers = {{1, 30, {7}},
                                          {2, 25, {2, 3}},
                                          {3, 20, {1, 7}},
                                          {4, 1, {8}},
                                          {5, 50, {5, 6}}};
  return nrp::Instance(std::move(reqs), std::move(graph), std::move(customers));
}

inline nrp::Budget multilevel5_budget() { return nrp::Budget(7); }

inline nrp::Solution bits(std::initializer_list<int> b) {
  nrp::Solution s(static_cast<std::int32_t>(b.size()));
  nrp::CustomerId id = 1;
  for (int v : b) s.set(id++, v != 0);
  return s;
}

// The scripted local optima for multilevel5, in call order (3 + 3 + 1).
inline std::vector<nrp::Solution> multilevel5_script() {
  return {bits({1, 1, 0, 0, 1}), bits({0, 1, 0, 1, 1}), bits({1, 1, 0, 1, 0}),
          bits({1, 0, 1}),       bits({0, 1, 1}),       bits({1, 1, 1}),
          bits({1, 0})};
}

// Small random instances for property tests: n customers, <= 30 requirements.
inline nrp::GeneratorConfig small_config(std::int32_t n, std::uint64_t seed) {
  nrp::GeneratorConfig cfg;
  cfg.levels = {{10, 1, 5, 2}, {12, 1, 8, 2}, {8, 2, 6, 0}};
  cfg.customer_count = n;
  cfg.requests_min = 1;
  cfg.requests_max = 4;
  cfg.profit_min = 1;
  cfg.profit_max = 50;
  cfg.seed = seed;
  return cfg;
}

}  // namespace fixtures
