#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nrp/io.hpp"
#include "nrp/model.hpp"
#include "nrp/rng.hpp"

namespace nrp {

/// One layer of the requirement hierarchy.  Requirements of a level draw
/// their parents from the next level in the list; the last level has none.
struct LevelRule {
  std::int32_t count = 0;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 1;
  std::int32_t max_parents = 0;  ///< in the next level, drawn per requirement
};

struct GeneratorConfig {
  std::vector<LevelRule> levels;
  std::int32_t customer_count = 0;
  std::int32_t requests_min = 1;
  std::int32_t requests_max = 1;
  std::int64_t profit_min = 1;
  std::int64_t profit_max = 1;
  std::uint64_t seed = 1;

  std::int32_t requirement_count() const {
    std::int32_t m = 0;
    for (const LevelRule& l : levels) m += l.count;
    return m;
  }

  void validate() const {
    if (levels.empty()) throw ConfigError("at least one level is required");
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const LevelRule& l = levels[k];
      if (l.count < 1) throw ConfigError("level count must be >= 1");
      if (l.cost_min < 0 || l.cost_min > l.cost_max)
        throw ConfigError("level cost range is empty or negative");
      if (l.max_parents < 0) throw ConfigError("max parents must be >= 0");
      if (k + 1 == levels.size() && l.max_parents != 0)
        throw ConfigError("the last level cannot have parents");
    }
    if (customer_count < 0) throw ConfigError("customer count must be >= 0");
    if (requests_min < 0 || requests_min > requests_max)
      throw ConfigError("request range is empty or negative");
    if (requests_max > requirement_count())
      throw ConfigError("customers cannot request more requirements than exist");
    if (profit_min < 1 || profit_min > profit_max)
      throw ConfigError("profit range must be positive and non-empty");
  }
};

/// Builds an instance from a config.  All draws come from one generator
/// seeded with config.seed, in a fixed documented order: first every
/// requirement's cost (level by level, ascending id), then every
/// requirement's parent count and parents (same order; the last level draws
/// nothing), then per customer its request count, requested set and profit.
/// Parents and request sets are sampled uniformly without replacement.
inline Instance generate(const GeneratorConfig& cfg) {
  cfg.validate();
  const std::int32_t m = cfg.requirement_count();
  Rng rng(cfg.seed);

  // Id layout: level k occupies a contiguous block, level 0 starting at 1.
  std::vector<std::int32_t> level_start;
  {
    std::int32_t at = 1;
    for (const LevelRule& l : cfg.levels) {
      level_start.push_back(at);
      at += l.count;
    }
  }

  std::vector<Requirement> reqs;
  reqs.reserve(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const LevelRule& l = cfg.levels[k];
    for (std::int32_t i = 0; i < l.count; ++i) {
      reqs.push_back({static_cast<RequirementId>(reqs.size() + 1),
                      rng.between(l.cost_min, l.cost_max)});
    }
  }

  DependencyGraph graph;
  for (std::size_t k = 0; k + 1 < cfg.levels.size(); ++k) {
    const LevelRule& l = cfg.levels[k];
    const std::int32_t next_start = level_start[k + 1];
    const std::int32_t next_count = cfg.levels[k + 1].count;
    for (std::int32_t i = 0; i < l.count; ++i) {
      const RequirementId child = level_start[k] + i;
      auto want = static_cast<std::int32_t>(rng.between(0, l.max_parents));
      if (want > next_count) want = next_count;
      // partial Fisher-Yates over the next level's ids
      std::vector<RequirementId> pool(static_cast<std::size_t>(next_count));
      std::iota(pool.begin(), pool.end(), next_start);
      for (std::int32_t j = 0; j < want; ++j) {
        const auto pick =
            j + static_cast<std::int32_t>(rng.below(
                    static_cast<std::uint64_t>(next_count - j)));
        std::swap(pool[static_cast<std::size_t>(j)],
                  pool[static_cast<std::size_t>(pick)]);
        graph.arcs.push_back({pool[static_cast<std::size_t>(j)], child});
      }
    }
  }

  std::vector<Customer> customers;
  customers.reserve(static_cast<std::size_t>(cfg.customer_count));
  std::vector<RequirementId> pool(static_cast<std::size_t>(m));
  for (std::int32_t c = 1; c <= cfg.customer_count; ++c) {
    const auto want =
        static_cast<std::int32_t>(rng.between(cfg.requests_min, cfg.requests_max));
    std::iota(pool.begin(), pool.end(), 1);
    Customer cust{c, 0, {}};
    cust.requested.reserve(static_cast<std::size_t>(want));
    for (std::int32_t j = 0; j < want; ++j) {
      const auto pick = j + static_cast<std::int32_t>(
                                rng.below(static_cast<std::uint64_t>(m - j)));
      std::swap(pool[static_cast<std::size_t>(j)],
                pool[static_cast<std::size_t>(pick)]);
      cust.requested.push_back(pool[static_cast<std::size_t>(j)]);
    }
    cust.profit = rng.between(cfg.profit_min, cfg.profit_max);
    customers.push_back(std::move(cust));
  }

  return Instance(std::move(reqs), std::move(graph), std::move(customers));
}

/// Budget bound = ratio * (sum of all requirement costs), rounded half up,
/// computed in exact integer arithmetic.
inline Budget budget_from_ratio(const Instance& inst, const Ratio& ratio) {
  using Wide = __int128;
  const Wide a = static_cast<Wide>(ratio.num) * inst.total_cost();
  const Wide bound = (2 * a + ratio.den) / (2 * static_cast<Wide>(ratio.den));
  return Budget(static_cast<std::int64_t>(bound), ratio);
}

/// The five bundled instance families.
inline GeneratorConfig preset(std::string_view name) {
  GeneratorConfig cfg;
  cfg.requests_min = 1;
  cfg.requests_max = 5;
  cfg.profit_min = 1;
  cfg.profit_max = 50;
  if (name == "nrp-1") {
    cfg.levels = {{20, 1, 5, 8}, {40, 2, 8, 2}, {80, 5, 10, 0}};
    cfg.customer_count = 100;
  } else if (name == "nrp-2") {
    cfg.levels = {{20, 1, 5, 8}, {40, 2, 7, 6}, {80, 3, 9, 4},
                  {160, 4, 10, 2}, {320, 5, 15, 0}};
    cfg.customer_count = 500;
  } else if (name == "nrp-3") {
    cfg.levels = {{250, 1, 5, 8}, {500, 2, 8, 2}, {750, 5, 10, 0}};
    cfg.customer_count = 500;
  } else if (name == "nrp-4") {
    cfg.levels = {{250, 1, 5, 8}, {500, 2, 7, 6}, {750, 3, 9, 4},
                  {1000, 4, 10, 2}, {750, 5, 15, 0}};
    cfg.customer_count = 750;
  } else if (name == "nrp-5") {
    cfg.levels = {{500, 1, 3, 4}, {500, 2, 2, 4}, {500, 3, 5, 0}};
    cfg.customer_count = 1000;
    cfg.requests_max = 1;  // every customer asks for exactly one requirement
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"nrp-1", "nrp-2", "nrp-3",
                                              "nrp-4", "nrp-5"};
  return names;
}

/// Key-value config format:
///
///   levels <L>
///   level <count> <cost-min> <cost-max> <max-parents>   (L lines)
///   customers <n>
///   requests <min> <max>
///   profits <min> <max>
///   seed <s>                                            (optional)
inline GeneratorConfig read_generator_config(std::istream& in) {
  using io_detail::Line;
  const std::vector<Line> lines = io_detail::tokenize(in);
  std::size_t at = 0;
  auto need = [&](const char* what) -> const Line& {
    if (at >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number + 1,
                       std::string("unexpected end of file, expected ") + what);
    return lines[at];
  };

  GeneratorConfig cfg;

  const Line& lv = need("'levels <L>'");
  io_detail::expect_tokens(lv, 2);
  if (lv.tokens[0] != "levels") throw ParseError(lv.number, "expected 'levels <L>'");
  const std::int64_t level_count = io_detail::parse_int(lv, 1, "level count");
  if (level_count < 1) throw ParseError(lv.number, "level count must be >= 1");
  ++at;

  for (std::int64_t k = 0; k < level_count; ++k) {
    const Line& line = need("a level line");
    io_detail::expect_tokens(line, 5);
    if (line.tokens[0] != "level")
      throw ParseError(line.number, "expected 'level <count> <cost-min> <cost-max> <max-parents>'");
    LevelRule rule;
    rule.count = static_cast<std::int32_t>(io_detail::parse_int(line, 1, "level count"));
    rule.cost_min = io_detail::parse_int(line, 2, "cost minimum");
    rule.cost_max = io_detail::parse_int(line, 3, "cost maximum");
    rule.max_parents = static_cast<std::int32_t>(io_detail::parse_int(line, 4, "max parents"));
    cfg.levels.push_back(rule);
    ++at;
  }

  const Line& cu = need("'customers <n>'");
  io_detail::expect_tokens(cu, 2);
  if (cu.tokens[0] != "customers") throw ParseError(cu.number, "expected 'customers <n>'");
  cfg.customer_count = static_cast<std::int32_t>(io_detail::parse_int(cu, 1, "customer count"));
  ++at;

  const Line& rq = need("'requests <min> <max>'");
  io_detail::expect_tokens(rq, 3);
  if (rq.tokens[0] != "requests") throw ParseError(rq.number, "expected 'requests <min> <max>'");
  cfg.requests_min = static_cast<std::int32_t>(io_detail::parse_int(rq, 1, "request minimum"));
  cfg.requests_max = static_cast<std::int32_t>(io_detail::parse_int(rq, 2, "request maximum"));
  ++at;

  const Line& pr = need("'profits <min> <max>'");
  io_detail::expect_tokens(pr, 3);
  if (pr.tokens[0] != "profits") throw ParseError(pr.number, "expected 'profits <min> <max>'");
  cfg.profit_min = io_detail::parse_int(pr, 1, "profit minimum");
  cfg.profit_max = io_detail::parse_int(pr, 2, "profit maximum");
  ++at;

  if (at < lines.size() && lines[at].tokens[0] == "seed") {
    const Line& line = lines[at];
    io_detail::expect_tokens(line, 2);
    cfg.seed = static_cast<std::uint64_t>(io_detail::parse_int(line, 1, "seed"));
    ++at;
  }

  if (at < lines.size())
    throw ParseError(lines[at].number,
                     "unexpected content '" + lines[at].tokens[0] + "'");

  cfg.validate();  // may throw ConfigError
  return cfg;
}

inline GeneratorConfig read_generator_config(const std::string& text) {
  std::istringstream in(text);
  return read_generator_config(in);
}

inline GeneratorConfig read_generator_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  return read_generator_config(in);
}

inline std::string write_generator_config(const GeneratorConfig& cfg,
                                          bool with_seed = false) {
  std::ostringstream out;
  out << "levels " << cfg.levels.size() << "\n";
  for (const LevelRule& l : cfg.levels)
    out << "level " << l.count << " " << l.cost_min << " " << l.cost_max << " "
        << l.max_parents << "\n";
  out << "customers " << cfg.customer_count << "\n";
  out << "requests " << cfg.requests_min << " " << cfg.requests_max << "\n";
  out << "profits " << cfg.profit_min << " " << cfg.profit_max << "\n";
  if (with_seed) out << "seed " << cfg.seed << "\n";
  return out.str();
}

}  // namespace nrp
