#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nrp/model.hpp"

namespace nrp {

/// Result of parsing one instance file: the instance plus the optional
/// `budget` trailer line, if the file carried one.
struct InstanceFile {
  Instance instance;
  std::optional<std::int64_t> budget;
};

namespace io_detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

/// Splits the stream into whitespace-tokenized lines, dropping blank lines
/// and lines starting with '#'.
inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ss(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    lines.push_back(Line{number, std::move(tokens)});
  }
  return lines;
}

inline std::int64_t parse_int(const Line& line, std::size_t index,
                              const char* what) {
  const std::string& tok = line.tokens.at(index);
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + tok + "'");
  return value;
}

inline void expect_tokens(const Line& line, std::size_t want) {
  if (line.tokens.size() != want)
    throw ParseError(line.number, "expected " + std::to_string(want) +
                                      " fields, got " +
                                      std::to_string(line.tokens.size()));
}

/// Locates one arc lying on a dependency cycle and reports its source line.
/// Only called once Kahn-style peeling has established that a cycle exists.
inline void report_cycle(
    std::int32_t m,
    const std::vector<std::pair<RequirementId, RequirementId>>& arcs,
    const std::map<std::pair<RequirementId, RequirementId>, int>& arc_lines) {
  std::vector<std::vector<RequirementId>> children(
      static_cast<std::size_t>(m) + 1);
  for (const auto& [p, c] : arcs) children[static_cast<std::size_t>(p)].push_back(c);

  // Iterative DFS, three colors; a back edge closes a cycle.
  std::vector<int> color(static_cast<std::size_t>(m) + 1, 0);
  for (RequirementId root = 1; root <= m; ++root) {
    if (color[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<RequirementId, std::size_t>> stack{{root, 0}};
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children[static_cast<std::size_t>(v)].size()) {
        const RequirementId c = children[static_cast<std::size_t>(v)][next++];
        if (color[static_cast<std::size_t>(c)] == 1) {
          const auto it = arc_lines.find({v, c});
          const int line = it == arc_lines.end() ? 0 : it->second;
          throw ParseError(line, "dependency cycle through arc " +
                                     std::to_string(v) + " -> " +
                                     std::to_string(c));
        }
        if (color[static_cast<std::size_t>(c)] == 0) {
          color[static_cast<std::size_t>(c)] = 1;
          stack.push_back({c, 0});
        }
      } else {
        color[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
}

}  // namespace io_detail

/// Parses the line-oriented instance format:
///
///   nrp-instance 1
///   requirements <m>
///   <id> <cost>            (m lines, ids 1..m in order)
///   dependencies <e>
///   <parent-id> <child-id> (e lines)
///   customers <n>
///   <id> <profit> <k> <req-id> x k   (n lines, ids 1..n in order)
///   budget <B>             (optional)
///
/// '#' starts a comment line; blank lines are ignored.  Any deviation --
/// unknown section headers, non-dense ids, dangling references, cycles,
/// trailing junk -- raises ParseError with the offending line number.
inline InstanceFile read_instance(std::istream& in) {
  using io_detail::Line;
  const std::vector<Line> lines = io_detail::tokenize(in);
  std::size_t at = 0;

  auto need = [&](const char* what) -> const Line& {
    if (at >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number + 1,
                       std::string("unexpected end of file, expected ") + what);
    return lines[at];
  };

  {
    const Line& header = need("'nrp-instance 1'");
    io_detail::expect_tokens(header, 2);
    if (header.tokens[0] != "nrp-instance" || header.tokens[1] != "1")
      throw ParseError(header.number, "expected 'nrp-instance 1' header");
    ++at;
  }

  const Line& req_header = need("'requirements <m>'");
  io_detail::expect_tokens(req_header, 2);
  if (req_header.tokens[0] != "requirements")
    throw ParseError(req_header.number, "expected 'requirements <m>'");
  const std::int64_t m = io_detail::parse_int(req_header, 1, "requirement count");
  if (m < 0) throw ParseError(req_header.number, "requirement count must be non-negative");
  ++at;

  std::vector<Requirement> requirements;
  requirements.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 1; i <= m; ++i) {
    const Line& line = need("a requirement line");
    io_detail::expect_tokens(line, 2);
    const std::int64_t id = io_detail::parse_int(line, 0, "requirement id");
    if (id != i)
      throw ParseError(line.number, "expected requirement id " + std::to_string(i) +
                                        ", got " + std::to_string(id));
    const std::int64_t cost = io_detail::parse_int(line, 1, "requirement cost");
    if (cost < 0) throw ParseError(line.number, "requirement cost must be non-negative");
    requirements.push_back({static_cast<RequirementId>(id), cost});
    ++at;
  }

  const Line& dep_header = need("'dependencies <e>'");
  io_detail::expect_tokens(dep_header, 2);
  if (dep_header.tokens[0] != "dependencies")
    throw ParseError(dep_header.number, "expected 'dependencies <e>'");
  const std::int64_t e = io_detail::parse_int(dep_header, 1, "dependency count");
  if (e < 0) throw ParseError(dep_header.number, "dependency count must be non-negative");
  ++at;

  DependencyGraph graph;
  graph.arcs.reserve(static_cast<std::size_t>(e));
  std::map<std::pair<RequirementId, RequirementId>, int> arc_lines;
  for (std::int64_t i = 0; i < e; ++i) {
    const Line& line = need("a dependency line");
    io_detail::expect_tokens(line, 2);
    const std::int64_t p = io_detail::parse_int(line, 0, "parent requirement id");
    const std::int64_t c = io_detail::parse_int(line, 1, "child requirement id");
    if (p < 1 || p > m)
      throw ParseError(line.number, "parent requirement id " + std::to_string(p) +
                                        " out of range 1.." + std::to_string(m));
    if (c < 1 || c > m)
      throw ParseError(line.number, "child requirement id " + std::to_string(c) +
                                        " out of range 1.." + std::to_string(m));
    const auto arc = std::make_pair(static_cast<RequirementId>(p),
                                    static_cast<RequirementId>(c));
    graph.arcs.push_back(arc);
    arc_lines.emplace(arc, line.number);
    ++at;
  }

  // Cycle pre-check so the diagnostic can carry a line number; the Instance
  // constructor would otherwise reject the graph without one.
  {
    std::vector<std::int32_t> indeg(static_cast<std::size_t>(m) + 1, 0);
    std::vector<std::vector<RequirementId>> children(
        static_cast<std::size_t>(m) + 1);
    for (const auto& [p, c] : graph.arcs) {
      children[static_cast<std::size_t>(p)].push_back(c);
      ++indeg[static_cast<std::size_t>(c)];
    }
    std::vector<RequirementId> queue;
    for (RequirementId v = 1; v <= m; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::int64_t seen = 0;
    while (!queue.empty()) {
      const RequirementId v = queue.back();
      queue.pop_back();
      ++seen;
      for (RequirementId c : children[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
    }
    if (seen != m)
      io_detail::report_cycle(static_cast<std::int32_t>(m), graph.arcs, arc_lines);
  }

  const Line& cust_header = need("'customers <n>'");
  io_detail::expect_tokens(cust_header, 2);
  if (cust_header.tokens[0] != "customers")
    throw ParseError(cust_header.number, "expected 'customers <n>'");
  const std::int64_t n = io_detail::parse_int(cust_header, 1, "customer count");
  if (n < 0) throw ParseError(cust_header.number, "customer count must be non-negative");
  ++at;

  std::vector<Customer> customers;
  customers.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const Line& line = need("a customer line");
    if (line.tokens.size() < 3)
      throw ParseError(line.number, "customer line needs at least id, profit and request count");
    const std::int64_t id = io_detail::parse_int(line, 0, "customer id");
    if (id != i)
      throw ParseError(line.number, "expected customer id " + std::to_string(i) +
                                        ", got " + std::to_string(id));
    const std::int64_t profit = io_detail::parse_int(line, 1, "customer profit");
    if (profit <= 0) throw ParseError(line.number, "customer profit must be positive");
    const std::int64_t k = io_detail::parse_int(line, 2, "request count");
    if (k < 0) throw ParseError(line.number, "request count must be non-negative");
    io_detail::expect_tokens(line, static_cast<std::size_t>(3 + k));
    Customer cust{static_cast<CustomerId>(id), profit, {}};
    cust.requested.reserve(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
      const std::int64_t r =
          io_detail::parse_int(line, static_cast<std::size_t>(3 + j), "requirement id");
      if (r < 1 || r > m)
        throw ParseError(line.number, "requested requirement id " + std::to_string(r) +
                                          " out of range 1.." + std::to_string(m));
      const auto rid = static_cast<RequirementId>(r);
      for (RequirementId prev : cust.requested) {
        if (prev == rid)
          throw ParseError(line.number, "duplicate requirement " + std::to_string(r) +
                                            " in request set");
      }
      cust.requested.push_back(rid);
    }
    customers.push_back(std::move(cust));
    ++at;
  }

  std::optional<std::int64_t> budget;
  if (at < lines.size() && lines[at].tokens[0] == "budget") {
    const Line& line = lines[at];
    io_detail::expect_tokens(line, 2);
    const std::int64_t b = io_detail::parse_int(line, 1, "budget bound");
    if (b < 0) throw ParseError(line.number, "budget bound must be non-negative");
    budget = b;
    ++at;
  }

  if (at < lines.size())
    throw ParseError(lines[at].number,
                     "unexpected content '" + lines[at].tokens[0] + "'");

  return InstanceFile{
      Instance(std::move(requirements), std::move(graph), std::move(customers)),
      budget};
}

inline InstanceFile read_instance(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

inline InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  return read_instance(in);
}

/// Canonical text form: arcs sorted by (parent, child), request sets sorted
/// ascending.  read_instance(write_instance(x)) reproduces x, and writing a
/// freshly parsed canonical file reproduces its bytes.
inline std::string write_instance(const Instance& inst,
                                  std::optional<std::int64_t> budget = {}) {
  std::ostringstream out;
  out << "nrp-instance 1\n";
  out << "requirements " << inst.requirement_count() << "\n";
  for (RequirementId r = 1; r <= inst.requirement_count(); ++r)
    out << r << " " << inst.cost(r) << "\n";
  out << "dependencies " << inst.arcs().size() << "\n";
  for (const auto& [p, c] : inst.arcs()) out << p << " " << c << "\n";
  out << "customers " << inst.customer_count() << "\n";
  for (CustomerId c = 1; c <= inst.customer_count(); ++c) {
    const auto& req = inst.requested(c);
    out << c << " " << inst.profit(c) << " " << req.size();
    for (RequirementId r : req) out << " " << r;
    out << "\n";
  }
  if (budget) out << "budget " << *budget << "\n";
  return out.str();
}

inline void write_instance_file(const std::string& path, const Instance& inst,
                                std::optional<std::int64_t> budget = {}) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << write_instance(inst, budget);
}

}  // namespace nrp
