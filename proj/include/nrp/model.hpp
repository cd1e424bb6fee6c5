#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nrp/errors.hpp"

namespace nrp {

using RequirementId = std::int32_t;  // 1..m
using CustomerId = std::int32_t;     // 1..n

struct Requirement {
  RequirementId id = 0;
  std::int64_t cost = 0;
};

/// Arc (parent, child): `child` cannot be implemented unless `parent` is.
struct DependencyGraph {
  std::vector<std::pair<RequirementId, RequirementId>> arcs;
};

struct Customer {
  CustomerId id = 0;
  std::int64_t profit = 0;
  std::vector<RequirementId> requested;
};

/// Bit set over requirement ids 1..universe().
class ReqMask {
 public:
  ReqMask() = default;
  explicit ReqMask(std::int32_t universe)
      : size_(universe),
        words_(static_cast<std::size_t>((universe + 63) / 64), 0) {}

  std::int32_t universe() const { return size_; }

  bool test(RequirementId id) const {
    const auto i = static_cast<std::size_t>(id - 1);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(RequirementId id) {
    const auto i = static_cast<std::size_t>(id - 1);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  ReqMask& operator|=(const ReqMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }

  std::int32_t count() const {
    std::int32_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool none() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// True when every bit of `o` is also set here.
  bool contains(const ReqMask& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((o.words_[w] & ~words_[w]) != 0) return false;
    }
    return true;
  }

  /// Visits set bits as requirement ids, in ascending order.
  template <class Fn>
  void for_each(Fn fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<RequirementId>(w * 64 + static_cast<std::size_t>(b) + 1));
        bits &= bits - 1;
      }
    }
  }

  std::vector<RequirementId> ids() const {
    std::vector<RequirementId> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](RequirementId r) { out.push_back(r); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  bool operator==(const ReqMask&) const = default;

 private:
  std::int32_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Exact non-negative rational in [0, 1], kept in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Ratio() = default;
  Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n < 0 || n > d) throw InputError("ratio must lie in [0, 1]");
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }

  /// Parses a plain decimal such as "0.7", "0.35", "0" or "1".
  static Ratio parse(std::string_view text) {
    if (text.empty()) throw InputError("empty ratio");
    std::int64_t whole = 0, frac = 0, scale = 1;
    std::size_t i = 0;
    bool any = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      whole = whole * 10 + (text[i] - '0');
      if (whole > 1) throw InputError("ratio must lie in [0, 1]");
      ++i;
      any = true;
    }
    if (i < text.size()) {
      if (text[i] != '.') throw InputError("malformed ratio '" + std::string(text) + "'");
      ++i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        if (scale > 100'000'000'000'000'000ll)
          throw InputError("ratio has too many digits");
        frac = frac * 10 + (text[i] - '0');
        scale *= 10;
        ++i;
        any = true;
      }
      if (i != text.size()) throw InputError("malformed ratio '" + std::string(text) + "'");
    }
    if (!any) throw InputError("malformed ratio '" + std::string(text) + "'");
    return Ratio(whole * scale + frac, scale);
  }

  /// Nearest rational with denominator 1e6; exact for decimals up to 6 places.
  static Ratio from_double(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("ratio must lie in [0, 1]");
    const auto num = static_cast<std::int64_t>(v * 1'000'000.0 + 0.5);
    return Ratio(num, 1'000'000);
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Decimal rendering; exact because reduced denominators divide a power of 10.
  std::string str() const {
    if (num == 0) return "0";
    if (num == den) return "1";
    std::string out = "0.";
    std::int64_t rem = num;
    for (int digits = 0; rem != 0 && digits < 18; ++digits) {
      rem *= 10;
      out.push_back(static_cast<char>('0' + rem / den));
      rem %= den;
    }
    return out;
  }

  bool operator==(const Ratio&) const = default;
};

struct Budget {
  std::int64_t bound = 0;
  std::optional<Ratio> ratio;  ///< set when derived from a cost ratio

  Budget() = default;
  explicit Budget(std::int64_t b, std::optional<Ratio> r = {})
      : bound(b), ratio(std::move(r)) {
    if (b < 0) throw InputError("budget bound must be non-negative");
  }
};

/// Total assignment of customers to {selected, not selected}.
/// Customer ids are 1-based; comparison is lexicographic with customer 1 first.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::int32_t customer_count)
      : bits_(static_cast<std::size_t>(customer_count), 0) {}

  static Solution all_zero(std::int32_t n) { return Solution(n); }

  static Solution all_one(std::int32_t n) {
    Solution s(n);
    std::fill(s.bits_.begin(), s.bits_.end(), 1);
    return s;
  }

  /// Convenience: solution over n customers selecting exactly `chosen`.
  static Solution of(std::int32_t n, std::initializer_list<CustomerId> chosen) {
    Solution s(n);
    for (CustomerId id : chosen) s.set(id, true);
    return s;
  }

  std::int32_t customer_count() const {
    return static_cast<std::int32_t>(bits_.size());
  }

  bool selected(CustomerId id) const { return bits_[index(id)] != 0; }

  void set(CustomerId id, bool on) { bits_[index(id)] = on ? 1 : 0; }

  void flip(CustomerId id) { bits_[index(id)] ^= 1; }

  std::int32_t selected_count() const {
    return static_cast<std::int32_t>(
        std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  std::vector<CustomerId> selected_ids() const {
    std::vector<CustomerId> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(static_cast<CustomerId>(i + 1));
    }
    return out;
  }

  auto operator<=>(const Solution&) const = default;

 private:
  std::size_t index(CustomerId id) const {
    if (id < 1 || static_cast<std::size_t>(id) > bits_.size())
      throw InputError("customer id " + std::to_string(id) + " out of range");
    return static_cast<std::size_t>(id - 1);
  }

  std::vector<std::uint8_t> bits_;
};

/// Immutable problem instance: requirements with costs, a dependency DAG and
/// customers with profits and requested requirement sets.
///
/// The transitive closure of every customer's request set is computed once at
/// construction; all cost queries run off those memoized masks.
class Instance {
 public:
  Instance(std::vector<Requirement> requirements, DependencyGraph graph,
           std::vector<Customer> customers) {
    const auto m = static_cast<std::int32_t>(requirements.size());
    costs_.reserve(requirements.size());
    for (std::int32_t i = 0; i < m; ++i) {
      const Requirement& r = requirements[static_cast<std::size_t>(i)];
      if (r.id != i + 1)
        throw InputError("requirement ids must be exactly 1..m in order");
      if (r.cost < 0) throw InputError("requirement cost must be non-negative");
      costs_.push_back(r.cost);
    }

    arcs_ = std::move(graph.arcs);
    for (auto& [p, c] : arcs_) {
      if (p < 1 || p > m || c < 1 || c > m)
        throw InputError("dependency arc references an unknown requirement");
    }
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    const std::vector<std::int32_t> topo = topological_order(m);

    // Ancestor masks, propagated parents-first along the topological order.
    ancestors_.assign(static_cast<std::size_t>(m), ReqMask(m));
    std::vector<std::vector<RequirementId>> children(
        static_cast<std::size_t>(m) + 1);
    for (const auto& [p, c] : arcs_) children[static_cast<std::size_t>(p)].push_back(c);
    for (std::int32_t v : topo) {
      for (RequirementId c : children[static_cast<std::size_t>(v)]) {
        ReqMask& anc = ancestors_[static_cast<std::size_t>(c - 1)];
        anc |= ancestors_[static_cast<std::size_t>(v - 1)];
        anc.set(v);
      }
    }

    const auto n = static_cast<std::int32_t>(customers.size());
    profits_.reserve(customers.size());
    requested_.reserve(customers.size());
    for (std::int32_t i = 0; i < n; ++i) {
      Customer& c = customers[static_cast<std::size_t>(i)];
      if (c.id != i + 1)
        throw InputError("customer ids must be exactly 1..n in order");
      if (c.profit <= 0) throw InputError("customer profit must be positive");
      std::sort(c.requested.begin(), c.requested.end());
      c.requested.erase(std::unique(c.requested.begin(), c.requested.end()),
                        c.requested.end());
      for (RequirementId r : c.requested) {
        if (r < 1 || r > m)
          throw InputError("customer requests an unknown requirement");
      }
      profits_.push_back(c.profit);
      requested_.push_back(std::move(c.requested));
    }

    closures_.reserve(customers.size());
    closure_costs_.reserve(customers.size());
    for (std::int32_t i = 0; i < n; ++i) {
      ReqMask cl(m);
      for (RequirementId r : requested_[static_cast<std::size_t>(i)]) {
        cl.set(r);
        cl |= ancestors_[static_cast<std::size_t>(r - 1)];
      }
      closure_costs_.push_back(cost_of(cl));
      closures_.push_back(std::move(cl));
    }

    total_cost_ = std::accumulate(costs_.begin(), costs_.end(), std::int64_t{0});
  }

  std::int32_t requirement_count() const {
    return static_cast<std::int32_t>(costs_.size());
  }
  std::int32_t customer_count() const {
    return static_cast<std::int32_t>(profits_.size());
  }

  std::int64_t cost(RequirementId r) const {
    return costs_[check_req(r)];
  }
  std::int64_t profit(CustomerId c) const {
    return profits_[check_cust(c)];
  }
  const std::vector<RequirementId>& requested(CustomerId c) const {
    return requested_[check_cust(c)];
  }

  /// Canonical (sorted, deduplicated) arc list.
  const std::vector<std::pair<RequirementId, RequirementId>>& arcs() const {
    return arcs_;
  }

  /// All requirements a customer's request set transitively depends on,
  /// including the requested ones themselves.
  const ReqMask& closure_mask(CustomerId c) const {
    return closures_[check_cust(c)];
  }
  std::int64_t closure_cost(CustomerId c) const {
    return closure_costs_[check_cust(c)];
  }

  /// Strict ancestors of a single requirement (the requirement itself excluded).
  const ReqMask& ancestors(RequirementId r) const {
    return ancestors_[check_req(r)];
  }

  std::int64_t cost_of(const ReqMask& mask) const {
    std::int64_t sum = 0;
    mask.for_each([&](RequirementId r) {
      sum += costs_[static_cast<std::size_t>(r - 1)];
    });
    return sum;
  }

  /// Sum of all requirement costs.
  std::int64_t total_cost() const { return total_cost_; }

  /// Requirements whose cost is still non-zero; reduced instances keep
  /// implemented requirements around with cost zero, so this is the natural
  /// "how much is left" scale measure.
  std::int32_t active_requirement_count() const {
    return static_cast<std::int32_t>(
        std::count_if(costs_.begin(), costs_.end(),
                      [](std::int64_t c) { return c > 0; }));
  }

 private:
  std::size_t check_req(RequirementId r) const {
    if (r < 1 || static_cast<std::size_t>(r) > costs_.size())
      throw InputError("requirement id " + std::to_string(r) + " out of range");
    return static_cast<std::size_t>(r - 1);
  }
  std::size_t check_cust(CustomerId c) const {
    if (c < 1 || static_cast<std::size_t>(c) > profits_.size())
      throw InputError("customer id " + std::to_string(c) + " out of range");
    return static_cast<std::size_t>(c - 1);
  }

  std::vector<std::int32_t> topological_order(std::int32_t m) const {
    std::vector<std::int32_t> indeg(static_cast<std::size_t>(m) + 1, 0);
    std::vector<std::vector<RequirementId>> children(
        static_cast<std::size_t>(m) + 1);
    for (const auto& [p, c] : arcs_) {
      children[static_cast<std::size_t>(p)].push_back(c);
      ++indeg[static_cast<std::size_t>(c)];
    }
    std::vector<std::int32_t> order;
    order.reserve(static_cast<std::size_t>(m));
    std::vector<std::int32_t> queue;
    for (std::int32_t v = 1; v <= m; ++v) {
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    }
    while (!queue.empty()) {
      const std::int32_t v = queue.back();
      queue.pop_back();
      order.push_back(v);
      for (RequirementId c : children[static_cast<std::size_t>(v)]) {
        if (--indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
      }
    }
    if (order.size() != static_cast<std::size_t>(m))
      throw InputError("dependency graph contains a cycle");
    return order;
  }

  std::vector<std::int64_t> costs_;
  std::vector<std::pair<RequirementId, RequirementId>> arcs_;
  std::vector<std::int64_t> profits_;
  std::vector<std::vector<RequirementId>> requested_;
  std::vector<ReqMask> ancestors_;
  std::vector<ReqMask> closures_;
  std::vector<std::int64_t> closure_costs_;
  std::int64_t total_cost_ = 0;
};

/// Union of the strict ancestor sets of `reqs`.  A member of `reqs` appears in
/// the result only if it is itself an ancestor of another member.
inline std::vector<RequirementId> transitive_parents(
    const Instance& inst, std::span<const RequirementId> reqs) {
  ReqMask acc(inst.requirement_count());
  for (RequirementId r : reqs) acc |= inst.ancestors(r);
  return acc.ids();
}

inline std::vector<RequirementId> transitive_parents(
    const Instance& inst, std::initializer_list<RequirementId> reqs) {
  return transitive_parents(inst, std::span<const RequirementId>(reqs.begin(), reqs.size()));
}

/// Requested requirements of one customer plus everything they depend on.
inline std::vector<RequirementId> customer_closure(const Instance& inst,
                                                   CustomerId c) {
  return inst.closure_mask(c).ids();
}

/// Cost of a solution: each requirement in the union of the selected
/// customers' closures is paid once, no matter how many customers share it.
/// `scratch` must have the instance's requirement universe.
inline std::int64_t solution_cost(const Instance& inst, const Solution& sol,
                                  ReqMask& scratch) {
  if (sol.customer_count() != inst.customer_count())
    throw InputError("solution size does not match instance");
  scratch.clear();
  const std::int32_t n = inst.customer_count();
  for (CustomerId c = 1; c <= n; ++c) {
    if (sol.selected(c)) scratch |= inst.closure_mask(c);
  }
  return inst.cost_of(scratch);
}

inline std::int64_t solution_cost(const Instance& inst, const Solution& sol) {
  ReqMask scratch(inst.requirement_count());
  return solution_cost(inst, sol, scratch);
}

inline std::int64_t solution_profit(const Instance& inst, const Solution& sol) {
  if (sol.customer_count() != inst.customer_count())
    throw InputError("solution size does not match instance");
  std::int64_t sum = 0;
  const std::int32_t n = inst.customer_count();
  for (CustomerId c = 1; c <= n; ++c) {
    if (sol.selected(c)) sum += inst.profit(c);
  }
  return sum;
}

inline bool is_feasible(const Instance& inst, const Solution& sol,
                        const Budget& budget) {
  return solution_cost(inst, sol) <= budget.bound;
}

inline std::int32_t hamming_distance(const Solution& a, const Solution& b) {
  if (a.customer_count() != b.customer_count())
    throw InputError("solutions have different sizes");
  std::int32_t d = 0;
  const std::int32_t n = a.customer_count();
  for (CustomerId c = 1; c <= n; ++c) {
    if (a.selected(c) != b.selected(c)) ++d;
  }
  return d;
}

}  // namespace nrp
