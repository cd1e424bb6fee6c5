#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nrp/model.hpp"

namespace nrp {

/// Set of (customer, bit) pairs with at most one bit per customer.
class PartialAssignment {
 public:
  PartialAssignment() = default;

  /// Fixes a customer to a bit.  Re-fixing with the same bit is a no-op;
  /// fixing the opposite bit is an error.
  void fix(CustomerId id, bool bit) {
    const auto [it, inserted] = fixed_.emplace(id, bit);
    if (!inserted && it->second != bit)
      throw InputError("customer " + std::to_string(id) +
                       " fixed to both bits");
  }

  void unfix(CustomerId id) { fixed_.erase(id); }

  bool contains(CustomerId id) const { return fixed_.count(id) != 0; }

  bool bit(CustomerId id) const {
    const auto it = fixed_.find(id);
    if (it == fixed_.end())
      throw InputError("customer " + std::to_string(id) + " is not fixed");
    return it->second;
  }

  std::size_t size() const { return fixed_.size(); }
  bool empty() const { return fixed_.empty(); }

  auto begin() const { return fixed_.begin(); }
  auto end() const { return fixed_.end(); }

  /// One "fix <customer-id> <bit>" line per pair, ascending by id.
  std::string serialize() const {
    std::ostringstream out;
    for (const auto& [id, bit] : fixed_) out << "fix " << id << " " << (bit ? 1 : 0) << "\n";
    return out.str();
  }

  bool operator==(const PartialAssignment&) const = default;

 private:
  std::map<CustomerId, bool> fixed_;
};

/// Pairs every solution in `locals` agrees on.  All solutions must cover the
/// same customers; the list must not be empty.
inline PartialAssignment approximate_backbone(std::span<const Solution> locals) {
  if (locals.empty())
    throw InputError("backbone of an empty solution list is undefined");
  const std::int32_t n = locals.front().customer_count();
  for (const Solution& s : locals) {
    if (s.customer_count() != n)
      throw InputError("solutions cover different customer sets");
  }
  PartialAssignment out;
  for (CustomerId c = 1; c <= n; ++c) {
    const bool bit = locals.front().selected(c);
    bool agree = true;
    for (std::size_t i = 1; i < locals.size() && agree; ++i)
      agree = locals[i].selected(c) == bit;
    if (agree) out.fix(c, bit);
  }
  return out;
}

inline PartialAssignment approximate_backbone(const std::vector<Solution>& locals) {
  return approximate_backbone(std::span<const Solution>(locals));
}

inline constexpr std::int32_t kDefaultEnumerationCap = 25;

/// Every global optimum of an instance, in canonical (lexicographic) order,
/// together with the shared optimal profit.
struct OptimaSet {
  std::vector<Solution> solutions;
  std::int64_t profit = 0;
};

namespace backbone_detail {

/// Depth-first enumeration over customers 1..n with two prunes: a branch is
/// cut when its union-closure cost exceeds the budget (cost is monotone in
/// the selection) or when even selecting every remaining customer cannot
/// strictly beat the incumbent profit.  Visits leaves in lexicographic order,
/// so collected maximizers come out canonically ordered.  `Better` compares
/// complete assignments only through the running profit sum, allowing the
/// biased variant to refine ties.
template <class Leaf>
void enumerate(const Instance& inst, const Budget& budget, std::int32_t cap,
               Leaf leaf) {
  const std::int32_t n = inst.customer_count();
  if (n > cap)
    throw CapacityError("instance has " + std::to_string(n) +
                        " customers, enumeration cap is " + std::to_string(cap));
  const std::int32_t m = inst.requirement_count();

  std::vector<std::int64_t> suffix(static_cast<std::size_t>(n) + 2, 0);
  for (std::int32_t c = n; c >= 1; --c)
    suffix[static_cast<std::size_t>(c)] =
        suffix[static_cast<std::size_t>(c) + 1] + inst.profit(c);

  std::vector<ReqMask> used(static_cast<std::size_t>(n) + 1, ReqMask(m));
  std::vector<std::int64_t> cost(static_cast<std::size_t>(n) + 1, 0);
  Solution cur(n);
  std::int64_t cur_profit = 0;

  auto dfs = [&](auto&& self, std::int32_t i) -> void {
    if (i > n) {
      leaf(cur, cur_profit);
      return;
    }
    if (!leaf.viable(cur_profit + suffix[static_cast<std::size_t>(i)])) return;

    const auto at = static_cast<std::size_t>(i - 1);
    // branch: customer i not selected
    used[at + 1] = used[at];
    cost[at + 1] = cost[at];
    self(self, i + 1);

    // branch: customer i selected, if the budget allows
    const ReqMask& cl = inst.closure_mask(i);
    std::int64_t add = 0;
    for (std::size_t w = 0; w < cl.words().size(); ++w) {
      std::uint64_t fresh = cl.words()[w] & ~used[at].words()[w];
      while (fresh != 0) {
        const int b = std::countr_zero(fresh);
        add += inst.cost(static_cast<RequirementId>(w * 64 + static_cast<std::size_t>(b) + 1));
        fresh &= fresh - 1;
      }
    }
    if (cost[at] + add <= budget.bound) {
      used[at + 1] = used[at];
      used[at + 1] |= cl;
      cost[at + 1] = cost[at] + add;
      cur.set(i, true);
      cur_profit += inst.profit(i);
      self(self, i + 1);
      cur.set(i, false);
      cur_profit -= inst.profit(i);
    }
  };
  dfs(dfs, 1);
}

struct PlainCollector {
  OptimaSet out;
  bool seen = false;

  bool viable(std::int64_t upper) const { return !seen || upper >= out.profit; }

  void operator()(const Solution& s, std::int64_t profit) {
    if (!seen || profit > out.profit) {
      out.profit = profit;
      out.solutions.clear();
      out.solutions.push_back(s);
      seen = true;
    } else if (profit == out.profit) {
      out.solutions.push_back(s);
    }
  }
};

}  // namespace backbone_detail

/// Exhaustive search for all global optima.  Refuses instances above `cap`
/// customers.  The all-zero assignment is always feasible, so the result is
/// never empty.
inline OptimaSet enumerate_optima(const Instance& inst, const Budget& budget,
                                  std::int32_t cap = kDefaultEnumerationCap) {
  backbone_detail::PlainCollector collect;
  backbone_detail::enumerate<backbone_detail::PlainCollector&>(inst, budget, cap,
                                                               collect);
  return std::move(collect.out);
}

/// Intersection of all global optima in ordered-pair form.
inline PartialAssignment exact_backbone(const Instance& inst, const Budget& budget,
                                        std::int32_t cap = kDefaultEnumerationCap) {
  const OptimaSet opt = enumerate_optima(inst, budget, cap);
  return approximate_backbone(opt.solutions);
}

/// Profit value of the form  whole + sum over selected i of 2^-i.
///
/// The fractional part is exactly the selection bit string read as a binary
/// fraction (customer 1 is the most significant bit), so comparisons are done
/// on the integer part first and the bit string second -- no floating point,
/// no rounding, valid for any number of customers.
class BiasedProfit {
 public:
  BiasedProfit() = default;
  BiasedProfit(std::int64_t whole, std::vector<std::uint8_t> fraction_bits)
      : whole_(whole), frac_(std::move(fraction_bits)) {}

  std::int64_t whole() const { return whole_; }
  const std::vector<std::uint8_t>& fraction_bits() const { return frac_; }

  std::strong_ordering operator<=>(const BiasedProfit& o) const {
    if (auto c = whole_ <=> o.whole_; c != 0) return c;
    return frac_ <=> o.frac_;
  }
  bool operator==(const BiasedProfit&) const = default;

  /// Exact decimal rendering, e.g. 30 + 2^-1 -> "30.5".  2^-i has the finite
  /// expansion 5^i / 10^i, so the digits of 5^i are accumulated at offset i.
  std::string decimal() const {
    std::vector<int> digits(frac_.size() + 1, 0);  // digits[k] = 10^-k place
    std::vector<int> pow5{1};                      // big-endian digits of 5^i
    for (std::size_t i = 1; i <= frac_.size(); ++i) {
      int carry = 0;
      for (auto it = pow5.rbegin(); it != pow5.rend(); ++it) {
        const int v = *it * 5 + carry;
        *it = v % 10;
        carry = v / 10;
      }
      while (carry != 0) {
        pow5.insert(pow5.begin(), carry % 10);
        carry /= 10;
      }
      if (!frac_[i - 1]) continue;
      // add pow5 so its last digit lands at fraction position i
      int add_carry = 0;
      for (std::size_t d = 0; d < pow5.size(); ++d) {
        const std::size_t pos = i - d;  // pow5 has at most i digits
        const int v = digits[pos] + pow5[pow5.size() - 1 - d] + add_carry;
        digits[pos] = v % 10;
        add_carry = v / 10;
      }
      for (std::size_t pos = i - pow5.size(); add_carry != 0; --pos) {
        const int v = digits[pos] + add_carry;
        digits[pos] = v % 10;
        add_carry = v / 10;
        if (pos == 0) break;  // unreachable: the fraction total stays below 1
      }
    }
    std::string out = std::to_string(whole_);
    std::size_t last = 0;
    for (std::size_t k = 1; k < digits.size(); ++k)
      if (digits[k] != 0) last = k;
    if (last > 0) {
      out.push_back('.');
      for (std::size_t k = 1; k <= last; ++k)
        out.push_back(static_cast<char>('0' + digits[k]));
    }
    return out;
  }

 private:
  std::int64_t whole_ = 0;
  std::vector<std::uint8_t> frac_;
};

/// View of an instance whose profit for customer i is w_i + 2^-i.  Structure
/// (requirements, dependencies, request sets, costs) is untouched; only the
/// profit channel changes, and it is evaluated exactly via BiasedProfit.
class BiasedInstance {
 public:
  explicit BiasedInstance(Instance base) : base_(std::move(base)) {
    // Customer profits are validated positive integers at construction of
    // the base instance, which is all the bias construction needs.
  }

  const Instance& base() const { return base_; }

  BiasedProfit profit_of(const Solution& sol) const {
    const std::int64_t whole = solution_profit(base_, sol);
    std::vector<std::uint8_t> bits(
        static_cast<std::size_t>(sol.customer_count()));
    for (CustomerId c = 1; c <= sol.customer_count(); ++c)
      bits[static_cast<std::size_t>(c - 1)] = sol.selected(c) ? 1 : 0;
    return BiasedProfit(whole, std::move(bits));
  }

 private:
  Instance base_;
};

inline BiasedInstance biased_instance(const Instance& inst) {
  return BiasedInstance(inst);
}

struct BiasedOptimaSet {
  std::vector<Solution> solutions;
  BiasedProfit profit;
};

namespace backbone_detail {

struct BiasedCollector {
  const Instance* inst;
  BiasedOptimaSet out;
  bool seen = false;

  bool viable(std::int64_t upper) const {
    // Tied integer profits can still win on the fractional part.
    return !seen || upper >= out.profit.whole();
  }

  void operator()(const Solution& s, std::int64_t profit) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(s.customer_count()));
    for (CustomerId c = 1; c <= s.customer_count(); ++c)
      bits[static_cast<std::size_t>(c - 1)] = s.selected(c) ? 1 : 0;
    BiasedProfit p(profit, std::move(bits));
    if (!seen || p > out.profit) {
      out.profit = std::move(p);
      out.solutions.clear();
      out.solutions.push_back(s);
      seen = true;
    } else if (p == out.profit) {
      out.solutions.push_back(s);
    }
  }
};

}  // namespace backbone_detail

/// Exhaustive optimum of the biased instance under exact profit comparison.
inline BiasedOptimaSet enumerate_optima(const BiasedInstance& biased,
                                        const Budget& budget,
                                        std::int32_t cap = kDefaultEnumerationCap) {
  backbone_detail::BiasedCollector collect;
  collect.inst = &biased.base();
  backbone_detail::enumerate<backbone_detail::BiasedCollector&>(
      biased.base(), budget, cap, collect);
  return std::move(collect.out);
}

/// Everything needed to lift a sub-instance solution back to the instance the
/// reduction was applied to.
struct ReductionRecord {
  PartialAssignment fixed;
  std::vector<RequirementId> implemented;  ///< closure of the fixed-in customers
  std::int64_t budget_delta = 0;           ///< cost of `implemented` before zeroing
  std::int64_t profit_delta = 0;           ///< profit of the fixed-in customers
  std::vector<CustomerId> customer_index_map;  ///< sub id k -> original id map[k-1]
  std::int32_t original_customer_count = 0;
};

struct Reduction {
  Instance instance;
  Budget budget;
  ReductionRecord record;
};

/// Applies a partial assignment: fixed-in customers' closures are marked
/// implemented (their cost is paid out of the budget and zeroed in the
/// sub-instance; the requirements stay in place so ids remain stable), and
/// every fixed customer disappears from the customer list.  Throws
/// ReductionError if the fixed-in customers alone overrun the budget.
inline Reduction reduce(const Instance& inst, const Budget& budget,
                        const PartialAssignment& fixed) {
  const std::int32_t n = inst.customer_count();
  const std::int32_t m = inst.requirement_count();

  ReqMask implemented(m);
  std::int64_t profit_delta = 0;
  for (const auto& [id, bit] : fixed) {
    if (id < 1 || id > n)
      throw InputError("fixed customer " + std::to_string(id) + " out of range");
    if (bit) {
      implemented |= inst.closure_mask(id);
      profit_delta += inst.profit(id);
    }
  }
  const std::int64_t budget_delta = inst.cost_of(implemented);
  if (budget_delta > budget.bound)
    throw ReductionError("fixed-in customers cost " + std::to_string(budget_delta) +
                         ", which exceeds the budget " + std::to_string(budget.bound));

  std::vector<Requirement> reqs;
  reqs.reserve(static_cast<std::size_t>(m));
  for (RequirementId r = 1; r <= m; ++r)
    reqs.push_back({r, implemented.test(r) ? 0 : inst.cost(r)});

  std::vector<Customer> customers;
  std::vector<CustomerId> index_map;
  for (CustomerId c = 1; c <= n; ++c) {
    if (fixed.contains(c)) continue;
    index_map.push_back(c);
    customers.push_back({static_cast<CustomerId>(customers.size() + 1),
                         inst.profit(c), inst.requested(c)});
  }

  Reduction out{
      Instance(std::move(reqs), DependencyGraph{inst.arcs()}, std::move(customers)),
      Budget(budget.bound - budget_delta),
      ReductionRecord{fixed, implemented.ids(), budget_delta, profit_delta,
                      std::move(index_map), n}};
  return out;
}

/// Lifts a sub-instance solution back through one reduction: fixed pairs keep
/// their bits, free customers take theirs from the sub-solution.
inline Solution refine(const Solution& sub, const ReductionRecord& rec) {
  if (sub.customer_count() !=
      static_cast<std::int32_t>(rec.customer_index_map.size()))
    throw InputError("sub-solution does not match the reduction record");
  Solution full(rec.original_customer_count);
  for (const auto& [id, bit] : rec.fixed) full.set(id, bit);
  for (std::size_t k = 0; k < rec.customer_index_map.size(); ++k)
    full.set(rec.customer_index_map[k],
             sub.selected(static_cast<CustomerId>(k + 1)));
  return full;
}

}  // namespace nrp
