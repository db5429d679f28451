#ifndef HETNET_CS_OPTIMIZER_HPP
#define HETNET_CS_OPTIMIZER_HPP

// QoS-constrained cell switching as a 0/1 knapsack.
//
// With the per-user QoS constraint presolved into a forced-on flag per SBS,
// the only remaining coupling is the MBS capacity. Switching SBS j off saves
//   saving_j = (P_O,j + eta_j lambda_j P_T,j - P_S,j) - eta_M P_T,M lambda_j phi_j
// and consumes weight_j = lambda_j phi_j of the residual MBS capacity
// 1 - lambda_M,0. Minimizing network power is maximizing the total saving of
// the switched-off set. See docs/knapsack_reduction.md.

#include "hetnet_cs/power.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/snapshot.hpp"
#include "hetnet_cs/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet_cs {

class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SizeGuardError : public std::length_error {
public:
  using std::length_error::length_error;
};

struct SwitchItem {
  double saving_w = 0.0;
  double weight = 0.0;
  bool forced_on = false;
};

struct SwitchInstance {
  std::vector<SwitchItem> items;
  double initial_mbs_load = 0.0;
  double capacity = 1.0;     // 1 - initial_mbs_load
  double base_power_w = 0.0; // every SBS on

  std::size_t size() const { return items.size(); }

  void validate() const {
    if (capacity < 0.0) {
      throw InfeasibleError("switch instance: residual MBS capacity " + std::to_string(capacity) +
                            " is negative (initial MBS load above 1)");
    }
    for (const auto& it : items) {
      if (it.weight < 0.0 || !std::isfinite(it.weight) || !std::isfinite(it.saving_w)) {
        throw PreconditionError("switch instance: weights must be finite and non-negative");
      }
    }
  }
};

struct SwitchDecision {
  power::ActivityVector delta;
  double total_power_w = 0.0;
  double lambda_m = 0.0;
  std::vector<std::size_t> outage_sbs;

  std::size_t off_count() const {
    return static_cast<std::size_t>(std::count(delta.begin(), delta.end(), std::uint8_t{0}));
  }
};

/// Total saving of the switched-off set, summed in index order so that two
/// solvers returning the same set report bit-identical objectives.
inline double switched_off_saving(const SwitchInstance& inst, const power::ActivityVector& delta) {
  double total = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (!delta[j]) total += inst.items[j].saving_w;
  }
  return total;
}

inline double switched_off_weight(const SwitchInstance& inst, const power::ActivityVector& delta) {
  double total = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (!delta[j]) total += inst.items[j].weight;
  }
  return total;
}

inline bool is_feasible(const SwitchInstance& inst, const power::ActivityVector& delta) {
  if (delta.size() != inst.size()) return false;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (!delta[j] && inst.items[j].forced_on) return false;
  }
  return switched_off_weight(inst, delta) <= inst.capacity;
}

/// Decision in instance terms only (no scenario): power = base - saving.
inline SwitchDecision decision_from_instance(const SwitchInstance& inst, power::ActivityVector delta) {
  SwitchDecision d;
  d.total_power_w = inst.base_power_w - switched_off_saving(inst, delta);
  d.lambda_m = inst.initial_mbs_load + switched_off_weight(inst, delta);
  d.delta = std::move(delta);
  return d;
}

namespace detail {

// Preference between two feasible switch-off sets with objectives a and b:
// higher saving wins; on an exact tie, fewer SBSs off, then the
// lexicographically smaller delta (lowest index off first).
inline bool preferred(double value_a, const power::ActivityVector& a, double value_b,
                      const power::ActivityVector& b) {
  if (value_a != value_b) return value_a > value_b;
  const auto off_a = std::count(a.begin(), a.end(), std::uint8_t{0});
  const auto off_b = std::count(b.begin(), b.end(), std::uint8_t{0});
  if (off_a != off_b) return off_a < off_b;
  return a < b;
}

}  // namespace detail

inline constexpr std::size_t kBruteForceLimit = 20;

/// Exhaustive enumeration of all 2^s switching vectors. Test oracle only.
inline SwitchDecision solve_bruteforce(const SwitchInstance& inst) {
  inst.validate();
  const std::size_t s = inst.size();
  if (s > kBruteForceLimit) {
    throw SizeGuardError("solve_bruteforce: " + std::to_string(s) + " SBSs exceeds the limit of " +
                         std::to_string(kBruteForceLimit));
  }
  power::ActivityVector best(s, 1);
  double best_value = 0.0;
  power::ActivityVector delta(s);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    // bit j set -> SBS j off
    for (std::size_t j = 0; j < s; ++j) delta[j] = ((mask >> j) & 1U) ? 0 : 1;
    if (!is_feasible(inst, delta)) continue;
    const double value = switched_off_saving(inst, delta);
    if (detail::preferred(value, delta, best_value, best)) {
      best = delta;
      best_value = value;
    }
  }
  return decision_from_instance(inst, std::move(best));
}

struct BranchAndBoundStats {
  std::size_t nodes_expanded = 0;
};

/// Best-first branch and bound with the fractional-knapsack (LP) bound.
/// Forced-on SBSs and SBSs whose saving is not positive are fixed on up front.
inline SwitchDecision solve_exact(const SwitchInstance& inst, BranchAndBoundStats* stats = nullptr) {
  inst.validate();
  const std::size_t s = inst.size();

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < s; ++j) {
    if (!inst.items[j].forced_on && inst.items[j].saving_w > 0.0) order.push_back(j);
  }
  auto ratio = [&](std::size_t j) {
    const auto& it = inst.items[j];
    return it.weight > 0.0 ? it.saving_w / it.weight : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
  const std::size_t m = order.size();

  auto upper_bound = [&](std::size_t level, double value, double weight) {
    double bound = value;
    double room = inst.capacity - weight;
    for (std::size_t k = level; k < m; ++k) {
      const auto& it = inst.items[order[k]];
      if (it.weight <= room) {
        room -= it.weight;
        bound += it.saving_w;
      } else {
        bound += it.saving_w * (room / it.weight);
        break;
      }
    }
    return bound;
  };

  struct Node {
    std::size_t level;
    double value;
    double weight;
    double bound;
    std::vector<std::uint8_t> take;  // per position in `order`
    std::uint64_t seq;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.level != b.level) return a.level < b.level;
    return a.seq > b.seq;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  auto to_delta = [&](const std::vector<std::uint8_t>& take) {
    power::ActivityVector delta(s, 1);
    for (std::size_t k = 0; k < take.size(); ++k) {
      if (take[k]) delta[order[k]] = 0;
    }
    return delta;
  };

  power::ActivityVector best(s, 1);
  double best_value = 0.0;
  auto offer = [&](const std::vector<std::uint8_t>& take) {
    auto delta = to_delta(take);
    const double value = switched_off_saving(inst, delta);
    if (detail::preferred(value, delta, best_value, best)) {
      best = std::move(delta);
      best_value = value;
    }
  };

  // Greedy incumbent: take in ratio order while it fits.
  {
    std::vector<std::uint8_t> greedy(m, 0);
    double room = inst.capacity;
    for (std::size_t k = 0; k < m; ++k) {
      const double w = inst.items[order[k]].weight;
      if (w <= room) {
        greedy[k] = 1;
        room -= w;
      }
    }
    offer(greedy);
  }

  std::uint64_t seq = 0;
  open.push(Node{0, 0.0, 0.0, upper_bound(0, 0.0, 0.0), {}, seq++});
  std::size_t expanded = 0;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound <= best_value || node.level == m) continue;
    ++expanded;
    const auto& it = inst.items[order[node.level]];

    if (node.weight + it.weight <= inst.capacity) {
      Node take = node;
      take.level += 1;
      take.value += it.saving_w;
      take.weight += it.weight;
      take.take.push_back(1);
      take.bound = upper_bound(take.level, take.value, take.weight);
      take.seq = seq++;
      offer(take.take);
      if (take.bound > best_value && take.level < m) open.push(std::move(take));
    }
    Node skip = std::move(node);
    skip.level += 1;
    skip.take.push_back(0);
    skip.bound = upper_bound(skip.level, skip.value, skip.weight);
    skip.seq = seq++;
    if (skip.bound > best_value && skip.level < m) open.push(std::move(skip));
  }
  if (stats) stats->nodes_expanded = expanded;
  return decision_from_instance(inst, std::move(best));
}

/// Reduces (scenario, channel realization) to a knapsack instance. With
/// `enforce_qos` off every forced flag is cleared (the no-QoS variant).
inline SwitchInstance build_instance(const Scenario& s, const ChannelSnapshot& snap,
                                     bool enforce_qos = true) {
  if (snap.users.size() != s.users.size()) {
    throw PreconditionError("build_instance: channel snapshot has " +
                            std::to_string(snap.users.size()) + " users, scenario has " +
                            std::to_string(s.users.size()));
  }
  const auto& mbs = s.mbs.profile;
  SwitchInstance inst;
  inst.initial_mbs_load = s.config.initial_mbs_load;
  inst.capacity = 1.0 - s.config.initial_mbs_load;
  inst.items.resize(s.sbs_count());

  double base = power::bs_power_w(mbs, s.config.initial_mbs_load, true);
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const auto& cell = s.sbs[j];
    const double phi = cell.capacity_ratio(s.mbs.capacity);
    const double on = power::bs_power_w(cell.profile, cell.load, true);
    const double off = power::bs_power_w(cell.profile, cell.load, false);
    auto& item = inst.items[j];
    item.weight = cell.load * phi;
    item.saving_w = (on - off) - mbs.efficiency * mbs.tx_power_w * item.weight;
    base += on;
  }
  if (enforce_qos) {
    for (std::size_t i = 0; i < s.users.size(); ++i) {
      if (snap.users[i].offload_rx_dbm < s.config.p_min_dbm) {
        inst.items[s.users[i].home].forced_on = true;
      }
    }
  }
  inst.base_power_w = base;
  return inst;
}

/// SBSs that are off while at least one of their users receives less than
/// P_min from the MBS.
inline std::vector<std::size_t> outage_sbs(const Scenario& s, const ChannelSnapshot& snap,
                                           const power::ActivityVector& delta) {
  std::vector<std::uint8_t> flagged(s.sbs_count(), 0);
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const std::size_t j = s.users[i].home;
    if (!delta[j] && snap.users[i].offload_rx_dbm < s.config.p_min_dbm) flagged[j] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < flagged.size(); ++j) {
    if (flagged[j]) out.push_back(j);
  }
  return out;
}

/// Re-evaluates a switching vector against the full power model.
inline SwitchDecision evaluate_decision(const Scenario& s, const ChannelSnapshot& snap,
                                        power::ActivityVector delta) {
  if (delta.size() != s.sbs_count()) {
    throw PreconditionError("evaluate_decision: delta has wrong length");
  }
  const auto loads = s.sbs_loads();
  const auto phi = s.capacity_ratios();
  const auto profiles = s.sbs_profiles();
  SwitchDecision d;
  d.lambda_m = power::mbs_load(delta, s.config.initial_mbs_load, loads, phi);
  if (d.lambda_m > 1.0) {
    throw InfeasibleError("evaluate_decision: MBS load " + std::to_string(d.lambda_m) +
                          " exceeds capacity");
  }
  d.total_power_w = power::network_power_w(delta, power::LoadVector{loads, d.lambda_m}, s.mbs.profile,
                                           profiles);
  d.outage_sbs = outage_sbs(s, snap, delta);
  d.delta = std::move(delta);
  return d;
}

/// One time step of QoS-aware switching: presolve QoS into forced-on flags,
/// solve the knapsack exactly, offload every SBS with delta_j = 0.
inline SwitchDecision proposed_cs(const Scenario& s, const ChannelSnapshot& snap) {
  const SwitchInstance inst = build_instance(s, snap, true);
  auto decision = evaluate_decision(s, snap, solve_exact(inst).delta);
  if (!decision.outage_sbs.empty()) {
    throw std::logic_error("proposed_cs: solver returned a QoS-violating decision");
  }
  return decision;
}

inline SwitchDecision proposed_cs(const Scenario& s, Rng& rng) {
  return proposed_cs(s, draw_channel(s, rng));
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_OPTIMIZER_HPP
