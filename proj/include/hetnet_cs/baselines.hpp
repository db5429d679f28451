#ifndef HETNET_CS_BASELINES_HPP
#define HETNET_CS_BASELINES_HPP

#include "hetnet_cs/optimizer.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/snapshot.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace hetnet_cs {

/// No switching: every SBS serves its own users.
inline SwitchDecision all_on(const Scenario& s, const ChannelSnapshot& snap) {
  return evaluate_decision(s, snap, power::ActivityVector(s.sbs_count(), 1));
}

inline SwitchDecision all_on(const Scenario& s) { return all_on(s, draw_channel(s)); }

/// Load-ordered greedy: switch SBSs off from the least loaded up, stopping at
/// the first one whose offload would push the MBS past full load. Blind to
/// both power profiles and QoS.
inline SwitchDecision sorting_cs(const Scenario& s, const ChannelSnapshot& snap) {
  const std::size_t n = s.sbs_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.sbs[a].load < s.sbs[b].load; });

  power::ActivityVector delta(n, 1);
  double lambda_m = s.config.initial_mbs_load;
  for (std::size_t j : order) {
    const double next = lambda_m + s.sbs[j].load * s.sbs[j].capacity_ratio(s.mbs.capacity);
    if (next > 1.0) break;
    lambda_m = next;
    delta[j] = 0;
  }
  return evaluate_decision(s, snap, std::move(delta));
}

inline SwitchDecision sorting_cs(const Scenario& s) { return sorting_cs(s, draw_channel(s)); }

/// Exact switching with the QoS constraint removed.
inline SwitchDecision cs_no_qos(const Scenario& s, const ChannelSnapshot& snap) {
  const SwitchInstance inst = build_instance(s, snap, false);
  return evaluate_decision(s, snap, solve_exact(inst).delta);
}

inline SwitchDecision cs_no_qos(const Scenario& s) { return cs_no_qos(s, draw_channel(s)); }

enum class Method { all_on, sorting, no_qos, proposed };

inline constexpr Method kAllMethods[] = {Method::all_on, Method::sorting, Method::no_qos,
                                         Method::proposed};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::all_on: return "all-on";
    case Method::sorting: return "sorting";
    case Method::no_qos: return "no-qos";
    case Method::proposed: return "proposed";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected all-on, sorting, no-qos or proposed)");
}

inline SwitchDecision run_method(Method m, const Scenario& s, const ChannelSnapshot& snap) {
  switch (m) {
    case Method::all_on: return all_on(s, snap);
    case Method::sorting: return sorting_cs(s, snap);
    case Method::no_qos: return cs_no_qos(s, snap);
    case Method::proposed: return proposed_cs(s, snap);
  }
  throw ConfigError("run_method: unhandled method");
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_BASELINES_HPP
