#ifndef HETNET_CS_METRICS_HPP
#define HETNET_CS_METRICS_HPP

// Traffic and power figures of merit for a switching decision. Traffic is in
// capacity-weighted load units: an SBS at load lambda_j carries C_j * lambda_j.

#include "hetnet_cs/optimizer.hpp"
#include "hetnet_cs/scenario.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hetnet_cs {

struct EvalReport {
  double total_power_w = 0.0;
  double served_traffic_qos = 0.0;
  double offered_traffic = 0.0;
  double savings_pct = 0.0;
  std::size_t outage_count = 0;  // SBSs whose offloaded users are in outage
  double lambda_m = 0.0;
};

/// C_M * lambda_M,0 + sum_j C_j * lambda_j.
inline double offered_traffic(const Scenario& s) {
  double total = s.mbs.capacity * s.config.initial_mbs_load;
  for (const auto& c : s.sbs) total += c.capacity * c.load;
  return total;
}

/// Traffic served with QoS. Offloaded SBS traffic is carried by the MBS and
/// counted once (C_M * lambda_j * phi_j == C_j * lambda_j); an offloaded SBS
/// with any user below P_min contributes nothing.
inline double served_traffic_qos(const Scenario& s, const SwitchDecision& d) {
  std::vector<std::uint8_t> outage(s.sbs_count(), 0);
  for (std::size_t j : d.outage_sbs) outage[j] = 1;
  double total = s.mbs.capacity * s.config.initial_mbs_load;
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    const bool served = d.delta[j] || !outage[j];
    total += served ? s.sbs[j].capacity * s.sbs[j].load : 0.0;
  }
  return total;
}

inline double savings_pct(double power_w, double all_on_power_w) {
  if (!(all_on_power_w > 0.0)) {
    throw DomainError("savings_pct: reference power must be positive");
  }
  return 100.0 * (1.0 - power_w / all_on_power_w);
}

inline EvalReport evaluate(const Scenario& s, const SwitchDecision& d, double all_on_power_w) {
  EvalReport r;
  r.total_power_w = d.total_power_w;
  r.served_traffic_qos = served_traffic_qos(s, d);
  r.offered_traffic = offered_traffic(s);
  r.savings_pct = savings_pct(d.total_power_w, all_on_power_w);
  r.outage_count = d.outage_sbs.size();
  r.lambda_m = d.lambda_m;
  return r;
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_METRICS_HPP
