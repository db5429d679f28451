#ifndef HETNET_CS_VERIFY_HPP
#define HETNET_CS_VERIFY_HPP

// Self-checks behind `hetnet-cs verify`: solver against the exhaustive
// oracle, plus the cross-method invariants on default scenarios.

#include "hetnet_cs/baselines.hpp"
#include "hetnet_cs/metrics.hpp"
#include "hetnet_cs/optimizer.hpp"
#include "hetnet_cs/rng.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/snapshot.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hetnet_cs {

/// Random knapsack instance with `size` SBSs: mixed-sign savings, loads in
/// [0,1] with phi = 1/4, ~20% forced on, random initial MBS load.
inline SwitchInstance random_instance(Rng& rng, std::size_t size) {
  std::uniform_real_distribution<double> saving{-10.0, 40.0};
  std::uniform_real_distribution<double> load{0.0, 1.0};
  std::bernoulli_distribution forced{0.2};
  SwitchInstance inst;
  inst.initial_mbs_load = load(rng);
  inst.capacity = 1.0 - inst.initial_mbs_load;
  inst.base_power_w = 2000.0;
  inst.items.resize(size);
  for (auto& it : inst.items) {
    it.saving_w = saving(rng);
    it.weight = 0.25 * load(rng);
    it.forced_on = forced(rng);
  }
  return inst;
}

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

inline CheckResult check_solver_optimality(std::size_t instances, std::uint64_t seed = 2024) {
  CheckResult r{"solve_exact matches exhaustive oracle", true, ""};
  Rng rng = make_rng(seed, Stream::instances);
  std::uniform_int_distribution<std::size_t> size{1, 16};
  std::size_t bad = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const SwitchInstance inst = random_instance(rng, size(rng));
    const double exact = solve_exact(inst).total_power_w;
    const double oracle = solve_bruteforce(inst).total_power_w;
    if (std::abs(exact - oracle) > 1e-9) ++bad;
  }
  r.passed = bad == 0;
  r.detail = std::to_string(instances - bad) + "/" + std::to_string(instances) + " instances agree";
  return r;
}

/// Ordering, feasibility and conservation on default scenarios.
inline std::vector<CheckResult> check_scenario_invariants(const std::vector<double>& alphas,
                                                          const std::vector<std::uint64_t>& seeds) {
  CheckResult order{"power ordering no-qos <= proposed <= all-on, no-qos <= sorting", true, ""};
  CheckResult feas{"lambda_M <= 1 and proposed outage-free", true, ""};
  CheckResult cons{"proposed serves all offered traffic", true, ""};
  CheckResult trip{"decision power equals network power re-evaluation", true, ""};
  std::size_t cells = 0;
  for (double alpha : alphas) {
    for (std::uint64_t seed : seeds) {
      ++cells;
      ScenarioConfig cfg;
      cfg.alpha = alpha;
      cfg.seed = seed;
      const Scenario s = build_scenario(cfg);
      const ChannelSnapshot snap = draw_channel(s);
      const auto on = all_on(s, snap);
      const auto sort = sorting_cs(s, snap);
      const auto noqos = cs_no_qos(s, snap);
      const auto prop = proposed_cs(s, snap);
      const std::string where = " (alpha=" + std::to_string(alpha) + ", seed=" + std::to_string(seed) + ")";
      if (!(noqos.total_power_w <= prop.total_power_w && prop.total_power_w <= on.total_power_w &&
            noqos.total_power_w <= sort.total_power_w)) {
        order.passed = false;
        order.detail = "violated" + where;
      }
      for (const auto* d : {&sort, &noqos, &prop}) {
        if (d->lambda_m > 1.0) {
          feas.passed = false;
          feas.detail = "lambda_M > 1" + where;
        }
      }
      if (!prop.outage_sbs.empty()) {
        feas.passed = false;
        feas.detail = "proposed outage" + where;
      }
      if (served_traffic_qos(s, prop) != offered_traffic(s)) {
        cons.passed = false;
        cons.detail = "served != offered" + where;
      }
      const auto inst = build_instance(s, snap, true);
      const auto raw = solve_exact(inst);
      if (std::abs(raw.total_power_w - prop.total_power_w) > 1e-9) {
        trip.passed = false;
        trip.detail = "mismatch" + where;
      }
    }
  }
  for (auto* c : {&order, &feas, &cons, &trip}) {
    if (c->passed) c->detail = std::to_string(cells) + " cells";
  }
  return {order, feas, cons, trip};
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_VERIFY_HPP
