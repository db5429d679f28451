// hetnet-cs: command-line front end for the cell-switching simulator.
//
//   hetnet-cs simulate --method proposed --alpha 0.5 --pmin -70 --seed 1
//   hetnet-cs sweep --var alpha --grid 0.1,0.5,0.9 --seeds 20 --out fig.csv
//   hetnet-cs verify

#include "hetnet_cs/hetnet_cs.hpp"
#include "hetnet_cs/scenario_io.hpp"
#include "hetnet_cs/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace hetnet_cs;

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

ScenarioConfig resolve_config(const std::string& path) {
  if (!path.empty()) return load_config(path);
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config(env);
  return ScenarioConfig{};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> default_grid(SweepVariable v) {
  std::vector<double> g;
  if (v == SweepVariable::alpha) {
    for (int k = 1; k <= 9; ++k) g.push_back(k / 10.0);
  } else {
    for (int p = -90; p <= -55; p += 5) g.push_back(p);
  }
  return g;
}

std::string delta_string(const power::ActivityVector& delta) {
  std::string s;
  for (auto d : delta) s.push_back(d ? '1' : '0');
  return s;
}

struct SimulateOptions {
  std::string method = "proposed";
  std::optional<double> alpha;
  std::optional<double> p_min;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> users_per_sbs;
  std::size_t steps = 1;
  std::string config;
};

int run_simulate(const SimulateOptions& o) {
  ScenarioConfig cfg = resolve_config(o.config);
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.p_min) cfg.p_min_dbm = *o.p_min;
  if (o.seed) cfg.seed = *o.seed;
  if (o.users_per_sbs) cfg.users_per_sbs = *o.users_per_sbs;
  const Method method = parse_method(o.method);
  const Scenario s = build_scenario(cfg);

  for (std::size_t step = 0; step < o.steps; ++step) {
    const ChannelSnapshot snap = draw_channel(s, step);
    const double reference = all_on(s, snap).total_power_w;
    const SwitchDecision d = run_method(method, s, snap);
    const EvalReport r = evaluate(s, d, reference);
    std::printf("method=%s alpha=%g pmin_dbm=%g seed=%llu step=%zu\n",
                std::string(to_string(method)).c_str(), cfg.alpha, cfg.p_min_dbm,
                static_cast<unsigned long long>(cfg.seed), step);
    std::printf("  total_power_w=%.6g all_on_power_w=%.6g savings_pct=%.6g lambda_m=%.6g\n",
                r.total_power_w, reference, r.savings_pct, r.lambda_m);
    std::printf("  served_traffic_qos=%.6g offered_traffic=%.6g outage_count=%zu sbs_off=%zu\n",
                r.served_traffic_qos, r.offered_traffic, r.outage_count, d.off_count());
    std::printf("  delta=%s\n", delta_string(d.delta).c_str());
  }
  return 0;
}

struct SweepOptions {
  std::string variable = "alpha";
  std::string grid;
  std::string methods = "all-on,sorting,no-qos,proposed";
  std::size_t seeds = 20;
  std::string out;
  std::string config;
  std::optional<double> alpha;
  std::optional<double> p_min;
  unsigned threads = 0;
};

int run_sweep_cmd(const SweepOptions& o) {
  SweepSpec spec;
  spec.variable = parse_sweep_variable(o.variable);
  spec.fixed = resolve_config(o.config);
  if (o.alpha) spec.fixed.alpha = *o.alpha;
  if (o.p_min) spec.fixed.p_min_dbm = *o.p_min;
  if (o.grid.empty()) {
    spec.grid = default_grid(spec.variable);
  } else {
    for (const auto& g : split_list(o.grid)) spec.grid.push_back(std::stod(g));
  }
  spec.methods.clear();
  for (const auto& m : split_list(o.methods)) spec.methods.push_back(parse_method(m));
  spec.seeds = seed_range(o.seeds);
  spec.threads = o.threads ? o.threads : std::max(1U, std::thread::hardware_concurrency());

  const SweepResult result = run_sweep(spec);
  emit_csv(result.rows, o.out);

  std::printf("%-8s %-9s %14s %10s %12s %10s\n", std::string(to_string(spec.variable)).c_str(),
              "method", "power_w", "std", "savings_%", "outages");
  for (const auto& s : result.summary) {
    std::printf("%-8g %-9s %14.6g %10.4g %12.4g %10.4g\n", s.value,
                std::string(to_string(s.method)).c_str(), s.total_power_w.mean, s.total_power_w.std,
                s.savings_pct.mean, s.outage_count.mean);
  }
  std::printf("wrote %zu rows to %s\n", result.rows.size(), o.out.c_str());
  return 0;
}

int run_verify(std::size_t instances, std::size_t seeds) {
  std::vector<CheckResult> checks;
  checks.push_back(check_solver_optimality(instances));
  std::vector<double> alphas;
  for (int k = 1; k <= 9; ++k) alphas.push_back(k / 10.0);
  for (auto& c : check_scenario_invariants(alphas, seed_range(seeds))) checks.push_back(c);

  bool ok = true;
  for (const auto& c : checks) {
    std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    ok = ok && c.passed;
  }
  return ok ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HetNet small-cell switching simulator and exact optimizer"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run one switching method on one scenario");
  simulate->add_option("--method", sim.method, "all-on | sorting | no-qos | proposed")
      ->capture_default_str();
  simulate->add_option("--alpha", sim.alpha, "Traffic scaling factor in (0, 1]");
  simulate->add_option("--pmin", sim.p_min, "QoS threshold in dBm");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--users-per-sbs", sim.users_per_sbs, "Users dropped per small cell");
  simulate->add_option("--steps", sim.steps, "Time steps (shadow fading redrawn per step)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--config", sim.config,
                       std::string("JSON scenario config (default: $") + kConfigEnvVar + ")");

  SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "Sweep alpha or P_min over seeds and write CSV");
  sweep->add_option("--var", sw.variable, "alpha | pmin")->capture_default_str();
  sweep->add_option("--grid", sw.grid, "Comma-separated grid values (default per variable)");
  sweep->add_option("--methods", sw.methods, "Comma-separated method list")->capture_default_str();
  sweep->add_option("--seeds", sw.seeds, "Number of seeds (1..n)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sw.out, "Output CSV path")->required();
  sweep->add_option("--config", sw.config,
                    std::string("JSON scenario config (default: $") + kConfigEnvVar + ")");
  sweep->add_option("--alpha", sw.alpha, "Fixed alpha for a pmin sweep");
  sweep->add_option("--pmin", sw.p_min, "Fixed P_min (dBm) for an alpha sweep");
  sweep->add_option("--threads", sw.threads, "Worker threads (0 = hardware concurrency)");

  std::size_t verify_instances = 200;
  std::size_t verify_seeds = 5;
  auto* verify = app.add_subcommand("verify", "Check the solver against the oracle and invariants");
  verify->add_option("--instances", verify_instances, "Random knapsack instances")->capture_default_str();
  verify->add_option("--seeds", verify_seeds, "Scenario seeds per alpha")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (sweep->parsed()) return run_sweep_cmd(sw);
    if (verify->parsed()) return run_verify(verify_instances, verify_seeds);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}
