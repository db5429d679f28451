#ifndef HETNET_CS_EXPERIMENTS_HPP
#define HETNET_CS_EXPERIMENTS_HPP

// Parameter sweeps over load intensity or QoS threshold, with every method
// evaluated on the same channel realization inside a (value, seed) cell.

#include "hetnet_cs/baselines.hpp"
#include "hetnet_cs/metrics.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace hetnet_cs {

enum class SweepVariable { alpha, p_min };

inline std::string_view to_string(SweepVariable v) { return v == SweepVariable::alpha ? "alpha" : "pmin"; }

inline SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "alpha") return SweepVariable::alpha;
  if (name == "pmin" || name == "p_min") return SweepVariable::p_min;
  throw ConfigError("unknown sweep variable '" + std::string(name) + "' (expected alpha or pmin)");
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::alpha;
  std::vector<double> grid;
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<std::uint64_t> seeds;
  ScenarioConfig fixed;
  unsigned threads = 1;

  void validate() const {
    if (grid.empty()) throw ConfigError("sweep: grid is empty");
    for (std::size_t k = 1; k < grid.size(); ++k) {
      if (!(grid[k] > grid[k - 1])) throw ConfigError("sweep: grid must be strictly increasing");
    }
    if (seeds.empty()) throw ConfigError("sweep: no seeds");
    if (methods.empty()) throw ConfigError("sweep: no methods");
  }
};

/// One CSV row. `seed` is the decimal seed or "mean" for aggregate rows.
struct SweepRow {
  std::string variable;
  double value = 0.0;
  std::string method;
  std::string seed;
  double total_power_w = 0.0;
  double served_traffic_qos = 0.0;
  double offered_traffic = 0.0;
  double savings_pct = 0.0;
  double outage_count = 0.0;
  double lambda_m = 0.0;
};

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single seed
};

struct SweepSummary {
  double value = 0.0;
  Method method = Method::all_on;
  MetricStats total_power_w;
  MetricStats served_traffic_qos;
  MetricStats savings_pct;
  MetricStats outage_count;
  MetricStats lambda_m;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // per cell, followed by one mean row per (value, method)
  std::vector<SweepSummary> summary;
};

class SweepError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline ScenarioConfig sweep_cell_config(const SweepSpec& spec, double value, std::uint64_t seed) {
  ScenarioConfig cfg = spec.fixed;
  cfg.seed = seed;
  if (spec.variable == SweepVariable::alpha) {
    cfg.alpha = value;
  } else {
    cfg.p_min_dbm = value;
  }
  return cfg;
}

namespace detail {

inline MetricStats stats_of(const std::vector<double>& xs) {
  MetricStats st;
  if (xs.empty()) return st;
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    st.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return st;
}

}  // namespace detail

/// Evaluates every (value, seed) cell for all requested methods. Rows are
/// ordered by (value, method, seed) with methods in canonical order, whatever
/// the order in `spec.methods` or the thread interleaving.
inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<Method> methods;
  for (Method m : kAllMethods) {
    if (std::find(spec.methods.begin(), spec.methods.end(), m) != spec.methods.end()) {
      methods.push_back(m);
    }
  }
  const std::size_t nv = spec.grid.size();
  const std::size_t ns = spec.seeds.size();
  const std::size_t nm = methods.size();

  // reports[(v * nm + m) * ns + s]
  std::vector<EvalReport> reports(nv * nm * ns);
  std::vector<std::string> errors(nv * ns);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t v = cell / ns;
    const std::size_t si = cell % ns;
    Method current = methods.front();
    try {
      const Scenario scenario = build_scenario(sweep_cell_config(spec, spec.grid[v], spec.seeds[si]));
      const ChannelSnapshot snap = draw_channel(scenario);
      const double reference = all_on(scenario, snap).total_power_w;
      for (std::size_t m = 0; m < nm; ++m) {
        current = methods[m];
        const SwitchDecision d = run_method(current, scenario, snap);
        reports[(v * nm + m) * ns + si] = evaluate(scenario, d, reference);
      }
    } catch (const std::exception& e) {
      errors[cell] = std::string(to_string(spec.variable)) + "=" + std::to_string(spec.grid[v]) +
                     " method=" + std::string(to_string(current)) +
                     " seed=" + std::to_string(spec.seeds[si]) + ": " + e.what();
    }
  };

  const std::size_t cells = nv * ns;
  const unsigned workers = std::max(1U, std::min<unsigned>(spec.threads, static_cast<unsigned>(cells)));
  if (workers == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < cells; c += workers) run_cell(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw SweepError("sweep cell failed: " + e);
  }

  SweepResult out;
  const std::string var(to_string(spec.variable));
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t m = 0; m < nm; ++m) {
      std::vector<double> power, served, offered, savings, outage, lam;
      for (std::size_t si = 0; si < ns; ++si) {
        const EvalReport& r = reports[(v * nm + m) * ns + si];
        out.rows.push_back(SweepRow{var, spec.grid[v], std::string(to_string(methods[m])),
                                    std::to_string(spec.seeds[si]), r.total_power_w,
                                    r.served_traffic_qos, r.offered_traffic, r.savings_pct,
                                    static_cast<double>(r.outage_count), r.lambda_m});
        power.push_back(r.total_power_w);
        served.push_back(r.served_traffic_qos);
        offered.push_back(r.offered_traffic);
        savings.push_back(r.savings_pct);
        outage.push_back(static_cast<double>(r.outage_count));
        lam.push_back(r.lambda_m);
      }
      SweepSummary sum{spec.grid[v],          methods[m],
                       detail::stats_of(power), detail::stats_of(served),
                       detail::stats_of(savings), detail::stats_of(outage),
                       detail::stats_of(lam)};
      out.rows.push_back(SweepRow{var, spec.grid[v], std::string(to_string(methods[m])), "mean",
                                  sum.total_power_w.mean, sum.served_traffic_qos.mean,
                                  detail::stats_of(offered).mean, sum.savings_pct.mean,
                                  sum.outage_count.mean, sum.lambda_m.mean});
      out.summary.push_back(sum);
    }
  }
  return out;
}

inline constexpr std::string_view kCsvHeader =
    "variable,value,method,seed,total_power_w,served_traffic_qos,offered_traffic,savings_pct,"
    "outage_count,lambda_m";

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string format_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.variable << ',' << format_number(r.value) << ',' << r.method << ',' << r.seed << ','
       << format_number(r.total_power_w) << ',' << format_number(r.served_traffic_qos) << ','
       << format_number(r.offered_traffic) << ',' << format_number(r.savings_pct) << ','
       << format_number(r.outage_count) << ',' << format_number(r.lambda_m) << '\n';
  }
  return os.str();
}

inline void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  f << format_csv(rows);
  f.flush();
  if (!f) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

inline std::vector<SweepRow> parse_csv_text(std::string_view text) {
  std::vector<SweepRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ConfigError("parse_csv: missing or unexpected header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 10) {
      throw ConfigError("parse_csv: line " + std::to_string(lineno) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    try {
      rows.push_back(SweepRow{f[0], std::stod(f[1]), f[2], f[3], std::stod(f[4]), std::stod(f[5]),
                              std::stod(f[6]), std::stod(f[7]), std::stod(f[8]), std::stod(f[9])});
    } catch (const std::logic_error&) {
      throw ConfigError("parse_csv: bad number on line " + std::to_string(lineno));
    }
  }
  return rows;
}

inline std::vector<SweepRow> parse_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("parse_csv: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv_text(ss.str());
}

inline std::vector<std::uint64_t> seed_range(std::size_t n, std::uint64_t first = 1) {
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t k = 0; k < n; ++k) seeds[k] = first + k;
  return seeds;
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_EXPERIMENTS_HPP
