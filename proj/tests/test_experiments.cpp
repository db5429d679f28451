#include "hetnet_cs/experiments.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace hetnet_cs {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hetnet_cs_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.variable = SweepVariable::alpha;
  spec.grid = {0.2, 0.6};
  spec.seeds = {1, 2, 3};
  return spec;
}

TEST(SweepSpec, Validation) {
  SweepSpec spec = small_spec();
  spec.grid = {0.5, 0.5};
  EXPECT_THROW(run_sweep(spec), ConfigError);
  spec.grid = {};
  EXPECT_THROW(run_sweep(spec), ConfigError);
  spec = small_spec();
  spec.seeds.clear();
  EXPECT_THROW(run_sweep(spec), ConfigError);
  EXPECT_THROW(parse_sweep_variable("rho"), ConfigError);
}

TEST(RunSweep, RowLayout) {
  const auto r = run_sweep(small_spec());
  ASSERT_EQ(r.rows.size(), 2U * 4U * (3U + 1U));
  EXPECT_EQ(r.rows[0].method, "all-on");
  EXPECT_EQ(r.rows[0].seed, "1");
  EXPECT_EQ(r.rows[3].seed, "mean");
  EXPECT_EQ(r.rows[4].method, "sorting");
  EXPECT_EQ(r.summary.size(), 8U);
}

TEST(RunSweep, SinglePointMatchesDirectCall) {
  SweepSpec spec;
  spec.variable = SweepVariable::p_min;
  spec.grid = {-75.0};
  spec.seeds = {9};
  spec.fixed.alpha = 0.4;
  spec.methods = {Method::proposed};
  const auto r = run_sweep(spec);
  ASSERT_EQ(r.rows.size(), 2U);

  const Scenario s = build_default_scenario(0.4, -75.0, 9);
  const auto snap = draw_channel(s);
  const auto d = proposed_cs(s, snap);
  const auto rep = evaluate(s, d, all_on(s, snap).total_power_w);
  EXPECT_EQ(r.rows[0].total_power_w, rep.total_power_w);
  EXPECT_EQ(r.rows[0].savings_pct, rep.savings_pct);
  EXPECT_EQ(r.rows[0].lambda_m, rep.lambda_m);
  EXPECT_EQ(r.rows[1].total_power_w, rep.total_power_w);
  EXPECT_EQ(r.summary[0].total_power_w.std, 0.0);
}

TEST(RunSweep, MethodOrderAndThreadingDoNotMatter) {
  SweepSpec a = small_spec();
  SweepSpec b = small_spec();
  b.methods = {Method::proposed, Method::sorting, Method::all_on, Method::no_qos};
  b.threads = 4;
  EXPECT_EQ(format_csv(run_sweep(a).rows), format_csv(run_sweep(b).rows));
}

TEST(RunSweep, SubsetOfMethodsSharesRealizations) {
  SweepSpec all = small_spec();
  SweepSpec one = small_spec();
  one.methods = {Method::no_qos};
  const auto ra = run_sweep(all);
  const auto ro = run_sweep(one);
  for (const auto& row : ro.rows) {
    bool found = false;
    for (const auto& full : ra.rows) {
      if (full.method == row.method && full.value == row.value && full.seed == row.seed) {
        EXPECT_EQ(full.total_power_w, row.total_power_w);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(RunSweep, FailingCellIsIdentified) {
  SweepSpec spec = small_spec();
  spec.grid = {0.5, 1.5};  // alpha 1.5 is rejected by the scenario builder
  try {
    run_sweep(spec);
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("alpha=1.5"), std::string::npos) << msg;
    EXPECT_NE(msg.find("seed="), std::string::npos) << msg;
    EXPECT_NE(msg.find("method="), std::string::npos) << msg;
  }
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  const auto path = temp_path("empty.csv");
  emit_csv({}, path);
  EXPECT_EQ(slurp(path), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(parse_csv(path).empty());
  std::remove(path.c_str());
}

TEST(Csv, RoundTripIsStable) {
  const auto path = temp_path("roundtrip.csv");
  const auto rows = run_sweep(small_spec()).rows;
  emit_csv(rows, path);
  const auto parsed = parse_csv(path);
  ASSERT_EQ(parsed.size(), rows.size());
  EXPECT_EQ(format_csv(parsed), slurp(path));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(parsed[k].method, rows[k].method);
    EXPECT_EQ(parsed[k].seed, rows[k].seed);
    EXPECT_NEAR(parsed[k].total_power_w, rows[k].total_power_w, 1e-5 * rows[k].total_power_w);
  }
  std::remove(path.c_str());
}

TEST(Csv, SixSignificantDigits) {
  EXPECT_EQ(format_number(2005.19999), "2005.2");
  EXPECT_EQ(format_number(-70.0), "-70");
  EXPECT_EQ(format_number(0.123456789), "0.123457");
}

TEST(Csv, IoFailureNamesPath) {
  try {
    emit_csv({}, "/nonexistent-dir/out.csv");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
  EXPECT_THROW(parse_csv_text("bogus\n"), ConfigError);
  EXPECT_THROW(parse_csv_text(std::string(kCsvHeader) + "\nalpha,1,x\n"), ConfigError);
}

TEST(Csv, ReproducibleBytes) {
  EXPECT_EQ(format_csv(run_sweep(small_spec()).rows), format_csv(run_sweep(small_spec()).rows));
}

TEST(Csv, FullAlphaSweepRowCount) {
  SweepSpec spec;
  for (int k = 1; k <= 9; ++k) spec.grid.push_back(k / 10.0);
  spec.seeds = seed_range(20);
  spec.threads = 4;
  EXPECT_EQ(run_sweep(spec).rows.size(), 4U * 9U * (20U + 1U));
}

}  // namespace
}  // namespace hetnet_cs
