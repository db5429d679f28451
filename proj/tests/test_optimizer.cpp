#include "hetnet_cs/optimizer.hpp"
#include "hetnet_cs/baselines.hpp"
#include "hetnet_cs/verify.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

namespace hetnet_cs {
namespace {

SwitchInstance make_instance(std::vector<SwitchItem> items, double capacity, double base = 100.0) {
  SwitchInstance inst;
  inst.items = std::move(items);
  inst.capacity = capacity;
  inst.initial_mbs_load = 1.0 - capacity;
  inst.base_power_w = base;
  return inst;
}

TEST(BuildInstance, ZeroLoadSavingsAreCircuitDifferences) {
  // alpha is tiny but non-zero; zero the loads by hand.
  Scenario s = build_default_scenario(0.5, -70.0, 1);
  for (auto& c : s.sbs) c.load = 0.0;
  const auto inst = build_instance(s, draw_channel(s));
  for (std::size_t j = 0; j < s.sbs_count(); ++j) {
    EXPECT_DOUBLE_EQ(inst.items[j].saving_w, s.sbs[j].profile.operational_w - s.sbs[j].profile.sleep_w);
    EXPECT_EQ(inst.items[j].weight, 0.0);
  }
  EXPECT_DOUBLE_EQ(inst.capacity, 0.8);
}

TEST(BuildInstance, HalfLoadedMicroSaving) {
  Scenario s = build_default_scenario(0.5, -70.0, 1);
  ASSERT_EQ(s.sbs[0].kind, power::BsKind::micro);
  s.sbs[0].load = 0.5;
  const auto inst = build_instance(s, draw_channel(s));
  // (56 + 2.6*0.5*6.3 - 39) - 4.7*20*0.5*0.25
  EXPECT_NEAR(inst.items[0].saving_w, 13.44, 1e-9);
  EXPECT_DOUBLE_EQ(inst.items[0].weight, 0.125);
}

TEST(BuildInstance, DistantUserForcesItsSbsOn) {
  Scenario s = build_default_scenario(0.5, -70.0, 1);
  const std::size_t home = s.users[0].home;
  s.users[0].position = {s.mbs.position.x + 2000.0, s.mbs.position.y};
  // Oracle: mean path loss at 2 km evaluated longhand, ~150.2 dB, so the
  // offload power sits ~50 dB (over 8 NLoS sigmas) below -70 dBm.
  const double d3 = std::hypot(2000.0, 23.5);
  const double db = 4.0 * 24.0 * 0.5 * 2.5e9 / 299792458.0;
  const double los = 28.0 + 40.0 * std::log10(d3) + 20.0 * std::log10(2.5) -
                     9.0 * std::log10(db * db + 23.5 * 23.5);
  const double nlos = std::max(los, 13.54 + 39.08 * std::log10(d3) + 20.0 * std::log10(2.5));
  const double p = 18.0 / 2000.0 + std::exp(-2000.0 / 63.0) * (1.0 - 18.0 / 2000.0);
  const double mean_rx = 10.0 * std::log10(20.0 * 1e3 / 20.0) - (p * los + (1 - p) * nlos);
  EXPECT_LT(mean_rx, -70.0 - 8.0 * 6.0);

  const auto snap = draw_channel(s);
  EXPECT_LT(snap.users[0].offload_rx_dbm, -70.0);
  EXPECT_TRUE(build_instance(s, snap).items[home].forced_on);
}

TEST(BuildInstance, MissingChannelDataIsPreconditionError) {
  const Scenario s = build_default_scenario(0.5, -70.0, 1);
  auto snap = draw_channel(s);
  snap.users.pop_back();
  EXPECT_THROW(build_instance(s, snap), PreconditionError);
}

TEST(SolveExact, NonPositiveSavingsKeepEverythingOn) {
  const auto inst = make_instance({{-1.0, 0.1, false}, {0.0, 0.0, false}, {-5.0, 0.2, false}}, 0.8);
  const auto d = solve_exact(inst);
  EXPECT_EQ(d.delta, (power::ActivityVector{1, 1, 1}));
  EXPECT_DOUBLE_EQ(d.total_power_w, inst.base_power_w);
}

TEST(SolveExact, ZeroCapacityNothingFits) {
  const auto inst = make_instance({{5.0, 0.1, false}, {7.0, 0.05, false}}, 0.0);
  EXPECT_EQ(solve_exact(inst).delta, (power::ActivityVector{1, 1}));
}

TEST(SolveExact, NegativeCapacityIsInfeasible) {
  const auto inst = make_instance({{5.0, 0.1, false}}, -0.1);
  EXPECT_THROW(solve_exact(inst), InfeasibleError);
  EXPECT_THROW(solve_bruteforce(inst), InfeasibleError);
}

TEST(SolveExact, ForcedItemsStayOn) {
  const auto inst = make_instance({{50.0, 0.0, true}, {1.0, 0.1, false}}, 1.0);
  EXPECT_EQ(solve_exact(inst).delta, (power::ActivityVector{1, 0}));
}

TEST(SolveExact, ZeroWeightPositiveSavingAlwaysOff) {
  const auto inst = make_instance({{0.5, 0.0, false}, {9.0, 0.5, false}, {8.0, 0.5, false}}, 0.5);
  const auto d = solve_exact(inst);
  EXPECT_EQ(d.delta, (power::ActivityVector{0, 0, 1}));
  EXPECT_DOUBLE_EQ(d.total_power_w, 100.0 - 9.5);
}

TEST(SolveExact, RatioGreedyIsNotOptimal) {
  // Greedy by ratio takes item 0 (ratio 11) and then cannot fit item 1.
  const auto inst = make_instance({{11.0, 0.1, false}, {50.0, 0.5, false}, {49.0, 0.5, false}}, 1.0);
  const auto d = solve_exact(inst);
  EXPECT_EQ(d.delta, (power::ActivityVector{1, 0, 0}));
  EXPECT_DOUBLE_EQ(d.total_power_w, solve_bruteforce(inst).total_power_w);
}

TEST(SolveBruteforce, SingleItemCases) {
  EXPECT_EQ(solve_bruteforce(make_instance({{3.0, 0.2, false}}, 0.5)).delta, power::ActivityVector{0});
  EXPECT_EQ(solve_bruteforce(make_instance({{300.0, 0.2, true}}, 0.5)).delta, power::ActivityVector{1});
}

TEST(SolveBruteforce, TwoItemsThatFitOnlyAlone) {
  const auto inst = make_instance({{3.0, 0.4, false}, {4.0, 0.4, false}}, 0.5);
  EXPECT_EQ(solve_bruteforce(inst).delta, (power::ActivityVector{1, 0}));
  EXPECT_EQ(solve_exact(inst).delta, (power::ActivityVector{1, 0}));
}

TEST(SolveBruteforce, TieBreaksTowardFewerOffThenLowestIndex) {
  // {0} and {1,2} both save 4.0 exactly; prefer the single item.
  const auto a = make_instance({{4.0, 0.3, false}, {2.0, 0.1, false}, {2.0, 0.1, false}}, 0.3);
  EXPECT_EQ(solve_bruteforce(a).delta, (power::ActivityVector{0, 1, 1}));
  // Two identical items, room for one: lowest index goes off.
  const auto b = make_instance({{4.0, 0.3, false}, {4.0, 0.3, false}}, 0.3);
  EXPECT_EQ(solve_bruteforce(b).delta, (power::ActivityVector{0, 1}));
  EXPECT_EQ(solve_exact(b).delta, (power::ActivityVector{0, 1}));
}

TEST(SolveBruteforce, SizeGuard) {
  SwitchInstance inst = make_instance(std::vector<SwitchItem>(21, SwitchItem{1.0, 0.01, false}), 1.0);
  EXPECT_THROW(solve_bruteforce(inst), SizeGuardError);
  EXPECT_NO_THROW(solve_exact(inst));
}

TEST(SolveExact, MatchesOracleOnRandomInstances) {
  Rng rng = make_rng(7, Stream::instances);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 12);
    const auto exact = solve_exact(inst);
    const auto oracle = solve_bruteforce(inst);
    ASSERT_NEAR(exact.total_power_w, oracle.total_power_w, 1e-9) << "trial " << trial;
    ASSERT_TRUE(is_feasible(inst, exact.delta));
    EXPECT_LE(exact.lambda_m, 1.0);
  }
}

TEST(SolveExact, MatchesOracleUpTo16Items) {
  Rng rng = make_rng(8, Stream::instances);
  std::uniform_int_distribution<std::size_t> size{1, 16};
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, size(rng));
    ASSERT_NEAR(solve_exact(inst).total_power_w, solve_bruteforce(inst).total_power_w, 1e-9);
  }
}

TEST(SolveExact, DecisionPowerRoundTripsThroughNetworkModel) {
  for (std::uint64_t seed : {1U, 2U, 3U}) {
    const Scenario s = build_default_scenario(0.4, -200.0, seed);
    const auto snap = draw_channel(s);
    const auto inst = build_instance(s, snap);
    const auto raw = solve_exact(inst);
    const auto full = evaluate_decision(s, snap, raw.delta);
    EXPECT_NEAR(raw.total_power_w, full.total_power_w, 1e-9);
    EXPECT_NEAR(raw.lambda_m, full.lambda_m, 1e-12);
  }
}

TEST(SolveExact, Full49SbsScenarioIsFast) {
  const Scenario s = build_default_scenario(0.5, -200.0, 1);
  const auto snap = draw_channel(s);
  const auto start = std::chrono::steady_clock::now();
  BranchAndBoundStats stats;
  const auto d = solve_exact(build_instance(s, snap), &stats);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 1.0);
  EXPECT_GT(d.off_count(), 0U);
}

TEST(ProposedCs, NearZeroLoadGenerousThreshold) {
  const Scenario s = build_default_scenario(1e-6, -200.0, 4);
  const auto snap = draw_channel(s);
  const auto d = proposed_cs(s, snap);
  // Every SBS has positive saving at (almost) zero coupling cost and fits.
  EXPECT_EQ(d.off_count(), s.sbs_count());
  EXPECT_TRUE(d.outage_sbs.empty());
}

TEST(ProposedCs, UnreachableThresholdKeepsAllOn) {
  const Scenario s = build_default_scenario(0.3, std::numeric_limits<double>::infinity(), 4);
  const auto d = proposed_cs(s, draw_channel(s));
  EXPECT_EQ(d.off_count(), 0U);
  EXPECT_DOUBLE_EQ(d.total_power_w, all_on(s).total_power_w);
}

TEST(ProposedCs, RngOverloadUsesGivenEngine) {
  const Scenario s = build_default_scenario(0.5, -70.0, 4);
  Rng a(77), b(77);
  EXPECT_EQ(proposed_cs(s, a).delta, proposed_cs(s, draw_channel(s, b)).delta);
}

TEST(ProposedCs, MatchesOracleOn16SbsSubsample) {
  const Scenario s = build_default_scenario(0.5, -70.0, 11);
  const auto snap = draw_channel(s);
  const auto full = build_instance(s, snap);
  SwitchInstance sub = full;
  sub.items.clear();
  for (std::size_t j = 0; j < 49; j += 3) sub.items.push_back(full.items[j]);
  ASSERT_EQ(sub.items.size(), 17U);
  sub.items.pop_back();
  EXPECT_NEAR(solve_exact(sub).total_power_w, solve_bruteforce(sub).total_power_w, 1e-9);
}

TEST(ProposedCs, PowerNonDecreasingInThreshold) {
  for (std::uint64_t seed : {1U, 2U, 3U, 4U}) {
    double prev = 0.0;
    for (double pmin = -200.0; pmin <= -40.0; pmin += 2.5) {
      const Scenario s = build_default_scenario(0.5, pmin, seed);
      const double p = proposed_cs(s, draw_channel(s)).total_power_w;
      EXPECT_GE(p, prev - 1e-9) << "seed " << seed << " pmin " << pmin;
      prev = p;
    }
  }
}

}  // namespace
}  // namespace hetnet_cs
