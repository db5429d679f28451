#ifndef HETNET_CS_SCENARIO_HPP
#define HETNET_CS_SCENARIO_HPP

// Simulated world: one always-on MBS, a grid of heterogeneous SBSs, users
// dropped inside each small cell and a 2D Gaussian traffic field.

#include "hetnet_cs/channel.hpp"
#include "hetnet_cs/power.hpp"
#include "hetnet_cs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hetnet_cs {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct TrafficField {
  Point mean;
  double spread_x_m = 600.0;  // per-axis standard deviation
  double spread_y_m = 600.0;
  double alpha = 0.5;

  void validate() const {
    if (!(spread_x_m > 0.0) || !(spread_y_m > 0.0)) {
      throw DomainError("TrafficField: spread must be positive");
    }
  }
};

inline double gaussian_load(const Point& position, const TrafficField& field) {
  field.validate();
  const double dx = position.x - field.mean.x;
  const double dy = position.y - field.mean.y;
  const double expo = dx * dx / (2.0 * field.spread_x_m * field.spread_x_m) +
                      dy * dy / (2.0 * field.spread_y_m * field.spread_y_m);
  const double load = field.alpha * std::exp(-expo);
  return std::clamp(load, 0.0, 1.0);
}

/// Every tunable of a run. Defaults reproduce the reference HetNet setup.
struct ScenarioConfig {
  double area_m = 2000.0;
  std::size_t grid_side = 7;
  std::vector<power::BsKind> sbs_kind_cycle{power::BsKind::micro, power::BsKind::rrh,
                                            power::BsKind::pico, power::BsKind::femto};
  double sbs_radius_m = 50.0;
  double sbs_capacity = 5.0;
  double mbs_capacity = 20.0;

  double mbs_gain_dbi = 8.0;
  double sbs_gain_dbi = 0.0;
  double user_gain_dbi = 0.0;
  double mbs_height_m = 25.0;
  double sbs_height_m = 10.0;
  double user_height_m = 1.5;
  double env_height_m = 1.0;
  channel::ChannelConstants channel;
  channel::MixMode mix_mode = channel::MixMode::expected;

  double alpha = 0.5;
  double traffic_spread_m = 600.0;
  std::optional<Point> traffic_mean;  // area center when unset

  double p_min_dbm = -70.0;
  std::size_t n_antennas = 64;
  double supported_users = 20.0;  // U_M
  double initial_mbs_load = 0.2;  // lambda_M,0
  std::size_t users_per_sbs = 3;
  std::uint64_t seed = 1;

  std::vector<power::BaseStationProfile> profiles{power::kEarthProfiles.begin(),
                                                  power::kEarthProfiles.end()};

  const power::BaseStationProfile& profile(power::BsKind kind) const {
    for (const auto& p : profiles) {
      if (p.kind == kind) return p;
    }
    throw ConfigError("no power profile for kind '" + std::string(power::to_string(kind)) + "'");
  }

  Point center() const { return {area_m / 2.0, area_m / 2.0}; }

  void validate() const {
    if (!(area_m > 0.0) || grid_side == 0 || sbs_kind_cycle.empty()) {
      throw ConfigError("scenario: area, grid side and kind cycle must be non-empty");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw ConfigError("scenario: alpha must lie in (0, 1]");
    }
    if (!(sbs_radius_m > 0.0) || !(sbs_capacity > 0.0) || !(mbs_capacity > 0.0)) {
      throw ConfigError("scenario: radius and capacities must be positive");
    }
    if (!(initial_mbs_load >= 0.0 && initial_mbs_load <= 1.0)) {
      throw ConfigError("scenario: initial MBS load must lie in [0, 1]");
    }
    if (users_per_sbs == 0 || n_antennas == 0 || !(supported_users >= 1.0)) {
      throw ConfigError("scenario: users_per_sbs, n_antennas and U_M must be >= 1");
    }
    if (!(traffic_spread_m > 0.0)) {
      throw ConfigError("scenario: traffic spread must be positive");
    }
    channel.validate();
    for (const auto& p : profiles) p.validate();
  }
};

struct MacroCell {
  Point position;
  power::BaseStationProfile profile;
  double capacity = 20.0;
};

struct SmallCell {
  std::size_t id = 0;
  Point position;
  power::BsKind kind = power::BsKind::micro;
  power::BaseStationProfile profile;
  double radius_m = 50.0;
  double capacity = 5.0;
  double load = 0.0;  // lambda_j, aggregate of its users

  double capacity_ratio(double mbs_capacity) const { return capacity / mbs_capacity; }
};

struct User {
  Point position;
  std::size_t home = 0;
  double load = 0.0;  // lambda_{i,j}
};

/// Immutable world state for one (config, seed).
struct Scenario {
  ScenarioConfig config;
  MacroCell mbs;
  std::vector<SmallCell> sbs;
  std::vector<User> users;
  TrafficField traffic;

  std::size_t sbs_count() const { return sbs.size(); }

  std::vector<double> sbs_loads() const {
    std::vector<double> out;
    out.reserve(sbs.size());
    for (const auto& c : sbs) out.push_back(c.load);
    return out;
  }

  std::vector<double> capacity_ratios() const {
    std::vector<double> out;
    out.reserve(sbs.size());
    for (const auto& c : sbs) out.push_back(c.capacity_ratio(mbs.capacity));
    return out;
  }

  std::vector<power::BaseStationProfile> sbs_profiles() const {
    std::vector<power::BaseStationProfile> out;
    out.reserve(sbs.size());
    for (const auto& c : sbs) out.push_back(c.profile);
    return out;
  }

  /// Users grouped by home SBS (indices into `users`).
  std::vector<std::vector<std::size_t>> users_by_sbs() const {
    std::vector<std::vector<std::size_t>> out(sbs.size());
    for (std::size_t i = 0; i < users.size(); ++i) out[users[i].home].push_back(i);
    return out;
  }
};

/// Drops `users_per_sbs` users uniformly inside each SBS disc by rejection
/// sampling. The home load is split equally; the last user absorbs the
/// rounding residue so the shares sum to lambda_j exactly.
inline std::vector<User> place_users(const std::vector<SmallCell>& cells, std::size_t users_per_sbs,
                                     Rng& rng) {
  if (users_per_sbs == 0) {
    throw DomainError("place_users: users_per_sbs must be >= 1");
  }
  std::uniform_real_distribution<double> unit{-1.0, 1.0};
  std::vector<User> users;
  users.reserve(cells.size() * users_per_sbs);
  for (const auto& cell : cells) {
    const double share = cell.load / static_cast<double>(users_per_sbs);
    double assigned = 0.0;
    for (std::size_t k = 0; k < users_per_sbs; ++k) {
      double ux = 0.0;
      double uy = 0.0;
      do {
        ux = unit(rng);
        uy = unit(rng);
      } while (ux * ux + uy * uy > 1.0);
      User u;
      u.position = {cell.position.x + cell.radius_m * ux, cell.position.y + cell.radius_m * uy};
      u.home = cell.id;
      u.load = (k + 1 == users_per_sbs) ? cell.load - assigned : share;
      assigned += u.load;
      users.push_back(u);
    }
  }
  return users;
}

inline std::vector<User> place_users(const Scenario& scenario, std::size_t users_per_sbs, Rng& rng) {
  return place_users(scenario.sbs, users_per_sbs, rng);
}

inline Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario s;
  s.config = config;
  s.mbs.position = config.center();
  s.mbs.profile = config.profile(power::BsKind::macro);
  s.mbs.capacity = config.mbs_capacity;
  s.traffic.mean = config.traffic_mean.value_or(config.center());
  s.traffic.spread_x_m = config.traffic_spread_m;
  s.traffic.spread_y_m = config.traffic_spread_m;
  s.traffic.alpha = config.alpha;

  const std::size_t n = config.grid_side;
  const double spacing = config.area_m / static_cast<double>(n);
  s.sbs.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      SmallCell c;
      c.id = s.sbs.size();
      c.position = {(static_cast<double>(col) + 0.5) * spacing,
                    (static_cast<double>(row) + 0.5) * spacing};
      c.kind = config.sbs_kind_cycle[c.id % config.sbs_kind_cycle.size()];
      c.profile = config.profile(c.kind);
      c.radius_m = config.sbs_radius_m;
      c.capacity = config.sbs_capacity;
      c.load = gaussian_load(c.position, s.traffic);
      s.sbs.push_back(c);
    }
  }
  Rng rng = make_rng(config.seed, Stream::users);
  s.users = place_users(s.sbs, config.users_per_sbs, rng);
  return s;
}

inline Scenario build_default_scenario(double alpha, double p_min_dbm, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.alpha = alpha;
  cfg.p_min_dbm = p_min_dbm;
  cfg.seed = seed;
  return build_scenario(cfg);
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_SCENARIO_HPP
