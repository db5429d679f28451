#ifndef HETNET_CS_SCENARIO_IO_HPP
#define HETNET_CS_SCENARIO_IO_HPP

// JSON config loading and scenario serialization. Schema: docs/config.md.

#include "hetnet_cs/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace hetnet_cs {

/// Environment variable naming a config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "HETNET_CS_CONFIG";

namespace detail {

template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError("unknown config key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace detail

/// Overlays the keys present in `j` onto `base`. Missing keys keep their
/// value; unknown keys are an error.
inline ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig base = {}) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  detail::reject_unknown(
      j,
      {"area_m", "grid_side", "sbs_kind_cycle", "sbs_radius_m", "sbs_capacity", "mbs_capacity",
       "mbs_gain_dbi", "sbs_gain_dbi", "user_gain_dbi", "mbs_height_m", "sbs_height_m",
       "user_height_m", "env_height_m", "channel", "mix_mode", "alpha", "traffic_spread_m",
       "traffic_mean", "p_min_dbm", "n_antennas", "supported_users", "initial_mbs_load",
       "users_per_sbs", "seed", "profiles"},
      "root");
  ScenarioConfig c = std::move(base);
  using detail::read_key;
  read_key(j, "area_m", c.area_m);
  read_key(j, "grid_side", c.grid_side);
  if (auto it = j.find("sbs_kind_cycle"); it != j.end()) {
    c.sbs_kind_cycle.clear();
    for (const auto& k : *it) c.sbs_kind_cycle.push_back(power::parse_bs_kind(k.get<std::string>()));
  }
  read_key(j, "sbs_radius_m", c.sbs_radius_m);
  read_key(j, "sbs_capacity", c.sbs_capacity);
  read_key(j, "mbs_capacity", c.mbs_capacity);
  read_key(j, "mbs_gain_dbi", c.mbs_gain_dbi);
  read_key(j, "sbs_gain_dbi", c.sbs_gain_dbi);
  read_key(j, "user_gain_dbi", c.user_gain_dbi);
  read_key(j, "mbs_height_m", c.mbs_height_m);
  read_key(j, "sbs_height_m", c.sbs_height_m);
  read_key(j, "user_height_m", c.user_height_m);
  read_key(j, "env_height_m", c.env_height_m);
  if (auto it = j.find("channel"); it != j.end()) {
    detail::reject_unknown(*it, {"carrier_ghz", "speed_of_light", "sigma_los_db", "sigma_nlos_db"},
                           "channel");
    read_key(*it, "carrier_ghz", c.channel.carrier_ghz);
    read_key(*it, "speed_of_light", c.channel.speed_of_light);
    read_key(*it, "sigma_los_db", c.channel.sigma_los_db);
    read_key(*it, "sigma_nlos_db", c.channel.sigma_nlos_db);
  }
  if (auto it = j.find("mix_mode"); it != j.end()) {
    c.mix_mode = channel::parse_mix_mode(it->get<std::string>());
  }
  read_key(j, "alpha", c.alpha);
  read_key(j, "traffic_spread_m", c.traffic_spread_m);
  if (auto it = j.find("traffic_mean"); it != j.end()) {
    if (it->is_null()) {
      c.traffic_mean.reset();
    } else if (it->is_array() && it->size() == 2) {
      c.traffic_mean = Point{(*it)[0].get<double>(), (*it)[1].get<double>()};
    } else {
      throw ConfigError("config key 'traffic_mean' must be null or [x, y]");
    }
  }
  read_key(j, "p_min_dbm", c.p_min_dbm);
  read_key(j, "n_antennas", c.n_antennas);
  read_key(j, "supported_users", c.supported_users);
  read_key(j, "initial_mbs_load", c.initial_mbs_load);
  read_key(j, "users_per_sbs", c.users_per_sbs);
  read_key(j, "seed", c.seed);
  if (auto it = j.find("profiles"); it != j.end()) {
    for (auto p = it->begin(); p != it->end(); ++p) {
      const power::BsKind kind = power::parse_bs_kind(p.key());
      detail::reject_unknown(*p, {"efficiency", "tx_power_w", "operational_w", "sleep_w"},
                             "profiles." + p.key());
      for (auto& prof : c.profiles) {
        if (prof.kind != kind) continue;
        read_key(*p, "efficiency", prof.efficiency);
        read_key(*p, "tx_power_w", prof.tx_power_w);
        read_key(*p, "operational_w", prof.operational_w);
        read_key(*p, "sleep_w", prof.sleep_w);
      }
    }
  }
  c.validate();
  return c;
}

inline nlohmann::json config_to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["area_m"] = c.area_m;
  j["grid_side"] = c.grid_side;
  j["sbs_kind_cycle"] = nlohmann::json::array();
  for (auto k : c.sbs_kind_cycle) j["sbs_kind_cycle"].push_back(std::string(power::to_string(k)));
  j["sbs_radius_m"] = c.sbs_radius_m;
  j["sbs_capacity"] = c.sbs_capacity;
  j["mbs_capacity"] = c.mbs_capacity;
  j["mbs_gain_dbi"] = c.mbs_gain_dbi;
  j["sbs_gain_dbi"] = c.sbs_gain_dbi;
  j["user_gain_dbi"] = c.user_gain_dbi;
  j["mbs_height_m"] = c.mbs_height_m;
  j["sbs_height_m"] = c.sbs_height_m;
  j["user_height_m"] = c.user_height_m;
  j["env_height_m"] = c.env_height_m;
  j["channel"] = {{"carrier_ghz", c.channel.carrier_ghz},
                  {"speed_of_light", c.channel.speed_of_light},
                  {"sigma_los_db", c.channel.sigma_los_db},
                  {"sigma_nlos_db", c.channel.sigma_nlos_db}};
  j["mix_mode"] = std::string(channel::to_string(c.mix_mode));
  j["alpha"] = c.alpha;
  j["traffic_spread_m"] = c.traffic_spread_m;
  j["traffic_mean"] = c.traffic_mean ? nlohmann::json::array({c.traffic_mean->x, c.traffic_mean->y})
                                     : nlohmann::json(nullptr);
  j["p_min_dbm"] = c.p_min_dbm;
  j["n_antennas"] = c.n_antennas;
  j["supported_users"] = c.supported_users;
  j["initial_mbs_load"] = c.initial_mbs_load;
  j["users_per_sbs"] = c.users_per_sbs;
  j["seed"] = c.seed;
  nlohmann::json profiles = nlohmann::json::object();
  for (const auto& p : c.profiles) {
    profiles[std::string(power::to_string(p.kind))] = {{"efficiency", p.efficiency},
                                                       {"tx_power_w", p.tx_power_w},
                                                       {"operational_w", p.operational_w},
                                                       {"sleep_w", p.sleep_w}};
  }
  j["profiles"] = profiles;
  return j;
}

inline ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {}) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return config_from_json(j, std::move(base));
}

/// Full world state, for determinism checks and debugging dumps.
inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["config"] = config_to_json(s.config);
  j["mbs"] = {{"x", s.mbs.position.x}, {"y", s.mbs.position.y}, {"capacity", s.mbs.capacity}};
  j["sbs"] = nlohmann::json::array();
  for (const auto& c : s.sbs) {
    j["sbs"].push_back({{"id", c.id},
                        {"x", c.position.x},
                        {"y", c.position.y},
                        {"kind", std::string(power::to_string(c.kind))},
                        {"radius_m", c.radius_m},
                        {"capacity", c.capacity},
                        {"load", c.load}});
  }
  j["users"] = nlohmann::json::array();
  for (const auto& u : s.users) {
    j["users"].push_back({{"x", u.position.x}, {"y", u.position.y}, {"home", u.home}, {"load", u.load}});
  }
  return j;
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_SCENARIO_IO_HPP
