#ifndef HETNET_CS_POWER_HPP
#define HETNET_CS_POWER_HPP

// EARTH-style load-dependent base-station power model and network totals.

#include "hetnet_cs/units.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetnet_cs::power {

enum class BsKind { macro, rrh, micro, pico, femto };

inline std::string_view to_string(BsKind kind) {
  switch (kind) {
    case BsKind::macro: return "macro";
    case BsKind::rrh: return "rrh";
    case BsKind::micro: return "micro";
    case BsKind::pico: return "pico";
    case BsKind::femto: return "femto";
  }
  return "?";
}

inline BsKind parse_bs_kind(std::string_view name) {
  for (BsKind k : {BsKind::macro, BsKind::rrh, BsKind::micro, BsKind::pico, BsKind::femto}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown base station kind '" + std::string(name) + "'");
}

struct BaseStationProfile {
  BsKind kind = BsKind::macro;
  double efficiency = 0.0;      // eta, PA efficiency factor
  double tx_power_w = 0.0;      // P_T
  double operational_w = 0.0;   // P_O
  double sleep_w = 0.0;         // P_S

  void validate() const {
    if (!(operational_w > sleep_w) || !(sleep_w > 0.0) || !(efficiency > 0.0) ||
        !(tx_power_w > 0.0)) {
      throw DomainError("BaseStationProfile '" + std::string(to_string(kind)) +
                        "': require P_O > P_S > 0, eta > 0, P_T > 0");
    }
  }
};

/// Built-in EARTH profile table, one row per BsKind in declaration order.
inline constexpr std::array<BaseStationProfile, 5> kEarthProfiles{{
    {BsKind::macro, 4.7, 20.0, 130.0, 75.0},
    {BsKind::rrh, 2.8, 20.0, 84.0, 56.0},
    {BsKind::micro, 2.6, 6.3, 56.0, 39.0},
    {BsKind::pico, 4.0, 0.13, 6.8, 4.3},
    {BsKind::femto, 8.0, 0.05, 4.8, 2.9},
}};

constexpr const BaseStationProfile& earth_profile(BsKind kind) {
  return kEarthProfiles[static_cast<std::size_t>(kind)];
}

inline void check_load(double load, const char* what) {
  if (!(load >= 0.0 && load <= 1.0)) {
    throw DomainError(std::string(what) + ": load factor " + std::to_string(load) +
                      " outside [0, 1]");
  }
}

inline double bs_power_w(const BaseStationProfile& profile, double load, bool active) {
  check_load(load, "bs_power_w");
  if (!active) {
    return profile.sleep_w;
  }
  return profile.operational_w + profile.efficiency * load * profile.tx_power_w;
}

/// delta: 1 = SBS on, 0 = SBS asleep with its users offloaded to the MBS.
using ActivityVector = std::vector<std::uint8_t>;

struct LoadVector {
  std::vector<double> sbs;
  double mbs = 0.0;
};

/// Total instantaneous power. The MBS never sleeps; `loads.mbs` must already
/// include any offloaded SBS traffic (see mbs_load).
inline double network_power_w(std::span<const std::uint8_t> active, const LoadVector& loads,
                              const BaseStationProfile& mbs_profile,
                              std::span<const BaseStationProfile> sbs_profiles) {
  if (active.size() != loads.sbs.size() || active.size() != sbs_profiles.size()) {
    throw DomainError("network_power_w: dimension mismatch between delta, loads and profiles");
  }
  double total = bs_power_w(mbs_profile, loads.mbs, true);
  for (std::size_t j = 0; j < active.size(); ++j) {
    total += bs_power_w(sbs_profiles[j], loads.sbs[j], active[j] != 0);
  }
  return total;
}

/// MBS load after offloading every SBS with active[j] == 0.
inline double mbs_load(std::span<const std::uint8_t> active, double initial_mbs_load,
                       std::span<const double> sbs_loads, std::span<const double> capacity_ratio) {
  if (active.size() != sbs_loads.size() || active.size() != capacity_ratio.size()) {
    throw DomainError("mbs_load: dimension mismatch");
  }
  check_load(initial_mbs_load, "mbs_load");
  double load = initial_mbs_load;
  for (std::size_t j = 0; j < active.size(); ++j) {
    if (!(capacity_ratio[j] > 0.0)) {
      throw DomainError("mbs_load: capacity ratio must be positive");
    }
    if (!active[j]) {
      load += sbs_loads[j] * capacity_ratio[j];
    }
  }
  return load;
}

}  // namespace hetnet_cs::power

#endif  // HETNET_CS_POWER_HPP
