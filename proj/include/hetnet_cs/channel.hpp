#ifndef HETNET_CS_CHANNEL_HPP
#define HETNET_CS_CHANNEL_HPP

// Urban-macro path loss (3GPP-style LoS/NLoS mixture) and the asymptotic
// matched-filter received power used for offloading QoS checks.

#include "hetnet_cs/rng.hpp"
#include "hetnet_cs/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hetnet_cs::channel {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kMinDistance2d = 10.0;
inline constexpr double kMaxDistance2d = 5000.0;
inline constexpr double kLosCertainDistance = 18.0;

struct ChannelConstants {
  double carrier_ghz = 2.5;
  double speed_of_light = kSpeedOfLight;
  double sigma_los_db = 4.0;
  double sigma_nlos_db = 6.0;

  void validate() const {
    if (!(carrier_ghz > 0.0) || !(speed_of_light > 0.0)) {
      throw DomainError("ChannelConstants: carrier frequency and speed of light must be positive");
    }
    if (sigma_los_db < 0.0 || sigma_nlos_db < 0.0) {
      throw DomainError("ChannelConstants: shadow fading std must be non-negative");
    }
  }
};

struct LinkGeometry {
  double d2d = 0.0;
  double d3d = 0.0;
  double bs_height = 25.0;
  double user_height = 1.5;
  double env_height = 1.0;

  /// Builds a geometry from the horizontal distance and antenna heights.
  static LinkGeometry from_2d(double d2d, double bs_height, double user_height,
                              double env_height = 1.0) {
    if (d2d < 0.0) {
      throw DomainError("LinkGeometry: negative 2D distance");
    }
    if (!(bs_height > user_height) || !(user_height > 0.0)) {
      throw DomainError("LinkGeometry: require bs_height > user_height > 0");
    }
    const double dh = bs_height - user_height;
    return LinkGeometry{d2d, std::sqrt(d2d * d2d + dh * dh), bs_height, user_height, env_height};
  }
};

struct LinkBudget {
  LinkGeometry geometry;
  double p_los = 1.0;
  double pl_los_db = 0.0;   // without shadowing
  double pl_nlos_db = 0.0;  // without shadowing
  double shadow_los_db = 0.0;
  double shadow_nlos_db = 0.0;
  double pl_db = 0.0;       // combined, shadowing included
};

enum class MixMode { expected, sampled };

inline MixMode parse_mix_mode(std::string_view name) {
  if (name == "expected") return MixMode::expected;
  if (name == "sampled") return MixMode::sampled;
  throw ConfigError("unknown path-loss mixing mode '" + std::string(name) + "'");
}

inline std::string_view to_string(MixMode mode) {
  return mode == MixMode::expected ? "expected" : "sampled";
}

inline double los_probability(double d2d) {
  if (d2d < 0.0) {
    throw DomainError("los_probability: negative distance");
  }
  if (d2d <= kLosCertainDistance) {
    return 1.0;
  }
  const double near = kLosCertainDistance / d2d;
  const double p = near + std::exp(-d2d / 63.0) * (1.0 - near);
  return std::clamp(p, 0.0, 1.0);
}

inline double breakpoint_distance(double bs_height, double user_height, double env_height,
                                  double carrier_ghz, double speed_of_light = kSpeedOfLight) {
  const double hb = bs_height - env_height;
  const double hu = user_height - env_height;
  if (!(hb > 0.0) || !(hu > 0.0)) {
    throw DomainError("breakpoint_distance: effective antenna heights must be positive");
  }
  return 4.0 * hb * hu * (carrier_ghz * 1e9) / speed_of_light;
}

namespace detail {

// Clamp to the model's validity range: short links behave as 10 m, links
// beyond 5 km are outside the model entirely.
inline LinkGeometry clamp_geometry(const LinkGeometry& g) {
  if (g.d2d > kMaxDistance2d) {
    throw DomainError("path loss: 2D distance " + std::to_string(g.d2d) + " m exceeds 5 km");
  }
  if (g.d2d >= kMinDistance2d) {
    return g;
  }
  return LinkGeometry::from_2d(kMinDistance2d, g.bs_height, g.user_height, g.env_height);
}

}  // namespace detail

inline double pathloss_los_db(const LinkGeometry& geom, const ChannelConstants& consts,
                              double shadow_db = 0.0) {
  const LinkGeometry g = detail::clamp_geometry(geom);
  const double db = breakpoint_distance(g.bs_height, g.user_height, g.env_height,
                                        consts.carrier_ghz, consts.speed_of_light);
  const double freq_term = 20.0 * std::log10(consts.carrier_ghz);
  if (g.d2d <= db) {
    return 28.0 + 22.0 * std::log10(g.d3d) + freq_term + shadow_db;
  }
  const double dh = g.bs_height - g.user_height;
  return 28.0 + 40.0 * std::log10(g.d3d) + freq_term - 9.0 * std::log10(db * db + dh * dh) +
         shadow_db;
}

inline double pathloss_nlos_db(const LinkGeometry& geom, const ChannelConstants& consts,
                               double shadow_db = 0.0) {
  const LinkGeometry g = detail::clamp_geometry(geom);
  const double nlos = 13.54 + 39.08 * std::log10(g.d3d) + 20.0 * std::log10(consts.carrier_ghz) -
                      0.6 * (g.user_height - 1.5);
  return std::max(pathloss_los_db(g, consts), nlos) + shadow_db;
}

/// Full link budget. Both shadow draws (and the Bernoulli state in sampled
/// mode) are always consumed so the engine advances identically per link.
inline LinkBudget combined_pathloss(const LinkGeometry& geom, const ChannelConstants& consts,
                                    MixMode mode, Rng& rng) {
  std::normal_distribution<double> unit{0.0, 1.0};
  std::uniform_real_distribution<double> u01{0.0, 1.0};
  LinkBudget lb;
  lb.geometry = geom;
  lb.p_los = los_probability(geom.d2d);
  lb.pl_los_db = pathloss_los_db(geom, consts);
  lb.pl_nlos_db = pathloss_nlos_db(geom, consts);
  lb.shadow_los_db = consts.sigma_los_db * unit(rng);
  lb.shadow_nlos_db = consts.sigma_nlos_db * unit(rng);
  const double los = lb.pl_los_db + lb.shadow_los_db;
  const double nlos = lb.pl_nlos_db + lb.shadow_nlos_db;
  switch (mode) {
    case MixMode::expected:
      lb.pl_db = lb.p_los * los + (1.0 - lb.p_los) * nlos;
      break;
    case MixMode::sampled:
      lb.pl_db = u01(rng) < lb.p_los ? los : nlos;
      break;
  }
  return lb;
}

inline double combined_pathloss_db(const LinkGeometry& geom, const ChannelConstants& consts,
                                   MixMode mode, Rng& rng) {
  return combined_pathloss(geom, consts, mode, rng).pl_db;
}

/// Deterministic mixture with both shadow terms at zero.
inline double mean_pathloss_db(const LinkGeometry& geom, const ChannelConstants& consts) {
  const double p = los_probability(geom.d2d);
  return p * pathloss_los_db(geom, consts) + (1.0 - p) * pathloss_nlos_db(geom, consts);
}

inline double received_power_dbm(double tx_dbm, double tx_gain_dbi, double rx_gain_dbi,
                                 double pathloss_db) {
  return tx_dbm + tx_gain_dbi + rx_gain_dbi - pathloss_db;
}

/// Per-user received power from the MBS under matched-filter precoding in the
/// large-array limit: P_T / (U_M * PL). Returned in mW.
inline double mbs_offload_rx_power_mw(double tx_power_w, double supported_users,
                                      double pathloss_linear) {
  if (!(supported_users >= 1.0)) {
    throw DomainError("mbs_offload_rx_power: supported user count must be >= 1");
  }
  if (!(pathloss_linear > 0.0)) {
    throw DomainError("mbs_offload_rx_power: path loss must be positive");
  }
  return tx_power_w * 1e3 / (supported_users * pathloss_linear);
}

inline double mbs_offload_rx_power_dbm(double tx_power_w, double supported_users,
                                       double pathloss_db) {
  return units::mw_to_dbm(
      mbs_offload_rx_power_mw(tx_power_w, supported_users, units::db_to_linear(pathloss_db)));
}

using FadingVector = std::vector<std::complex<double>>;

/// Circularly-symmetric complex Gaussian, unit variance per component.
inline FadingVector sample_fading(std::size_t n_antennas, Rng& rng) {
  if (n_antennas == 0) {
    throw DomainError("sample_fading: antenna count must be >= 1");
  }
  std::normal_distribution<double> half{0.0, std::sqrt(0.5)};
  FadingVector f(n_antennas);
  for (auto& c : f) {
    const double re = half(rng);
    const double im = half(rng);
    c = {re, im};
  }
  return f;
}

/// f^H g / N: the normalized inner product whose asymptotic behavior
/// (0 off-diagonal, 1 on-diagonal) justifies matched-filter precoding.
inline std::complex<double> normalized_inner(const FadingVector& f, const FadingVector& g) {
  if (f.size() != g.size() || f.empty()) {
    throw DomainError("normalized_inner: size mismatch");
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t n = 0; n < f.size(); ++n) {
    acc += std::conj(f[n]) * g[n];
  }
  return acc / static_cast<double>(f.size());
}

}  // namespace hetnet_cs::channel

#endif  // HETNET_CS_CHANNEL_HPP
