#ifndef HETNET_CS_SNAPSHOT_HPP
#define HETNET_CS_SNAPSHOT_HPP

// One realization of large-scale fading for every user, drawn once per
// (seed, step) and shared by all switching methods evaluated on it.

#include "hetnet_cs/channel.hpp"
#include "hetnet_cs/rng.hpp"
#include "hetnet_cs/scenario.hpp"
#include "hetnet_cs/units.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hetnet_cs {

struct UserLinks {
  channel::LinkBudget mbs_link;
  double offload_rx_dbm = 0.0;  // matched-filter power if served by the MBS
  double serving_rx_dbm = 0.0;  // received power from the home SBS
};

struct ChannelSnapshot {
  std::uint64_t step = 0;
  std::vector<UserLinks> users;
};

inline ChannelSnapshot draw_channel(const Scenario& s, Rng& rng, std::uint64_t step = 0) {
  const auto& cfg = s.config;
  ChannelSnapshot snap;
  snap.step = step;
  snap.users.reserve(s.users.size());
  for (const auto& u : s.users) {
    UserLinks links;
    const auto mbs_geom = channel::LinkGeometry::from_2d(
        distance(u.position, s.mbs.position), cfg.mbs_height_m, cfg.user_height_m, cfg.env_height_m);
    links.mbs_link = channel::combined_pathloss(mbs_geom, cfg.channel, cfg.mix_mode, rng);
    links.offload_rx_dbm = channel::mbs_offload_rx_power_dbm(
        s.mbs.profile.tx_power_w, cfg.supported_users, links.mbs_link.pl_db);

    const auto& home = s.sbs[u.home];
    const auto sbs_geom = channel::LinkGeometry::from_2d(
        distance(u.position, home.position), cfg.sbs_height_m, cfg.user_height_m, cfg.env_height_m);
    const double sbs_pl = channel::combined_pathloss_db(sbs_geom, cfg.channel, cfg.mix_mode, rng);
    links.serving_rx_dbm = channel::received_power_dbm(units::w_to_dbm(home.profile.tx_power_w),
                                                       cfg.sbs_gain_dbi, cfg.user_gain_dbi, sbs_pl);
    snap.users.push_back(links);
  }
  return snap;
}

/// Snapshot for time step `step` of the scenario's own seed.
inline ChannelSnapshot draw_channel(const Scenario& s, std::uint64_t step = 0) {
  Rng rng = make_rng(s.config.seed, Stream::channel, step);
  return draw_channel(s, rng, step);
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_SNAPSHOT_HPP
