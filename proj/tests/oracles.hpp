// oracles.hpp — test-only reference implementations, independent of the
// library's evaluation path (no PlayerView caching; plain loops per
// candidate). Conventions mirrored from the library contract: interference
// accumulates over opponents in ascending link order, and the acting link's
// candidate term is appended last when evaluating other links.

#pragma once

#include <vector>

#include "crn/games.hpp"

namespace crn_test {

using namespace crn;

inline double power_of(const Topology& topo, const Strategy& s) {
  return s.on() ? topo.power_levels()[s.power_index] : 0.0;
}

inline double oracle_sinr_own(int link, const Strategy& c, const StrategyProfile& profile,
                              const Topology& topo) {
  if (!c.on()) return 0.0;
  double intf = 0.0;
  for (int j = 0; j < topo.link_count(); ++j) {
    if (j == link) continue;
    if (profile[j].on() && profile[j].channel == c.channel)
      intf += power_of(topo, profile[j]) * topo.gain(j, link);
  }
  return power_of(topo, c) * topo.gain(link, link) / (topo.config.noise_mw + intf);
}

inline double oracle_gated_cap(double s, double w, const GameSpec& spec, const Topology& topo) {
  if (spec.capacity.enforce_threshold && s < spec.alpha) return 0.0;
  return capacity_from_sinr(s, w, spec.capacity, spec.alpha, topo.config.max_modulation);
}

inline double oracle_utility(int link, const Strategy& c, const StrategyProfile& profile,
                             const Topology& topo, const GameSpec& spec) {
  const double s = oracle_sinr_own(link, c, profile, topo);
  switch (spec.info) {
    case InfoModel::Local: {
      if (!c.on()) return 0.0;
      if (spec.capacity.enforce_threshold && s < spec.alpha) return -1.0;
      double u = capacity_from_sinr(s, topo.config.bandwidth(c.channel), spec.capacity,
                                    spec.alpha, topo.config.max_modulation);
      if (spec.power_correction)
        u += topo.config.bandwidth(c.channel) *
             (1.0 - power_of(topo, c) / topo.config.p_max_mw);
      return u;
    }
    case InfoModel::PotentialIdentical: {
      StrategyProfile deviated = profile;
      deviated[link] = c;
      return network_utility(deviated, topo, spec.capacity, spec.alpha);
    }
    case InfoModel::PotentialMarginal: {
      const double own =
          c.on() ? oracle_gated_cap(s, topo.config.bandwidth(c.channel), spec, topo) : 0.0;
      double base = 0.0, with = 0.0;
      for (int j = 0; j < topo.link_count(); ++j) {
        if (j == link || !profile[j].on()) continue;
        double intf = 0.0;
        for (int k = 0; k < topo.link_count(); ++k) {
          if (k == j || k == link) continue;
          if (profile[k].on() && profile[k].channel == profile[j].channel)
            intf += power_of(topo, profile[k]) * topo.gain(k, j);
        }
        const double w = topo.config.bandwidth(profile[j].channel);
        const double s_base =
            power_of(topo, profile[j]) * topo.gain(j, j) / (topo.config.noise_mw + intf);
        base += oracle_gated_cap(s_base, w, spec, topo);
        double intf_with = intf;
        if (c.on() && profile[j].channel == c.channel)
          intf_with += power_of(topo, c) * topo.gain(link, j);
        const double s_with =
            power_of(topo, profile[j]) * topo.gain(j, j) / (topo.config.noise_mw + intf_with);
        with += oracle_gated_cap(s_with, w, spec, topo);
      }
      return own - (base - with);
    }
  }
  return 0.0;
}

// Exhaustive per-player argmax with the documented tie keys: stay if the
// current strategy attains the maximum utility; otherwise potential players
// prefer the higher own achieved capacity among tied strategies, and
// enumeration order (earliest channel, lowest power) decides the rest.
inline Strategy oracle_best_response(int link, const StrategyProfile& profile,
                                     const Topology& topo, const GameSpec& spec) {
  const auto strategies = enumerate_strategies(link, topo);
  double best = -1e300;
  double best_cap = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    const Strategy& c = strategies[k];
    const double u = oracle_utility(link, c, profile, topo, spec);
    const double s = oracle_sinr_own(link, c, profile, topo);
    const double cap =
        c.on() ? oracle_gated_cap(s, topo.config.bandwidth(c.channel), spec, topo) : 0.0;
    if (u > best || (spec.info != InfoModel::Local && u == best && cap > best_cap)) {
      best = u;
      best_cap = cap;
      best_idx = k;
    }
  }
  if (oracle_utility(link, profile[link], profile, topo, spec) == best) return profile[link];
  return strategies[best_idx];
}

}  // namespace crn_test
