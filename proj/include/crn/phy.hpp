// phy.hpp — physical-layer math: SINR, link validity, capacities and
// network utilities under the physical interference model.
//
// Everything here is a pure function of an immutable (topology, profile)
// pair. Interference sums always accumulate interferers in ascending link
// order; this is the canonical evaluation order for the whole library.

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "crn/scenario.hpp"

namespace crn {

// A link's play: OFF (no transmission) or a (channel, power level) pair.
struct Strategy {
  int channel = -1;
  int power_index = -1;  // index into Topology::power_levels(); -1 == OFF

  bool on() const { return power_index >= 0; }
  static Strategy off() { return Strategy{}; }
  static Strategy make(int channel, int power_index) { return Strategy{channel, power_index}; }
  bool operator==(const Strategy&) const = default;
};

using StrategyProfile = std::vector<Strategy>;

enum class CapacityKind { Continuous, Discrete, Binary };

// Capacity definition plus whether the SINR threshold gates utility.
// Discrete and Binary always enforce the threshold; Continuous may not
// (the no-threshold reference setting).
struct CapacityMode {
  CapacityKind kind = CapacityKind::Discrete;
  bool enforce_threshold = true;

  static CapacityMode cc_no_alpha() { return {CapacityKind::Continuous, false}; }
  static CapacityMode cc_alpha() { return {CapacityKind::Continuous, true}; }
  static CapacityMode dc_alpha() { return {CapacityKind::Discrete, true}; }
  static CapacityMode bc_alpha() { return {CapacityKind::Binary, true}; }
};

inline double transmit_power(const Topology& topo, const Strategy& s) {
  return s.on() ? topo.power_levels()[s.power_index] : 0.0;
}

// SINR of `link` under `profile`: received power
// over noise plus co-channel interference. OFF links have SINR 0.
inline double sinr(int link, const StrategyProfile& profile, const Topology& topo) {
  const Strategy& s = profile[link];
  if (!s.on()) return 0.0;
  const int n = topo.link_count();
  double interference = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == link) continue;
    const Strategy& sj = profile[j];
    if (sj.on() && sj.channel == s.channel)
      interference += transmit_power(topo, sj) * topo.gain(j, link);
  }
  return transmit_power(topo, s) * topo.gain(link, link) /
         (topo.config.noise_mw + interference);
}

inline bool is_valid(int link, const StrategyProfile& profile, const Topology& topo,
                     double alpha) {
  return profile[link].on() && sinr(link, profile, topo) >= alpha;
}

// Largest power-of-two modulation order achievable at the given SINR,
// clamped to [2, m_max]. Returns 0 when even binary modulation is not
// achievable (floor(sqrt(1 + sinr)) < 2).
inline int modulation_level(double sinr_linear, int m_max) {
  assert(sinr_linear >= 0.0);
  // anything this large saturates every realistic m_max; also keeps the
  // floor(sqrt(x)) conversion inside long long range
  const double x = std::min(1.0 + sinr_linear, 9.0e18);
  long long m = static_cast<long long>(std::floor(std::sqrt(x)));
  // guard against floating-point sqrt landing one off an exact square
  while ((m + 1) * (m + 1) <= x) ++m;
  while (m > 1 && static_cast<double>(m) * static_cast<double>(m) > x) --m;
  if (m < 2) return 0;
  int pow2 = 2;
  while (2LL * pow2 <= m && 2 * pow2 <= m_max) pow2 *= 2;
  return pow2;
}

// Capacity of a single link given its SINR. Does not apply the lambda
// validity gate except for Binary, whose capacity is the gate itself.
inline double capacity_from_sinr(double sinr_linear, double bandwidth, CapacityMode mode,
                                 double alpha, int m_max) {
  switch (mode.kind) {
    case CapacityKind::Continuous:
      return bandwidth * std::log2(1.0 + sinr_linear);
    case CapacityKind::Discrete: {
      const int m = modulation_level(sinr_linear, m_max);
      return m == 0 ? 0.0 : 2.0 * bandwidth * std::log2(static_cast<double>(m));
    }
    case CapacityKind::Binary:
      return sinr_linear >= alpha ? 1.0 : 0.0;
  }
  return 0.0;
}

inline double link_capacity(int link, const StrategyProfile& profile, const Topology& topo,
                            CapacityMode mode, double alpha) {
  const Strategy& s = profile[link];
  if (!s.on()) return 0.0;
  return capacity_from_sinr(sinr(link, profile, topo), topo.config.bandwidth(s.channel), mode,
                            alpha, topo.config.max_modulation);
}

// NU: sum of lambda_i * C_i. With the threshold enforced, links below alpha
// contribute 0; without it (the no-threshold continuous setting) every ON
// link contributes its capacity.
inline double network_utility(const StrategyProfile& profile, const Topology& topo,
                              CapacityMode mode, double alpha) {
  const int n = topo.link_count();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Strategy& s = profile[i];
    if (!s.on()) continue;
    const double g = sinr(i, profile, topo);
    if (mode.enforce_threshold && g < alpha) continue;
    total += capacity_from_sinr(g, topo.config.bandwidth(s.channel), mode, alpha,
                                topo.config.max_modulation);
  }
  return total;
}

// NU_val: as network_utility but counting only links meeting the threshold,
// regardless of whether the mode enforces it.
inline double network_utility_valid(const StrategyProfile& profile, const Topology& topo,
                                    CapacityMode mode, double alpha) {
  const int n = topo.link_count();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Strategy& s = profile[i];
    if (!s.on()) continue;
    const double g = sinr(i, profile, topo);
    if (g < alpha) continue;
    total += capacity_from_sinr(g, topo.config.bandwidth(s.channel), mode, alpha,
                                topo.config.max_modulation);
  }
  return total;
}

inline int valid_link_count(const StrategyProfile& profile, const Topology& topo, double alpha) {
  int count = 0;
  for (int i = 0; i < topo.link_count(); ++i)
    if (is_valid(i, profile, topo, alpha)) ++count;
  return count;
}

}  // namespace crn
