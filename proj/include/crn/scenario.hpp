// scenario.hpp — network instance generation and physical parameters.
//
// A Topology is immutable once built and holds everything the rest of the
// library needs: per-link channel gains, per-link channel availability and
// the generating configuration (noise, power grid, bandwidths, threshold).
// Topologies come either from random generation (positional) or from an
// explicit gain matrix (synthetic, used for hand-built fixtures).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "crn/rng.hpp"
#include "crn/units.hpp"

namespace crn {

struct ScenarioConfig {
  double area_side = 2400.0;       // meters
  int node_count = 200;
  int link_count = 50;             // N, the number of players
  int channel_count = 10;          // F
  double region_side = 100.0;      // meters; availability granularity
  int avail_min = 3;               // channels sensed available per region
  int avail_max = 8;
  double p_max_mw = 100.0;         // 20 dBm
  int power_levels = 16;           // Q positive levels; OFF is separate
  double path_loss_exponent = 4.0; // gamma
  double sinr_threshold = 10.0;    // alpha, linear (10 dB)
  double noise_mw = 2.5703957827688645e-9;  // -85.9 dBm
  int max_modulation = 256;        // M_max
  std::vector<double> channel_bandwidths;   // w_f; empty means all 1.0
  double max_link_distance = 250.0;         // meters
  std::uint64_t rng_seed = 1;

  double bandwidth(int channel) const {
    return channel_bandwidths.empty() ? 1.0 : channel_bandwidths.at(channel);
  }

  void validate() const {
    if (area_side <= 0.0) throw std::invalid_argument("area_side must be > 0");
    if (node_count < 2) throw std::invalid_argument("node_count must be >= 2");
    if (link_count < 1) throw std::invalid_argument("link_count must be >= 1");
    if (channel_count < 1) throw std::invalid_argument("channel_count must be >= 1");
    if (region_side <= 0.0) throw std::invalid_argument("region_side must be > 0");
    if (avail_min < 1 || avail_min > avail_max || avail_max > channel_count)
      throw std::invalid_argument("need 0 < avail_min <= avail_max <= channel_count");
    if (p_max_mw <= 0.0) throw std::invalid_argument("p_max_mw must be > 0");
    if (power_levels < 2) throw std::invalid_argument("power_levels must be >= 2");
    if (path_loss_exponent <= 0.0) throw std::invalid_argument("path_loss_exponent must be > 0");
    if (sinr_threshold <= 1.0) throw std::invalid_argument("sinr_threshold must be > 1 (linear)");
    if (noise_mw <= 0.0) throw std::invalid_argument("noise_mw must be > 0");
    if (max_modulation < 2) throw std::invalid_argument("max_modulation must be >= 2");
    if (!channel_bandwidths.empty() &&
        static_cast<int>(channel_bandwidths.size()) != channel_count)
      throw std::invalid_argument("channel_bandwidths size must equal channel_count");
    for (double w : channel_bandwidths)
      if (w <= 0.0) throw std::invalid_argument("channel bandwidths must be > 0");
    if (max_link_distance <= 0.0) throw std::invalid_argument("max_link_distance must be > 0");
  }
};

// Free-space style gain: distance^(-gamma).
inline double channel_gain(double distance, double gamma) {
  if (distance <= 0.0) throw std::domain_error("channel_gain: distance must be > 0");
  return std::pow(distance, -gamma);
}

// The Q strictly positive transmit levels k * P_max / Q, k = 1..Q.
// The OFF state (p = 0) is a distinguished strategy, not a level.
inline std::vector<double> make_power_levels(const ScenarioConfig& config) {
  if (config.power_levels < 2) throw std::invalid_argument("power_levels must be >= 2");
  std::vector<double> levels(config.power_levels);
  for (int k = 1; k <= config.power_levels; ++k)
    levels[k - 1] = static_cast<double>(k) * config.p_max_mw /
                    static_cast<double>(config.power_levels);
  return levels;
}

struct LinkEndpoints {
  int tx = -1;
  int rx = -1;
};

struct Topology {
  std::vector<std::array<double, 2>> positions;  // per node; empty if synthetic
  std::vector<LinkEndpoints> links;              // per link; {-1,-1} if synthetic
  std::vector<double> gains;                     // row-major N x N, gains[i*N+j] = tx_i -> rx_j
  std::vector<std::vector<int>> availability;    // per link, sorted channel indices
  ScenarioConfig config;
  bool synthetic = false;

  int link_count() const { return static_cast<int>(availability.size()); }

  double gain(int tx_link, int rx_link) const {
    return gains[static_cast<std::size_t>(tx_link) * link_count() + rx_link];
  }

  const std::vector<double>& power_levels() const { return power_levels_; }

  bool channel_available(int link, int channel) const {
    const auto& a = availability[link];
    return std::binary_search(a.begin(), a.end(), channel);
  }

  void finalize() {  // call after fields are set
    power_levels_ = make_power_levels(config);
  }

 private:
  std::vector<double> power_levels_;
};

namespace detail {

inline double node_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

inline std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// Minimum node separation enforced at placement; d^(-gamma) diverges at 0.
inline constexpr double kMinNodeSeparation = 1.0;

// Deterministic instance generation: node placement, per-region channel
// availability, link sampling and the full link-to-link gain matrix.
// A link's availability is the intersection of its transmitter's and
// receiver's region sets; links with an empty intersection are resampled.
inline Topology generate_topology(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  Topology topo;
  topo.config = config;
  topo.config.rng_seed = seed;

  // Node placement with minimum separation.
  constexpr int kPlacementRetries = 10000;
  topo.positions.reserve(config.node_count);
  for (int n = 0; n < config.node_count; ++n) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      const std::array<double, 2> pos = {rng.uniform(0.0, config.area_side),
                                         rng.uniform(0.0, config.area_side)};
      placed = true;
      for (const auto& other : topo.positions) {
        if (detail::node_distance(pos, other) < kMinNodeSeparation) {
          placed = false;
          break;
        }
      }
      if (placed) topo.positions.push_back(pos);
    }
    if (!placed)
      throw std::runtime_error("generate_topology: could not place nodes with minimum separation");
  }

  // Per-region availability. Regions form a grid of region_side cells.
  const int cells_per_side =
      static_cast<int>(std::ceil(config.area_side / config.region_side));
  std::vector<std::vector<int>> region_channels(
      static_cast<std::size_t>(cells_per_side) * cells_per_side);
  for (auto& cell : region_channels) {
    const int size = config.avail_min + rng.next_int(config.avail_max - config.avail_min + 1);
    cell = rng.sample_without_replacement(config.channel_count, size);
  }
  const auto region_of = [&](int node) {
    const int cx = std::min(cells_per_side - 1,
                            static_cast<int>(topo.positions[node][0] / config.region_side));
    const int cy = std::min(cells_per_side - 1,
                            static_cast<int>(topo.positions[node][1] / config.region_side));
    return static_cast<std::size_t>(cy) * cells_per_side + cx;
  };

  // Link sampling: tx uniform, rx uniform among in-range nodes. Nodes may
  // appear in any number of links.
  constexpr int kLinkRetries = 10000;
  std::vector<int> in_range;
  for (int l = 0; l < config.link_count; ++l) {
    bool made = false;
    for (int attempt = 0; attempt < kLinkRetries && !made; ++attempt) {
      const int tx = rng.next_int(config.node_count);
      in_range.clear();
      for (int n = 0; n < config.node_count; ++n) {
        if (n == tx) continue;
        if (detail::node_distance(topo.positions[tx], topo.positions[n]) <=
            config.max_link_distance)
          in_range.push_back(n);
      }
      if (in_range.empty()) continue;
      const int rx = in_range[rng.next_int(static_cast<int>(in_range.size()))];
      auto avail = detail::intersect_sorted(region_channels[region_of(tx)],
                                            region_channels[region_of(rx)]);
      if (avail.empty()) continue;
      topo.links.push_back({tx, rx});
      topo.availability.push_back(std::move(avail));
      made = true;
    }
    if (!made)
      throw std::runtime_error("generate_topology: could not place link within retry budget");
  }

  // Gain matrix over links. Distances are clamped to the minimum node
  // separation so that a node acting as transmitter of one link and
  // receiver of another (distance 0) yields a finite gain.
  const int n_links = config.link_count;
  topo.gains.resize(static_cast<std::size_t>(n_links) * n_links);
  for (int i = 0; i < n_links; ++i) {
    for (int j = 0; j < n_links; ++j) {
      const double d = detail::node_distance(topo.positions[topo.links[i].tx],
                                             topo.positions[topo.links[j].rx]);
      topo.gains[static_cast<std::size_t>(i) * n_links + j] =
          channel_gain(std::max(d, kMinNodeSeparation), config.path_loss_exponent);
    }
  }

  topo.finalize();
  return topo;
}

// Topology from an explicit gain matrix; SINR computations use the supplied
// gains verbatim. Availability entries must be non-empty subsets of the
// configured channel set.
inline Topology synthetic_topology(const std::vector<std::vector<double>>& gains,
                                   const std::vector<std::vector<int>>& availability,
                                   const ScenarioConfig& config) {
  const int n = static_cast<int>(gains.size());
  if (n < 1) throw std::invalid_argument("synthetic_topology: empty gain matrix");
  if (static_cast<int>(availability.size()) != n)
    throw std::invalid_argument("synthetic_topology: availability size must match gain matrix");
  Topology topo;
  topo.config = config;
  topo.config.link_count = n;
  topo.config.validate();
  topo.synthetic = true;
  topo.links.assign(n, LinkEndpoints{});
  topo.gains.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(gains[i].size()) != n)
      throw std::invalid_argument("synthetic_topology: gain matrix must be square");
    for (int j = 0; j < n; ++j) {
      if (!(gains[i][j] > 0.0))
        throw std::invalid_argument("synthetic_topology: gains must be > 0");
      topo.gains[static_cast<std::size_t>(i) * n + j] = gains[i][j];
    }
  }
  topo.availability.resize(n);
  for (int i = 0; i < n; ++i) {
    auto a = availability[i];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) throw std::invalid_argument("synthetic_topology: empty availability set");
    if (a.front() < 0 || a.back() >= config.channel_count)
      throw std::invalid_argument("synthetic_topology: channel index out of range");
    topo.availability[i] = std::move(a);
  }
  topo.finalize();
  return topo;
}

}  // namespace crn
