// io.hpp — JSON serialization for scenario configs and topologies.
//
// Config files speak dBm / dB at the boundary; everything becomes linear
// milliwatts / plain ratios on load and stays that way. Topology dumps carry
// the explicit gain matrix so a reloaded topology reproduces every SINR
// bit for bit.

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "crn/scenario.hpp"
#include "crn/units.hpp"

namespace crn {

using json = nlohmann::json;

inline json scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  j["area_side_m"] = cfg.area_side;
  j["node_count"] = cfg.node_count;
  j["link_count"] = cfg.link_count;
  j["channel_count"] = cfg.channel_count;
  j["region_side_m"] = cfg.region_side;
  j["avail_min"] = cfg.avail_min;
  j["avail_max"] = cfg.avail_max;
  j["p_max_dbm"] = mw_to_dbm(cfg.p_max_mw);
  j["power_levels"] = cfg.power_levels;
  j["path_loss_exponent"] = cfg.path_loss_exponent;
  j["sinr_threshold_db"] = linear_to_db(cfg.sinr_threshold);
  j["noise_dbm"] = mw_to_dbm(cfg.noise_mw);
  j["max_modulation"] = cfg.max_modulation;
  j["channel_bandwidths"] = cfg.channel_bandwidths;
  j["max_link_distance_m"] = cfg.max_link_distance;
  j["rng_seed"] = cfg.rng_seed;
  return j;
}

inline ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig cfg;  // defaults for absent keys
  if (j.contains("area_side_m")) cfg.area_side = j.at("area_side_m").get<double>();
  if (j.contains("node_count")) cfg.node_count = j.at("node_count").get<int>();
  if (j.contains("link_count")) cfg.link_count = j.at("link_count").get<int>();
  if (j.contains("channel_count")) cfg.channel_count = j.at("channel_count").get<int>();
  if (j.contains("region_side_m")) cfg.region_side = j.at("region_side_m").get<double>();
  if (j.contains("avail_min")) cfg.avail_min = j.at("avail_min").get<int>();
  if (j.contains("avail_max")) cfg.avail_max = j.at("avail_max").get<int>();
  if (j.contains("p_max_dbm")) cfg.p_max_mw = dbm_to_mw(j.at("p_max_dbm").get<double>());
  if (j.contains("power_levels")) cfg.power_levels = j.at("power_levels").get<int>();
  if (j.contains("path_loss_exponent"))
    cfg.path_loss_exponent = j.at("path_loss_exponent").get<double>();
  if (j.contains("sinr_threshold_db"))
    cfg.sinr_threshold = db_to_linear(j.at("sinr_threshold_db").get<double>());
  if (j.contains("noise_dbm")) cfg.noise_mw = dbm_to_mw(j.at("noise_dbm").get<double>());
  if (j.contains("max_modulation")) cfg.max_modulation = j.at("max_modulation").get<int>();
  if (j.contains("channel_bandwidths"))
    cfg.channel_bandwidths = j.at("channel_bandwidths").get<std::vector<double>>();
  if (j.contains("max_link_distance_m"))
    cfg.max_link_distance = j.at("max_link_distance_m").get<double>();
  if (j.contains("rng_seed")) cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

// Topology dumps store linear-unit physics directly (they are instance
// fixtures, not human-edited configs), so reload is exact.
inline json topology_to_json(const Topology& topo) {
  json j;
  j["synthetic"] = topo.synthetic;
  json cfg;
  cfg["area_side_m"] = topo.config.area_side;
  cfg["node_count"] = topo.config.node_count;
  cfg["link_count"] = topo.config.link_count;
  cfg["channel_count"] = topo.config.channel_count;
  cfg["region_side_m"] = topo.config.region_side;
  cfg["avail_min"] = topo.config.avail_min;
  cfg["avail_max"] = topo.config.avail_max;
  cfg["p_max_mw"] = topo.config.p_max_mw;
  cfg["power_levels"] = topo.config.power_levels;
  cfg["path_loss_exponent"] = topo.config.path_loss_exponent;
  cfg["sinr_threshold"] = topo.config.sinr_threshold;
  cfg["noise_mw"] = topo.config.noise_mw;
  cfg["max_modulation"] = topo.config.max_modulation;
  cfg["channel_bandwidths"] = topo.config.channel_bandwidths;
  cfg["max_link_distance_m"] = topo.config.max_link_distance;
  cfg["rng_seed"] = topo.config.rng_seed;
  j["config"] = cfg;
  if (!topo.positions.empty()) {
    json pos = json::array();
    for (const auto& p : topo.positions) pos.push_back({p[0], p[1]});
    j["positions"] = pos;
    json links = json::array();
    for (const auto& l : topo.links) links.push_back({l.tx, l.rx});
    j["links"] = links;
  }
  j["availability"] = topo.availability;
  j["gains"] = topo.gains;
  return j;
}

inline Topology topology_from_json(const json& j) {
  Topology topo;
  const json& cfg = j.at("config");
  topo.config.area_side = cfg.at("area_side_m").get<double>();
  topo.config.node_count = cfg.at("node_count").get<int>();
  topo.config.link_count = cfg.at("link_count").get<int>();
  topo.config.channel_count = cfg.at("channel_count").get<int>();
  topo.config.region_side = cfg.at("region_side_m").get<double>();
  topo.config.avail_min = cfg.at("avail_min").get<int>();
  topo.config.avail_max = cfg.at("avail_max").get<int>();
  topo.config.p_max_mw = cfg.at("p_max_mw").get<double>();
  topo.config.power_levels = cfg.at("power_levels").get<int>();
  topo.config.path_loss_exponent = cfg.at("path_loss_exponent").get<double>();
  topo.config.sinr_threshold = cfg.at("sinr_threshold").get<double>();
  topo.config.noise_mw = cfg.at("noise_mw").get<double>();
  topo.config.max_modulation = cfg.at("max_modulation").get<int>();
  topo.config.channel_bandwidths = cfg.at("channel_bandwidths").get<std::vector<double>>();
  topo.config.max_link_distance = cfg.at("max_link_distance_m").get<double>();
  topo.config.rng_seed = cfg.at("rng_seed").get<std::uint64_t>();
  topo.config.validate();
  topo.synthetic = j.at("synthetic").get<bool>();
  if (j.contains("positions")) {
    for (const auto& p : j.at("positions"))
      topo.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& l : j.at("links"))
      topo.links.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  }
  topo.availability = j.at("availability").get<std::vector<std::vector<int>>>();
  const std::size_t n = topo.availability.size();
  if (j.contains("gains")) {
    topo.gains = j.at("gains").get<std::vector<double>>();
  } else {
    // positional dump without explicit gains: recompute from the distance law
    if (topo.positions.empty())
      throw std::invalid_argument("topology_from_json: need gains or positions");
    topo.gains.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double d = detail::node_distance(topo.positions[topo.links[i].tx],
                                               topo.positions[topo.links[k].rx]);
        topo.gains[i * n + k] = channel_gain(std::max(d, kMinNodeSeparation),
                                             topo.config.path_loss_exponent);
      }
    }
  }
  if (topo.gains.size() != n * n)
    throw std::invalid_argument("topology_from_json: gain matrix size mismatch");
  for (double g : topo.gains)
    if (!(g > 0.0)) throw std::invalid_argument("topology_from_json: gains must be > 0");
  for (const auto& a : topo.availability)
    if (a.empty()) throw std::invalid_argument("topology_from_json: empty availability set");
  if (topo.links.empty()) topo.links.assign(n, LinkEndpoints{});
  topo.finalize();
  return topo;
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

inline void save_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline void save_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace crn
