// experiments.hpp — batch Monte-Carlo harness: strategy labels, seeded plan
// execution with per-metric aggregation, the three-link no-pure-NE fixture
// and the exhaustive joint-profile oracle used to score equilibria and the
// genetic algorithm at desk scale.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crn/dynamics.hpp"
#include "crn/ga.hpp"
#include "crn/io.hpp"
#include "crn/learning.hpp"

namespace crn {

inline constexpr const char* kVersion = "0.1.0";

// Strategy labels of the comparative study. The "-a" suffix marks the SINR
// threshold being part of the decision rule; "p" marks the power-corrected
// utility, which is only played under learning.
enum class StrategyLabel {
  CcNoAlphaLocal,
  CcNoAlphaPotential,
  CcAlphaLocal,
  CcAlphaPotential,
  DcAlphaLocal,
  DcAlphaPotential,
  BcAlphaLocal,
  BcAlphaPotential,
  DcpAlphaFs,
  DcpAlphaHm,
  BcpAlphaFs,
  BcpAlphaHm,
  GaDc,
  GaBc,
};

enum class LabelKind { Repeated, Learning, Ga };

inline const char* label_to_string(StrategyLabel label) {
  switch (label) {
    case StrategyLabel::CcNoAlphaLocal: return "cc-noa-local";
    case StrategyLabel::CcNoAlphaPotential: return "cc-noa-potential";
    case StrategyLabel::CcAlphaLocal: return "cc-a-local";
    case StrategyLabel::CcAlphaPotential: return "cc-a-potential";
    case StrategyLabel::DcAlphaLocal: return "dc-a-local";
    case StrategyLabel::DcAlphaPotential: return "dc-a-potential";
    case StrategyLabel::BcAlphaLocal: return "bc-a-local";
    case StrategyLabel::BcAlphaPotential: return "bc-a-potential";
    case StrategyLabel::DcpAlphaFs: return "dcp-a-fs";
    case StrategyLabel::DcpAlphaHm: return "dcp-a-hm";
    case StrategyLabel::BcpAlphaFs: return "bcp-a-fs";
    case StrategyLabel::BcpAlphaHm: return "bcp-a-hm";
    case StrategyLabel::GaDc: return "ga-dc";
    case StrategyLabel::GaBc: return "ga-bc";
  }
  return "?";
}

inline const std::vector<StrategyLabel>& all_labels() {
  static const std::vector<StrategyLabel> labels = {
      StrategyLabel::CcNoAlphaLocal, StrategyLabel::CcNoAlphaPotential,
      StrategyLabel::CcAlphaLocal,   StrategyLabel::CcAlphaPotential,
      StrategyLabel::DcAlphaLocal,   StrategyLabel::DcAlphaPotential,
      StrategyLabel::BcAlphaLocal,   StrategyLabel::BcAlphaPotential,
      StrategyLabel::DcpAlphaFs,     StrategyLabel::DcpAlphaHm,
      StrategyLabel::BcpAlphaFs,     StrategyLabel::BcpAlphaHm,
      StrategyLabel::GaDc,           StrategyLabel::GaBc};
  return labels;
}

inline StrategyLabel label_from_string(const std::string& s) {
  for (StrategyLabel label : all_labels())
    if (s == label_to_string(label)) return label;
  throw std::invalid_argument("unknown strategy label: " + s);
}

inline LabelKind label_kind(StrategyLabel label) {
  switch (label) {
    case StrategyLabel::DcpAlphaFs:
    case StrategyLabel::DcpAlphaHm:
    case StrategyLabel::BcpAlphaFs:
    case StrategyLabel::BcpAlphaHm:
      return LabelKind::Learning;
    case StrategyLabel::GaDc:
    case StrategyLabel::GaBc:
      return LabelKind::Ga;
    default:
      return LabelKind::Repeated;
  }
}

// Game spec for repeated-game and learning labels; alpha comes from the
// scenario. Potential labels use the marginal utility (same potential
// function as identical interest, lower computational load).
inline GameSpec label_game_spec(StrategyLabel label, double alpha) {
  GameSpec spec;
  spec.alpha = alpha;
  switch (label) {
    case StrategyLabel::CcNoAlphaLocal:
      spec.capacity = CapacityMode::cc_no_alpha();
      spec.info = InfoModel::Local;
      break;
    case StrategyLabel::CcNoAlphaPotential:
      spec.capacity = CapacityMode::cc_no_alpha();
      spec.info = InfoModel::PotentialMarginal;
      break;
    case StrategyLabel::CcAlphaLocal:
      spec.capacity = CapacityMode::cc_alpha();
      spec.info = InfoModel::Local;
      break;
    case StrategyLabel::CcAlphaPotential:
      spec.capacity = CapacityMode::cc_alpha();
      spec.info = InfoModel::PotentialMarginal;
      break;
    case StrategyLabel::DcAlphaLocal:
      spec.capacity = CapacityMode::dc_alpha();
      spec.info = InfoModel::Local;
      break;
    case StrategyLabel::DcAlphaPotential:
      spec.capacity = CapacityMode::dc_alpha();
      spec.info = InfoModel::PotentialMarginal;
      break;
    case StrategyLabel::BcAlphaLocal:
      spec.capacity = CapacityMode::bc_alpha();
      spec.info = InfoModel::Local;
      break;
    case StrategyLabel::BcAlphaPotential:
      spec.capacity = CapacityMode::bc_alpha();
      spec.info = InfoModel::PotentialMarginal;
      break;
    case StrategyLabel::DcpAlphaFs:
    case StrategyLabel::DcpAlphaHm:
      spec.capacity = CapacityMode::dc_alpha();
      spec.info = InfoModel::Local;
      spec.power_correction = true;
      break;
    case StrategyLabel::BcpAlphaFs:
    case StrategyLabel::BcpAlphaHm:
      spec.capacity = CapacityMode::bc_alpha();
      spec.info = InfoModel::Local;
      spec.power_correction = true;
      break;
    default:
      throw std::invalid_argument("label has no game spec (GA label)");
  }
  return spec;
}

inline CapacityMode label_capacity(StrategyLabel label) {
  switch (label) {
    case StrategyLabel::GaDc: return CapacityMode::dc_alpha();
    case StrategyLabel::GaBc: return CapacityMode::bc_alpha();
    default: return label_game_spec(label, 10.0).capacity;
  }
}

struct ExperimentPlan {
  ScenarioConfig scenario;
  std::vector<int> link_counts = {10, 20, 30};
  std::vector<StrategyLabel> labels;
  int instances = 50;
  std::uint64_t base_seed = 1;
  SchedulerKind scheduler = SchedulerKind::Asynchronous;
  ResponseRule response = ResponseRule::Best;
  int max_steps = 20000;
  long learn_steps = 30000;
  double fs_beta = 0.1;
  double averaging_window = 0.1;
  GAConfig ga;

  void validate() const {
    scenario.validate();
    ga.validate();
    if (instances < 1) throw std::invalid_argument("instances must be >= 1");
    if (link_counts.empty()) throw std::invalid_argument("link_counts must be non-empty");
    if (labels.empty()) throw std::invalid_argument("labels must be non-empty");
  }
};

// Desk-scale default: node density and transmission range match the full
// scenario, shrunk to a size where hundreds of instances run in seconds.
inline ScenarioConfig desk_scenario() {
  ScenarioConfig cfg;
  cfg.node_count = 40;
  cfg.area_side = 2400.0 * std::sqrt(40.0 / 200.0);
  cfg.channel_count = 5;
  cfg.avail_min = 2;
  cfg.avail_max = 4;
  cfg.link_count = 10;
  return cfg;
}

struct InstanceResult {
  StrategyLabel label;
  int link_count = 0;
  int instance = 0;
  std::uint64_t topology_seed = 0;
  std::uint64_t run_seed = 0;
  double nu = 0.0;
  double nu_valid = 0.0;
  double valid_links = 0.0;
  double iterations = 0.0;
  bool converged = false;
  bool failed = false;
  std::string error;
};

struct AggregateRow {
  StrategyLabel label;
  int link_count = 0;
  int instances = 0;  // successful instances aggregated
  double nu_mean = 0.0, nu_std = 0.0;
  double nu_valid_mean = 0.0, nu_valid_std = 0.0;
  double valid_links_mean = 0.0, valid_links_std = 0.0;
  double iterations_mean = 0.0, iterations_std = 0.0;
  double convergence_rate = 0.0;
};

struct PlanResult {
  std::vector<AggregateRow> rows;
  std::vector<InstanceResult> instance_results;
  std::vector<std::string> warnings;
};

namespace detail {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace detail

// One seeded run of a single label on a fresh topology.
inline InstanceResult run_instance(const ExperimentPlan& plan, StrategyLabel label,
                                   int link_count, int instance) {
  InstanceResult r;
  r.label = label;
  r.link_count = link_count;
  r.instance = instance;
  const std::string name = label_to_string(label);
  r.topology_seed = derive_seed(plan.base_seed, name, link_count, instance, "topo");
  r.run_seed = derive_seed(plan.base_seed, name, link_count, instance, "run");
  try {
    ScenarioConfig cfg = plan.scenario;
    cfg.link_count = link_count;
    const Topology topo = generate_topology(cfg, r.topology_seed);
    switch (label_kind(label)) {
      case LabelKind::Repeated: {
        const GameSpec spec = label_game_spec(label, cfg.sinr_threshold);
        EngineConfig engine;
        engine.scheduler = plan.scheduler;
        engine.response = plan.response;
        engine.max_steps = plan.max_steps;
        engine.rng_seed = r.run_seed;
        engine.record_trajectory = false;
        const RunTrace trace = run_repeated_game(topo, spec, engine);
        r.nu = trace.final_nu;
        r.nu_valid = trace.final_nu_valid;
        r.valid_links = trace.final_valid_links;
        r.iterations = static_cast<double>(trace.player_actions);
        r.converged = trace.converged;
        break;
      }
      case LabelKind::Learning: {
        const GameSpec spec = label_game_spec(label, cfg.sinr_threshold);
        LearningConfig lcfg;
        lcfg.algorithm = (label == StrategyLabel::DcpAlphaFs || label == StrategyLabel::BcpAlphaFs)
                             ? LearningAlgorithm::FS
                             : LearningAlgorithm::HM;
        lcfg.beta = plan.fs_beta;
        lcfg.total_steps = plan.learn_steps;
        lcfg.averaging_window = plan.averaging_window;
        lcfg.rng_seed = r.run_seed;
        const LearningTrace trace = run_learning(topo, spec, lcfg);
        r.nu = trace.window_nu_mean;
        r.nu_valid = trace.window_nu_valid_mean;
        r.valid_links = trace.window_valid_links_mean;
        r.iterations = static_cast<double>(trace.total_steps);
        r.converged = true;
        break;
      }
      case LabelKind::Ga: {
        GAConfig ga = plan.ga;
        ga.rng_seed = r.run_seed;
        const CapacityMode mode = label_capacity(label);
        const GAResult res = ga_optimize(topo, mode, ga);
        r.nu = res.best_nu;
        r.nu_valid =
            network_utility_valid(res.best_profile, topo, mode, cfg.sinr_threshold);
        r.valid_links = valid_link_count(res.best_profile, topo, cfg.sinr_threshold);
        r.iterations = static_cast<double>(res.generations_used);
        r.converged = true;
        break;
      }
    }
  } catch (const std::exception& e) {
    r.failed = true;
    r.error = e.what();
  }
  return r;
}

// Runs every (label, link_count, instance) cell of the plan. Failed
// instances are excluded from aggregates and surfaced as warnings, never
// dropped silently. Deterministic: seeds derive from stable hashes, so rows
// never depend on execution order or on which other labels are present.
inline PlanResult run_plan(const ExperimentPlan& plan) {
  plan.validate();
  PlanResult result;
  for (StrategyLabel label : plan.labels) {
    for (int links : plan.link_counts) {
      std::vector<double> nu, nu_valid, valid, iters;
      int converged_count = 0, ok = 0;
      for (int k = 0; k < plan.instances; ++k) {
        InstanceResult r = run_instance(plan, label, links, k);
        if (r.failed) {
          std::ostringstream w;
          w << "instance failed: label=" << label_to_string(label) << " links=" << links
            << " instance=" << k << " error=" << r.error;
          result.warnings.push_back(w.str());
        } else {
          nu.push_back(r.nu);
          nu_valid.push_back(r.nu_valid);
          valid.push_back(r.valid_links);
          iters.push_back(r.iterations);
          if (r.converged) ++converged_count;
          ++ok;
        }
        result.instance_results.push_back(std::move(r));
      }
      AggregateRow row;
      row.label = label;
      row.link_count = links;
      row.instances = ok;
      const auto ms_nu = detail::mean_std(nu);
      const auto ms_nuv = detail::mean_std(nu_valid);
      const auto ms_v = detail::mean_std(valid);
      const auto ms_it = detail::mean_std(iters);
      row.nu_mean = ms_nu.mean;
      row.nu_std = ms_nu.std;
      row.nu_valid_mean = ms_nuv.mean;
      row.nu_valid_std = ms_nuv.std;
      row.valid_links_mean = ms_v.mean;
      row.valid_links_std = ms_v.std;
      row.iterations_mean = ms_it.mean;
      row.iterations_std = ms_it.std;
      row.convergence_rate = ok > 0 ? static_cast<double>(converged_count) / ok : 0.0;
      result.rows.push_back(row);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Fig.-1 style counterexample: three links, two channels, cyclic dominance.
// Gains are chosen so that, per channel, link i+1 at any power silences
// link i, while link i-1 never does:
//   - alone, every link is valid at every power level (min SINR 25);
//   - with its killer co-channel at the lowest level, max-power SINR is
//     100/26 < 10;
//   - with its tolerated interferer co-channel at full power, SINR is
//     100/6 >= 10.
// The construction is verified at build time by an exhaustive scan showing
// the local binary-capacity game has no pure NE.

inline Topology build_fig1_fixture() {
  ScenarioConfig cfg;
  cfg.area_side = 1000.0;
  cfg.node_count = 6;
  cfg.link_count = 3;
  cfg.channel_count = 2;
  cfg.avail_min = 2;
  cfg.avail_max = 2;
  cfg.p_max_mw = 100.0;
  cfg.power_levels = 4;
  cfg.sinr_threshold = 10.0;
  cfg.noise_mw = 1.0;
  cfg.channel_bandwidths = {1.0, 1.0};
  const double strong = 1.0;  // silences the victim at any level
  const double weak = 0.05;   // compatible with reception at full power
  const std::vector<std::vector<double>> gains = {
      {1.0, weak, strong},
      {strong, 1.0, weak},
      {weak, strong, 1.0},
  };
  const std::vector<std::vector<int>> availability = {{0, 1}, {0, 1}, {0, 1}};
  Topology topo = synthetic_topology(gains, availability, cfg);

  GameSpec spec;
  spec.capacity = CapacityMode::bc_alpha();
  spec.info = InfoModel::Local;
  spec.alpha = cfg.sinr_threshold;
  std::vector<std::vector<Strategy>> sets;
  for (int i = 0; i < 3; ++i) sets.push_back(enumerate_strategies(i, topo));
  StrategyProfile profile(3);
  for (std::size_t a = 0; a < sets[0].size(); ++a) {
    for (std::size_t b = 0; b < sets[1].size(); ++b) {
      for (std::size_t c = 0; c < sets[2].size(); ++c) {
        profile[0] = sets[0][a];
        profile[1] = sets[1][b];
        profile[2] = sets[2][c];
        if (is_pure_nash(profile, topo, spec))
          throw std::runtime_error("fig1 fixture self-check failed: pure NE found");
      }
    }
  }
  return topo;
}

// ---------------------------------------------------------------------------
// Exhaustive joint-profile oracle.

struct OracleResult {
  double best_nu = 0.0;
  StrategyProfile best_profile;
  long long profiles_scanned = 0;
};

// Exhaustive maximum of the network utility over the full joint strategy
// space. Refuses instances whose joint space exceeds the enumeration budget.
inline OracleResult compare_oracle(const Topology& topo, CapacityMode mode,
                                   long long budget = 100000000LL) {
  const int n = topo.link_count();
  const double alpha = topo.config.sinr_threshold;
  std::vector<std::vector<Strategy>> sets;
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    sets.push_back(enumerate_strategies(i, topo));
    const long long size = static_cast<long long>(sets.back().size());
    if (total > budget / size)
      throw std::runtime_error("compare_oracle: joint strategy space exceeds enumeration budget");
    total *= size;
  }

  OracleResult result;
  std::vector<std::size_t> idx(n, 0);
  StrategyProfile profile(n);
  for (int i = 0; i < n; ++i) profile[i] = sets[i][0];
  result.best_nu = -std::numeric_limits<double>::infinity();
  for (;;) {
    const double nu = network_utility(profile, topo, mode, alpha);
    ++result.profiles_scanned;
    if (nu > result.best_nu) {
      result.best_nu = nu;
      result.best_profile = profile;
    }
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < sets[pos].size()) {
        profile[pos] = sets[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      profile[pos] = sets[pos][0];
      --pos;
    }
    if (pos < 0) break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Plan serialization and batch output files.

inline json plan_to_json(const ExperimentPlan& plan) {
  json j;
  j["scenario"] = scenario_to_json(plan.scenario);
  j["link_counts"] = plan.link_counts;
  json labels = json::array();
  for (StrategyLabel l : plan.labels) labels.push_back(label_to_string(l));
  j["labels"] = labels;
  j["instances"] = plan.instances;
  j["base_seed"] = plan.base_seed;
  j["scheduler"] = plan.scheduler == SchedulerKind::RoundRobin ? "round-robin" : "asynchronous";
  j["response"] = plan.response == ResponseRule::Best ? "best" : "better";
  j["max_steps"] = plan.max_steps;
  j["learn_steps"] = plan.learn_steps;
  j["fs_beta"] = plan.fs_beta;
  j["averaging_window"] = plan.averaging_window;
  json ga;
  ga["population_size"] = plan.ga.population_size;
  ga["max_generations"] = plan.ga.max_generations;
  ga["replace_proportion"] = plan.ga.replace_proportion;
  ga["tournament_size"] = plan.ga.tournament_size;
  ga["crossover_prob"] = plan.ga.crossover_prob;
  ga["genewise_swap_prob"] = plan.ga.genewise_swap_prob;
  ga["sbx_polynomial_order"] = plan.ga.sbx_polynomial_order;
  ga["mutation_prob"] = plan.ga.mutation_prob;
  ga["stall_generations"] = plan.ga.stall_generations;
  j["ga"] = ga;
  return j;
}

inline ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  plan.scenario = j.contains("scenario") ? scenario_from_json(j.at("scenario")) : desk_scenario();
  if (j.contains("link_counts")) plan.link_counts = j.at("link_counts").get<std::vector<int>>();
  if (j.contains("labels")) {
    plan.labels.clear();
    for (const auto& l : j.at("labels")) plan.labels.push_back(label_from_string(l.get<std::string>()));
  }
  if (j.contains("instances")) plan.instances = j.at("instances").get<int>();
  if (j.contains("base_seed")) plan.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("scheduler")) {
    const std::string s = j.at("scheduler").get<std::string>();
    if (s == "round-robin") plan.scheduler = SchedulerKind::RoundRobin;
    else if (s == "asynchronous") plan.scheduler = SchedulerKind::Asynchronous;
    else throw std::invalid_argument("unknown scheduler: " + s);
  }
  if (j.contains("response")) {
    const std::string s = j.at("response").get<std::string>();
    if (s == "best") plan.response = ResponseRule::Best;
    else if (s == "better") plan.response = ResponseRule::Better;
    else throw std::invalid_argument("unknown response rule: " + s);
  }
  if (j.contains("max_steps")) plan.max_steps = j.at("max_steps").get<int>();
  if (j.contains("learn_steps")) plan.learn_steps = j.at("learn_steps").get<long>();
  if (j.contains("fs_beta")) plan.fs_beta = j.at("fs_beta").get<double>();
  if (j.contains("averaging_window"))
    plan.averaging_window = j.at("averaging_window").get<double>();
  if (j.contains("ga")) {
    const json& g = j.at("ga");
    if (g.contains("population_size")) plan.ga.population_size = g.at("population_size").get<int>();
    if (g.contains("max_generations")) plan.ga.max_generations = g.at("max_generations").get<int>();
    if (g.contains("replace_proportion"))
      plan.ga.replace_proportion = g.at("replace_proportion").get<double>();
    if (g.contains("tournament_size")) plan.ga.tournament_size = g.at("tournament_size").get<int>();
    if (g.contains("crossover_prob")) plan.ga.crossover_prob = g.at("crossover_prob").get<double>();
    if (g.contains("genewise_swap_prob"))
      plan.ga.genewise_swap_prob = g.at("genewise_swap_prob").get<double>();
    if (g.contains("sbx_polynomial_order"))
      plan.ga.sbx_polynomial_order = g.at("sbx_polynomial_order").get<double>();
    if (g.contains("mutation_prob")) plan.ga.mutation_prob = g.at("mutation_prob").get<double>();
    if (g.contains("stall_generations"))
      plan.ga.stall_generations = g.at("stall_generations").get<int>();
  }
  plan.validate();
  return plan;
}

namespace detail {

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// One CSV per metric family plus a manifest echoing the plan, code version,
// derived seeds and any per-instance warnings.
inline void write_plan_outputs(const ExperimentPlan& plan, const PlanResult& result,
                               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto write_metric = [&](const std::string& file, auto mean_of, auto std_of) {
    std::ofstream os(out_dir / file);
    os << "label,link_count,instances,mean,std\n";
    for (const AggregateRow& row : result.rows)
      os << label_to_string(row.label) << ',' << row.link_count << ',' << row.instances << ','
         << detail::fmt_double(mean_of(row)) << ',' << detail::fmt_double(std_of(row)) << '\n';
  };
  write_metric(
      "nu.csv", [](const AggregateRow& r) { return r.nu_mean; },
      [](const AggregateRow& r) { return r.nu_std; });
  write_metric(
      "nu_valid.csv", [](const AggregateRow& r) { return r.nu_valid_mean; },
      [](const AggregateRow& r) { return r.nu_valid_std; });
  write_metric(
      "valid_links.csv", [](const AggregateRow& r) { return r.valid_links_mean; },
      [](const AggregateRow& r) { return r.valid_links_std; });
  write_metric(
      "iterations.csv", [](const AggregateRow& r) { return r.iterations_mean; },
      [](const AggregateRow& r) { return r.iterations_std; });
  {
    std::ofstream os(out_dir / "convergence.csv");
    os << "label,link_count,instances,rate\n";
    for (const AggregateRow& row : result.rows)
      os << label_to_string(row.label) << ',' << row.link_count << ',' << row.instances << ','
         << detail::fmt_double(row.convergence_rate) << '\n';
  }
  json manifest;
  manifest["version"] = kVersion;
  manifest["plan"] = plan_to_json(plan);
  manifest["seed_derivation"] =
      "instance seed = base_seed XOR fnv1a64(label|link_count|instance|salt), salt in {topo, run}";
  manifest["metrics"] = {
      {"nu", "network utility of the final/windowed play"},
      {"nu_valid", "network utility counting only links with SINR >= alpha"},
      {"valid_links", "number of links with SINR >= alpha"},
      {"iterations",
       "repeated game: player actions; learning: steps; ga: generations"},
      {"convergence",
       "fraction of runs ending in a verified pure NE (always 1 for learning/ga rows)"}};
  json seeds = json::array();
  for (const InstanceResult& r : result.instance_results) {
    json s;
    s["label"] = label_to_string(r.label);
    s["link_count"] = r.link_count;
    s["instance"] = r.instance;
    s["topology_seed"] = r.topology_seed;
    s["run_seed"] = r.run_seed;
    if (r.failed) s["error"] = r.error;
    seeds.push_back(s);
  }
  manifest["instances"] = seeds;
  manifest["warnings"] = result.warnings;
  save_json_file(manifest, out_dir / "manifest.json");
}

}  // namespace crn
