// cli.hpp — command-line front end. Lives in a header so the acceptance
// suite can drive the exact code path the binary runs.
//
// Subcommands:
//   gen      emit a generated topology as JSON
//   play     one repeated game (trace.csv + summary.json)
//   learn    one learning run (learn_trace.csv, mixed_strategies.csv,
//            regret.json, summary.json)
//   ga       one genetic-algorithm run (ga_progress.csv, ga_best.json)
//   batch    run an experiment plan (per-metric CSVs + manifest.json)
//   fixture  emit the named fixture topology (fig1)
//   oracle   exhaustive optimum of a small instance (oracle.json)
//
// Exit status 0 on success; nonzero on validation or self-check failure.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crn/experiments.hpp"

namespace crn {

namespace cli_detail {

struct CommonOpts {
  std::string config_path;
  std::string topology_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool seed_given = false;
  int links = 0;  // 0 = take from config
};

inline ScenarioConfig load_scenario(const CommonOpts& opts) {
  ScenarioConfig cfg =
      opts.config_path.empty() ? ScenarioConfig{} : scenario_from_json(load_json_file(opts.config_path));
  if (opts.links > 0) cfg.link_count = opts.links;
  if (opts.seed_given) cfg.rng_seed = opts.seed;
  return cfg;
}

inline Topology load_or_generate(const CommonOpts& opts) {
  if (!opts.topology_path.empty()) return topology_from_json(load_json_file(opts.topology_path));
  const ScenarioConfig cfg = load_scenario(opts);
  return generate_topology(cfg, cfg.rng_seed);
}

inline void add_common(CLI::App* cmd, CommonOpts& opts, bool with_topology) {
  cmd->add_option("--config", opts.config_path, "Scenario config JSON (defaults: full-scale scenario)");
  if (with_topology)
    cmd->add_option("--topology", opts.topology_path,
                    "Topology JSON (bypasses generation; overrides --config)");
  cmd->add_option("--seed", opts.seed, "RNG seed (topology and run)")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
  cmd->add_option("--links", opts.links, "Number of links (overrides config)");
  cmd->add_option("--out", opts.out_dir, "Output directory");
}

inline std::filesystem::path prepare_out(const CommonOpts& opts) {
  std::filesystem::path dir(opts.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cli_detail

// Runs the CLI on the given arguments (argv[0] excluded). Returns the exit
// status instead of exiting so tests can call it in-process.
inline int run_cli(const std::vector<std::string>& args) {
  using cli_detail::CommonOpts;

  CLI::App app{
      "Distributed channel and power allocation simulator for cognitive radio networks\n"
      "under the physical (SINR) interference model: local and potential games,\n"
      "no-regret learning, and a genetic-algorithm baseline.\n"};
  app.require_subcommand(1);

  // gen
  CommonOpts gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "Generate a topology and write topology.json");
  cli_detail::add_common(gen, gen_opts, false);

  // play
  CommonOpts play_opts;
  std::string play_label = "dc-a-local";
  std::string play_scheduler = "round-robin";
  std::string play_response = "best";
  int play_steps = 20000;
  CLI::App* play = app.add_subcommand(
      "play",
      "Play one repeated game. Writes trace.csv (step,actors,nu,nu_valid,valid_links,changed) "
      "and summary.json.");
  cli_detail::add_common(play, play_opts, true);
  play->add_option("--label", play_label, "Strategy label (cc-noa|cc-a|dc-a|bc-a)-(local|potential)");
  play->add_option("--steps", play_steps, "Maximum steps");
  play->add_option("--scheduler", play_scheduler, "round-robin | asynchronous");
  play->add_option("--response", play_response, "best | better");

  // learn
  CommonOpts learn_opts;
  std::string learn_label = "dcp-a-fs";
  long learn_steps = 30000;
  double learn_beta = 0.1;
  double learn_window = 0.1;
  CLI::App* learn = app.add_subcommand(
      "learn",
      "Run no-regret learning. Writes learn_trace.csv (step,nu,nu_valid,valid_links), "
      "mixed_strategies.csv (link,strategy,channel,power_index,probability), regret.json and "
      "summary.json.");
  cli_detail::add_common(learn, learn_opts, true);
  learn->add_option("--label", learn_label, "Strategy label (dcp-a|bcp-a)-(fs|hm)");
  learn->add_option("--steps", learn_steps, "Learning steps");
  learn->add_option("--beta", learn_beta, "FS beta");
  learn->add_option("--window", learn_window, "Averaging window fraction of final steps");

  // ga
  CommonOpts ga_opts;
  std::string ga_label = "ga-dc";
  int ga_pop = 64;
  int ga_gens = 500;
  CLI::App* ga_cmd = app.add_subcommand(
      "ga",
      "Run the genetic-algorithm baseline. Writes ga_progress.csv (generation,best_nu,mean_nu) "
      "and ga_best.json.");
  cli_detail::add_common(ga_cmd, ga_opts, true);
  ga_cmd->add_option("--label", ga_label, "ga-dc | ga-bc");
  ga_cmd->add_option("--pop", ga_pop, "Population size");
  ga_cmd->add_option("--generations", ga_gens, "Maximum generations");

  // batch
  CommonOpts batch_opts;
  CLI::App* batch = app.add_subcommand(
      "batch",
      "Run an experiment plan. Writes nu.csv, nu_valid.csv, valid_links.csv, iterations.csv, "
      "convergence.csv (label,link_count,instances,...) and manifest.json.");
  batch->add_option("--config", batch_opts.config_path, "Experiment plan JSON")->required();
  batch->add_option("--seed", batch_opts.seed, "Override the plan's base seed")
      ->each([&batch_opts](const std::string&) { batch_opts.seed_given = true; });
  batch->add_option("--out", batch_opts.out_dir, "Output directory");

  // fixture
  CommonOpts fixture_opts;
  std::string fixture_name;
  CLI::App* fixture = app.add_subcommand(
      "fixture", "Emit a named fixture topology (runs its construction self-check)");
  fixture->add_option("name", fixture_name, "fig1")->required();
  fixture->add_option("--out", fixture_opts.out_dir, "Output directory");

  // oracle
  CommonOpts oracle_opts;
  std::string oracle_label = "dc-a-local";
  long long oracle_budget = 100000000LL;
  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "Exhaustive joint-profile optimum of a small instance. Writes oracle.json.");
  cli_detail::add_common(oracle, oracle_opts, true);
  oracle->add_option("--label", oracle_label, "Label selecting the capacity definition");
  oracle->add_option("--budget", oracle_budget, "Joint-profile enumeration budget");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      const ScenarioConfig cfg = cli_detail::load_scenario(gen_opts);
      const Topology topo = generate_topology(cfg, cfg.rng_seed);
      const auto dir = cli_detail::prepare_out(gen_opts);
      save_json_file(topology_to_json(topo), dir / "topology.json");
      std::cout << "wrote " << (dir / "topology.json").string() << " (" << topo.link_count()
                << " links)\n";
    } else if (play->parsed()) {
      const Topology topo = cli_detail::load_or_generate(play_opts);
      const StrategyLabel label = label_from_string(play_label);
      if (label_kind(label) != LabelKind::Repeated)
        throw std::invalid_argument("play expects a repeated-game label");
      const GameSpec spec = label_game_spec(label, topo.config.sinr_threshold);
      EngineConfig engine;
      engine.scheduler = play_scheduler == "asynchronous" ? SchedulerKind::Asynchronous
                                                          : SchedulerKind::RoundRobin;
      engine.response = play_response == "better" ? ResponseRule::Better : ResponseRule::Best;
      engine.max_steps = play_steps;
      engine.rng_seed = play_opts.seed;
      const RunTrace trace = run_repeated_game(topo, spec, engine);
      const auto dir = cli_detail::prepare_out(play_opts);
      {
        std::ofstream os(dir / "trace.csv");
        export_trace_csv(trace, os);
      }
      json summary;
      summary["label"] = play_label;
      summary["seed"] = play_opts.seed;
      summary["links"] = topo.link_count();
      summary["converged"] = trace.converged;
      summary["cycle_detected"] = trace.cycle_detected;
      summary["steps"] = trace.steps_used;
      summary["player_actions"] = trace.player_actions;
      summary["nu"] = trace.final_nu;
      summary["nu_valid"] = trace.final_nu_valid;
      summary["valid_links"] = trace.final_valid_links;
      save_json_file(summary, dir / "summary.json");
      std::cout << "play " << play_label << ": converged=" << (trace.converged ? "yes" : "no")
                << " steps=" << trace.steps_used << " nu=" << trace.final_nu << '\n';
    } else if (learn->parsed()) {
      const Topology topo = cli_detail::load_or_generate(learn_opts);
      const StrategyLabel label = label_from_string(learn_label);
      if (label_kind(label) != LabelKind::Learning)
        throw std::invalid_argument("learn expects a learning label (dcp-a-*, bcp-a-*)");
      const GameSpec spec = label_game_spec(label, topo.config.sinr_threshold);
      LearningConfig lcfg;
      lcfg.algorithm = (label == StrategyLabel::DcpAlphaFs || label == StrategyLabel::BcpAlphaFs)
                           ? LearningAlgorithm::FS
                           : LearningAlgorithm::HM;
      lcfg.beta = learn_beta;
      lcfg.total_steps = learn_steps;
      lcfg.averaging_window = learn_window;
      lcfg.rng_seed = learn_opts.seed;
      const LearningTrace trace = run_learning(topo, spec, lcfg);
      const auto dir = cli_detail::prepare_out(learn_opts);
      {
        std::ofstream os(dir / "learn_trace.csv");
        export_learning_csv(trace, os);
      }
      {
        std::ofstream os(dir / "mixed_strategies.csv");
        export_mixed_strategies_csv(trace, os);
      }
      json regret;
      double worst = 0.0;
      json per_player = json::array();
      for (int i = 0; i < topo.link_count(); ++i) {
        const double r = average_external_regret(i, trace);
        per_player.push_back(r);
        worst = std::max(worst, r);
      }
      regret["average_external_regret"] = per_player;
      regret["max_average_external_regret"] = worst;
      regret["max_observed_utility"] = trace.max_observed_utility;
      const CceGapReport cce = empirical_cce_gap(trace, topo, spec);
      regret["cce_gap"] = cce.gap;
      regret["cce_samples"] = cce.samples;
      regret["cce_low_confidence"] = cce.low_confidence;
      save_json_file(regret, dir / "regret.json");
      json summary;
      summary["label"] = learn_label;
      summary["seed"] = learn_opts.seed;
      summary["links"] = topo.link_count();
      summary["steps"] = trace.total_steps;
      summary["window_nu_mean"] = trace.window_nu_mean;
      summary["window_nu_valid_mean"] = trace.window_nu_valid_mean;
      summary["window_valid_links_mean"] = trace.window_valid_links_mean;
      save_json_file(summary, dir / "summary.json");
      std::cout << "learn " << learn_label << ": window nu=" << trace.window_nu_mean
                << " valid=" << trace.window_valid_links_mean << " max regret=" << worst << '\n';
    } else if (ga_cmd->parsed()) {
      const Topology topo = cli_detail::load_or_generate(ga_opts);
      const StrategyLabel label = label_from_string(ga_label);
      if (label_kind(label) != LabelKind::Ga)
        throw std::invalid_argument("ga expects ga-dc or ga-bc");
      GAConfig cfg;
      cfg.population_size = ga_pop;
      cfg.max_generations = ga_gens;
      cfg.rng_seed = ga_opts.seed;
      const GAResult result = ga_optimize(topo, label_capacity(label), cfg);
      const auto dir = cli_detail::prepare_out(ga_opts);
      {
        std::ofstream os(dir / "ga_progress.csv");
        export_ga_progress_csv(result, os);
      }
      json best;
      best["label"] = ga_label;
      best["nu"] = result.best_nu;
      best["generations"] = result.generations_used;
      json profile = json::array();
      for (const Strategy& s : result.best_profile)
        profile.push_back({{"channel", s.channel}, {"power_index", s.power_index}});
      best["profile"] = profile;
      save_json_file(best, dir / "ga_best.json");
      std::cout << "ga " << ga_label << ": nu=" << result.best_nu
                << " generations=" << result.generations_used << '\n';
    } else if (batch->parsed()) {
      ExperimentPlan plan = plan_from_json(load_json_file(batch_opts.config_path));
      if (batch_opts.seed_given) plan.base_seed = batch_opts.seed;
      const PlanResult result = run_plan(plan);
      write_plan_outputs(plan, result, batch_opts.out_dir);
      for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << "batch: " << result.rows.size() << " rows -> " << batch_opts.out_dir << '\n';
    } else if (fixture->parsed()) {
      if (fixture_name != "fig1")
        throw std::invalid_argument("unknown fixture: " + fixture_name);
      const Topology topo = build_fig1_fixture();
      const auto dir = cli_detail::prepare_out(fixture_opts);
      save_json_file(topology_to_json(topo), dir / "fig1.json");
      std::cout << "wrote " << (dir / "fig1.json").string() << " (self-check passed)\n";
    } else if (oracle->parsed()) {
      const Topology topo = cli_detail::load_or_generate(oracle_opts);
      const OracleResult result =
          compare_oracle(topo, label_capacity(label_from_string(oracle_label)), oracle_budget);
      const auto dir = cli_detail::prepare_out(oracle_opts);
      json j;
      j["label"] = oracle_label;
      j["best_nu"] = result.best_nu;
      j["profiles_scanned"] = result.profiles_scanned;
      json profile = json::array();
      for (const Strategy& s : result.best_profile)
        profile.push_back({{"channel", s.channel}, {"power_index", s.power_index}});
      j["best_profile"] = profile;
      save_json_file(j, dir / "oracle.json");
      std::cout << "oracle: best nu=" << result.best_nu << " over " << result.profiles_scanned
                << " profiles\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace crn
