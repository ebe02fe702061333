// dynamics.hpp — the myopic repeated-game engine: round-robin and
// asynchronous scheduling, best/better response play, quiescence-based
// convergence detection (always verified with a full pure-NE check) and
// profile-cycle detection for the deterministic schedule.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "crn/games.hpp"

namespace crn {

enum class SchedulerKind { RoundRobin, Asynchronous };
enum class ResponseRule { Best, Better };

struct EngineConfig {
  SchedulerKind scheduler = SchedulerKind::RoundRobin;
  ResponseRule response = ResponseRule::Best;
  int max_steps = 20000;
  int quiescence_window = 0;  // 0 = auto (3N); must be >= N otherwise
  std::uint64_t rng_seed = 1;
  bool record_trajectory = true;
  int round_robin_offset = 0;  // which player acts at step 0
};

struct RunTrace {
  bool converged = false;
  bool cycle_detected = false;
  int steps_used = 0;
  long player_actions = 0;  // individual response computations (link actions)
  StrategyProfile final_profile;
  double final_nu = 0.0;
  double final_nu_valid = 0.0;
  int final_valid_links = 0;
  // per-step trajectories (filled when record_trajectory)
  std::vector<double> nu_history;
  std::vector<double> nu_valid_history;
  std::vector<int> valid_links_history;
  std::vector<std::vector<int>> actors_history;
  std::vector<std::uint8_t> changed_history;
};

// Round robin: a single player per step.
inline std::vector<int> schedule_round_robin(int step, int n_players) {
  return {step % n_players};
}

// Asynchronous: each player acts with probability 1/N, independently; the
// acting set may be empty or contain several players.
inline std::vector<int> schedule_asynchronous(int n_players, Rng& rng) {
  std::vector<int> actors;
  const double p = 1.0 / static_cast<double>(n_players);
  for (int i = 0; i < n_players; ++i)
    if (rng.bernoulli(p)) actors.push_back(i);
  return actors;
}

namespace detail {

inline std::uint64_t profile_hash(const StrategyProfile& profile, int phase) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x00000100000001B3ULL;
  };
  mix(static_cast<std::uint64_t>(phase) + 0x9E3779B9ULL);
  for (const Strategy& s : profile) {
    mix(static_cast<std::uint64_t>(s.channel) + 1);
    mix(static_cast<std::uint64_t>(s.power_index) + 1);
  }
  return h;
}

struct CycleEntry {
  StrategyProfile profile;
  int phase = 0;
  long moves = 0;  // cumulative changed-step count at insertion
};

}  // namespace detail

// Plays the repeated game until a verified pure NE, a detected profile
// cycle (deterministic schedule only) or the step budget. All acting
// players in a step compute their responses against the same pre-step
// snapshot and apply them simultaneously. Deterministic given the seed.
inline RunTrace run_repeated_game(const Topology& topo, const GameSpec& spec,
                                  const EngineConfig& cfg,
                                  std::optional<StrategyProfile> initial = std::nullopt) {
  spec.validate();
  const int n = topo.link_count();
  if (cfg.max_steps <= 0) throw std::invalid_argument("max_steps must be > 0");
  const int window = cfg.quiescence_window == 0 ? 3 * n : cfg.quiescence_window;
  if (window < n) throw std::invalid_argument("quiescence_window must be >= N");

  Rng rng(cfg.rng_seed);
  StrategyProfile profile = initial ? *initial : random_profile(topo, rng);
  if (static_cast<int>(profile.size()) != n)
    throw std::invalid_argument("initial profile size must equal link count");

  RunTrace trace;
  // Cycle detection is sound only when the transition is deterministic:
  // round robin with best response. Better response and the asynchronous
  // scheduler draw from the RNG, so a profile revisit proves nothing there.
  const bool deterministic_play =
      cfg.scheduler == SchedulerKind::RoundRobin && cfg.response == ResponseRule::Best;
  constexpr std::size_t kCycleMemory = 4096;
  std::unordered_map<std::uint64_t, detail::CycleEntry> seen;

  int unchanged_streak = 0;
  long moves = 0;  // steps on which at least one strategy changed
  std::vector<Strategy> proposals;

  for (int step = 0; step < cfg.max_steps; ++step) {
    const std::vector<int> actors =
        cfg.scheduler == SchedulerKind::RoundRobin
            ? schedule_round_robin(step + cfg.round_robin_offset, n)
            : schedule_asynchronous(n, rng);

    proposals.clear();
    for (int a : actors) {
      proposals.push_back(cfg.response == ResponseRule::Best
                              ? best_response(a, profile, topo, spec)
                              : better_response(a, profile, topo, spec, rng));
    }
    bool changed = false;
    for (std::size_t k = 0; k < actors.size(); ++k) {
      if (!(profile[actors[k]] == proposals[k])) {
        profile[actors[k]] = proposals[k];
        changed = true;
      }
    }
    trace.player_actions += static_cast<long>(actors.size());
    trace.steps_used = step + 1;
    if (changed) ++moves;

    if (cfg.record_trajectory) {
      trace.nu_history.push_back(network_utility(profile, topo, spec.capacity, spec.alpha));
      trace.nu_valid_history.push_back(
          network_utility_valid(profile, topo, spec.capacity, spec.alpha));
      trace.valid_links_history.push_back(valid_link_count(profile, topo, spec.alpha));
      trace.actors_history.push_back(actors);
      trace.changed_history.push_back(changed ? 1 : 0);
    }

    unchanged_streak = changed ? 0 : unchanged_streak + 1;
    if (unchanged_streak >= window) {
      if (is_pure_nash(profile, topo, spec)) {
        trace.converged = true;
        break;
      }
      unchanged_streak = 0;  // quiescence was coincidental; keep playing
    }

    if (deterministic_play) {
      const int phase = (step + 1 + cfg.round_robin_offset) % n;
      const std::uint64_t h = detail::profile_hash(profile, phase);
      const auto it = seen.find(h);
      if (it != seen.end() && it->second.phase == phase && it->second.profile == profile) {
        if (moves > it->second.moves) {
          trace.cycle_detected = true;  // revisit with strategy changes in between
          break;
        }
      } else if (changed && it == seen.end() && seen.size() < kCycleMemory) {
        seen.emplace(h, detail::CycleEntry{profile, phase, moves});
      }
    }
  }

  if (!trace.converged && !trace.cycle_detected && is_pure_nash(profile, topo, spec))
    trace.converged = true;  // budget ended exactly on an equilibrium

  trace.final_profile = profile;
  trace.final_nu = network_utility(profile, topo, spec.capacity, spec.alpha);
  trace.final_nu_valid = network_utility_valid(profile, topo, spec.capacity, spec.alpha);
  trace.final_valid_links = valid_link_count(profile, topo, spec.alpha);
  return trace;
}

// CSV trace export: one row per step. Acting players are '|'-separated.
inline void export_trace_csv(const RunTrace& trace, std::ostream& os) {
  os << "step,actors,nu,nu_valid,valid_links,changed\n";
  char buf[64];
  for (std::size_t t = 0; t < trace.nu_history.size(); ++t) {
    os << t << ',';
    for (std::size_t k = 0; k < trace.actors_history[t].size(); ++k) {
      if (k) os << '|';
      os << trace.actors_history[t][k];
    }
    std::snprintf(buf, sizeof buf, "%.17g", trace.nu_history[t]);
    os << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.17g", trace.nu_valid_history[t]);
    os << ',' << buf << ',' << trace.valid_links_history[t] << ','
       << static_cast<int>(trace.changed_history[t]) << '\n';
  }
}

}  // namespace crn
