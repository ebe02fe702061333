// learning.hpp — no-external-regret learning over the local game:
// exponential weights (FS) and regret matching (HM), with informed players
// who observe the utility vector over all their own strategies each step.
// Includes the regret and empirical coarse-correlated-equilibrium audits.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "crn/games.hpp"

namespace crn {

enum class LearningAlgorithm { FS, HM };
enum class LearningScheduler { Synchronous, AsynchronousBernoulli };

struct LearningConfig {
  LearningAlgorithm algorithm = LearningAlgorithm::FS;
  double beta = 0.1;                // FS only
  long total_steps = 200000;        // 10x the repeated game's default budget
  double averaging_window = 0.1;    // fraction of final steps used for reporting
  std::uint64_t rng_seed = 1;
  LearningScheduler scheduler = LearningScheduler::Synchronous;

  void validate() const {
    if (algorithm == LearningAlgorithm::FS && !(beta > 0.0))
      throw std::invalid_argument("FS requires beta > 0");
    if (total_steps < 1) throw std::invalid_argument("total_steps must be >= 1");
    if (!(averaging_window > 0.0) || averaging_window > 1.0)
      throw std::invalid_argument("averaging_window must be in (0, 1]");
  }
};

// Per-player learner state. cum_utility accumulates the informed utility
// vector (drives FS and the regret report); cum_regret accumulates
// u(s) - u(realized) (drives HM).
struct LearnerState {
  std::vector<double> probs;
  std::vector<double> cum_utility;
  std::vector<double> cum_regret;
  double cum_realized = 0.0;
  long t = 0;

  explicit LearnerState(int n_strategies = 0)
      : probs(n_strategies, n_strategies > 0 ? 1.0 / n_strategies : 0.0),
        cum_utility(n_strategies, 0.0),
        cum_regret(n_strategies, 0.0) {}
};

// FS / Hedge: q(s) proportional to (1+beta)^U(s). Exponents are shifted by
// max U before exponentiation, which is mathematically identity and keeps
// the weights finite for any cumulative utility.
inline void fs_update(LearnerState& state, const std::vector<double>& utility_vec, double beta) {
  const std::size_t n = state.cum_utility.size();
  if (utility_vec.size() != n) throw std::invalid_argument("fs_update: size mismatch");
  for (std::size_t s = 0; s < n; ++s) {
    if (!std::isfinite(utility_vec[s])) throw std::runtime_error("fs_update: non-finite utility");
    state.cum_utility[s] += utility_vec[s];
  }
  double max_u = state.cum_utility[0];
  for (double u : state.cum_utility) max_u = std::max(max_u, u);
  double z = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    state.probs[s] = std::pow(1.0 + beta, state.cum_utility[s] - max_u);
    z += state.probs[s];
  }
  for (std::size_t s = 0; s < n; ++s) state.probs[s] /= z;
  ++state.t;
}

// HM / regret matching: q(s) proportional to positive cumulative regret;
// uniform when no strategy has positive regret.
inline void hm_update(LearnerState& state, const std::vector<double>& utility_vec,
                      int realized_strategy) {
  const std::size_t n = state.cum_regret.size();
  if (utility_vec.size() != n) throw std::invalid_argument("hm_update: size mismatch");
  const double realized = utility_vec[realized_strategy];
  for (std::size_t s = 0; s < n; ++s) state.cum_regret[s] += utility_vec[s] - realized;
  double z = 0.0;
  for (std::size_t s = 0; s < n; ++s) z += std::max(state.cum_regret[s], 0.0);
  if (z > 0.0) {
    for (std::size_t s = 0; s < n; ++s) state.probs[s] = std::max(state.cum_regret[s], 0.0) / z;
  } else {
    for (std::size_t s = 0; s < n; ++s) state.probs[s] = 1.0 / static_cast<double>(n);
  }
  ++state.t;
}

// Utility of every own strategy against the opponents' realized play this
// step (the informed-player observation). Requires a local-information game.
inline std::vector<double> informed_utility_vector(int link, const StrategyProfile& realized,
                                                   const Topology& topo, const GameSpec& spec) {
  if (spec.info != InfoModel::Local)
    throw std::invalid_argument("informed players learn over the local game");
  const PlayerView view(link, realized, topo, spec);
  const auto strategies = enumerate_strategies(link, topo);
  std::vector<double> out(strategies.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) out[s] = view.utility(strategies[s]);
  return out;
}

struct LearningTrace {
  LearningAlgorithm algorithm = LearningAlgorithm::FS;
  long total_steps = 0;
  long window_start = 0;  // first step included in the reporting window
  std::vector<double> nu_history;
  std::vector<double> nu_valid_history;
  std::vector<int> valid_links_history;
  std::vector<LearnerState> states;                  // final learner states
  std::vector<std::vector<Strategy>> strategy_sets;  // per link, enumeration order
  // Realized plays sampled across the whole run (every audit_stride steps).
  // The no-regret certificate speaks about the full history of play, not the
  // tail: on cyclic instances the play rotates through regimes, so a tail
  // window can be exploitable while the run-wide distribution is a near-CCE.
  std::vector<StrategyProfile> audit_profiles;
  long audit_stride = 1;
  double window_nu_mean = 0.0;
  double window_nu_valid_mean = 0.0;
  double window_valid_links_mean = 0.0;
  double max_observed_utility = 0.0;  // max realized per-step utility over all players
};

// Runs the learning process: every step all players sample from their mixed
// strategies simultaneously, observe their informed utility vectors against
// the realized play, and update. Reported metrics are means over the final
// averaging window.
inline LearningTrace run_learning(const Topology& topo, const GameSpec& spec,
                                  const LearningConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (spec.info != InfoModel::Local)
    throw std::invalid_argument("run_learning requires the local game");
  const int n = topo.link_count();
  Rng rng(cfg.rng_seed);

  LearningTrace trace;
  trace.algorithm = cfg.algorithm;
  trace.total_steps = cfg.total_steps;
  trace.strategy_sets.resize(n);
  trace.states.reserve(n);
  for (int i = 0; i < n; ++i) {
    trace.strategy_sets[i] = enumerate_strategies(i, topo);
    trace.states.emplace_back(static_cast<int>(trace.strategy_sets[i].size()));
  }
  trace.window_start =
      cfg.total_steps - std::max<long>(1, std::lround(cfg.averaging_window * cfg.total_steps));
  constexpr long kMaxAuditProfiles = 20000;
  trace.audit_stride = std::max(1L, (cfg.total_steps + kMaxAuditProfiles - 1) / kMaxAuditProfiles);

  StrategyProfile realized(n);
  std::vector<int> realized_idx(n, 0);
  std::vector<std::uint8_t> acting(n, 1);

  const auto sample = [&rng](const std::vector<double>& probs) {
    const double r = rng.next_double();
    double acc = 0.0;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      acc += probs[s];
      if (r < acc) return static_cast<int>(s);
    }
    return static_cast<int>(probs.size()) - 1;
  };

  double window_nu = 0.0, window_nu_valid = 0.0, window_valid = 0.0;
  long window_count = 0;

  for (long t = 0; t < cfg.total_steps; ++t) {
    if (cfg.scheduler == LearningScheduler::AsynchronousBernoulli && t > 0) {
      const double p = 1.0 / static_cast<double>(n);
      for (int i = 0; i < n; ++i) acting[i] = rng.bernoulli(p) ? 1 : 0;
    }
    for (int i = 0; i < n; ++i) {
      if (acting[i]) {
        realized_idx[i] = sample(trace.states[i].probs);
        realized[i] = trace.strategy_sets[i][realized_idx[i]];
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!acting[i]) continue;
      const std::vector<double> u = informed_utility_vector(i, realized, topo, spec);
      const double u_real = u[realized_idx[i]];
      trace.states[i].cum_realized += u_real;
      trace.max_observed_utility = std::max(trace.max_observed_utility, u_real);
      if (cfg.algorithm == LearningAlgorithm::FS)
        fs_update(trace.states[i], u, cfg.beta);
      else
        hm_update(trace.states[i], u, realized_idx[i]);
    }

    const double nu = network_utility(realized, topo, spec.capacity, spec.alpha);
    const double nu_val = network_utility_valid(realized, topo, spec.capacity, spec.alpha);
    const int valid = valid_link_count(realized, topo, spec.alpha);
    trace.nu_history.push_back(nu);
    trace.nu_valid_history.push_back(nu_val);
    trace.valid_links_history.push_back(valid);
    if (t % trace.audit_stride == 0) trace.audit_profiles.push_back(realized);
    if (t >= trace.window_start) {
      window_nu += nu;
      window_nu_valid += nu_val;
      window_valid += valid;
      ++window_count;
    }
  }

  trace.window_nu_mean = window_nu / static_cast<double>(window_count);
  trace.window_nu_valid_mean = window_nu_valid / static_cast<double>(window_count);
  trace.window_valid_links_mean = window_valid / static_cast<double>(window_count);
  return trace;
}

// Average external regret of one player: best fixed-strategy hindsight
// payoff minus realized payoff, per step. The no-regret certificate drives
// this to zero as the run grows.
inline double average_external_regret(int link, const LearningTrace& trace) {
  const LearnerState& st = trace.states[link];
  if (st.t == 0) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  if (trace.algorithm == LearningAlgorithm::HM) {
    for (double r : st.cum_regret) best = std::max(best, r);
  } else {
    for (double u : st.cum_utility) best = std::max(best, u - st.cum_realized);
  }
  return best / static_cast<double>(st.t);
}

struct CceGapReport {
  double gap = 0.0;       // max over players and fixed deviations
  long samples = 0;       // window profiles audited
  bool low_confidence = false;
};

// Treats the recorded run-wide plays as the empirical joint distribution and
// measures the best fixed-deviation gain over it. A gap <= epsilon means the
// empirical play is an epsilon coarse correlated equilibrium. This replays
// stored profiles through the utility evaluator, an independent route from
// the cumulative-regret bookkeeping inside the learners.
inline CceGapReport empirical_cce_gap(const LearningTrace& trace, const Topology& topo,
                                      const GameSpec& spec, long sample_budget = 10000000) {
  const int n = topo.link_count();
  long per_sample_cost = 0;
  for (int i = 0; i < n; ++i)
    per_sample_cost += static_cast<long>(trace.strategy_sets[i].size());
  const long total = static_cast<long>(trace.audit_profiles.size());
  if (total == 0) throw std::invalid_argument("empirical_cce_gap: no recorded plays");
  long stride = 1;
  if (per_sample_cost > 0 && total * per_sample_cost > sample_budget)
    stride = (total * per_sample_cost + sample_budget - 1) / sample_budget;

  std::vector<std::vector<double>> dev_sum(n);
  for (int i = 0; i < n; ++i) dev_sum[i].assign(trace.strategy_sets[i].size(), 0.0);
  std::vector<double> realized_sum(n, 0.0);
  long used = 0;
  for (long k = 0; k < total; k += stride) {
    const StrategyProfile& play = trace.audit_profiles[k];
    for (int i = 0; i < n; ++i) {
      const std::vector<double> u = informed_utility_vector(i, play, topo, spec);
      const int idx = strategy_index(trace.strategy_sets[i], play[i]);
      realized_sum[i] += u[idx];
      for (std::size_t s = 0; s < u.size(); ++s) dev_sum[i][s] += u[s];
    }
    ++used;
  }

  CceGapReport report;
  report.samples = used;
  report.low_confidence = used < 100;
  double gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < dev_sum[i].size(); ++s)
      gap = std::max(gap, (dev_sum[i][s] - realized_sum[i]) / static_cast<double>(used));
  }
  report.gap = gap;
  return report;
}

// CSV export: per-step realized network metrics.
inline void export_learning_csv(const LearningTrace& trace, std::ostream& os) {
  os << "step,nu,nu_valid,valid_links\n";
  char buf[64];
  for (std::size_t t = 0; t < trace.nu_history.size(); ++t) {
    os << t << ',';
    std::snprintf(buf, sizeof buf, "%.17g", trace.nu_history[t]);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", trace.nu_valid_history[t]);
    os << buf << ',' << trace.valid_links_history[t] << '\n';
  }
}

// CSV export: final mixed strategy of every player as (link, strategy,
// channel, power_index, probability) rows.
inline void export_mixed_strategies_csv(const LearningTrace& trace, std::ostream& os) {
  os << "link,strategy,channel,power_index,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    for (std::size_t s = 0; s < trace.states[i].probs.size(); ++s) {
      const Strategy& st = trace.strategy_sets[i][s];
      std::snprintf(buf, sizeof buf, "%.17g", trace.states[i].probs[s]);
      os << i << ',' << s << ',' << st.channel << ',' << st.power_index << ',' << buf << '\n';
    }
  }
}

}  // namespace crn
