// games.hpp — per-player utilities, strategy enumeration, best/better
// response and pure Nash equilibrium checks.
//
// Utility regimes:
//   Local:              own capacity, with a -1 penalty for transmitting
//                       below the SINR threshold; optional power-correction
//                       bonus w * (1 - p/P_max).
//   PotentialIdentical: the full network utility of the deviated profile.
//   PotentialMarginal:  own term minus the capacity the deviation costs the
//                       other links; same potential function, cheaper.
//
// Evaluation convention: a candidate of the acting link contributes to other
// links' interference as a term appended after all opponent terms (which
// accumulate in ascending link order). The acting link's own SINR uses the
// plain ascending opponent sum, identical to phy::sinr on the substituted
// profile. Test oracles follow the same convention.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crn/phy.hpp"
#include "crn/rng.hpp"
#include "crn/scenario.hpp"

namespace crn {

enum class InfoModel { Local, PotentialIdentical, PotentialMarginal };

struct GameSpec {
  CapacityMode capacity;
  InfoModel info = InfoModel::Local;
  bool power_correction = false;
  double alpha = 10.0;  // linear

  bool potential() const { return info != InfoModel::Local; }

  void validate() const {
    if (power_correction && info != InfoModel::Local)
      throw std::invalid_argument("power correction applies to the local game only");
    if (power_correction && !capacity.enforce_threshold)
      throw std::invalid_argument("power correction requires the SINR threshold");
    if (!capacity.enforce_threshold && capacity.kind != CapacityKind::Continuous)
      throw std::invalid_argument("only continuous capacity may disable the threshold");
  }
};

// Strategy order: OFF first, then channel by channel (ascending index),
// lowest to highest transmission power within each channel. First
// encountered wins utility ties in best response.
inline std::vector<Strategy> enumerate_strategies(int link, const Topology& topo) {
  std::vector<Strategy> out;
  const int q = static_cast<int>(topo.power_levels().size());
  out.reserve(1 + topo.availability[link].size() * q);
  out.push_back(Strategy::off());
  for (int channel : topo.availability[link])
    for (int p = 0; p < q; ++p) out.push_back(Strategy::make(channel, p));
  return out;
}

inline int strategy_index(const std::vector<Strategy>& strategies, const Strategy& s) {
  for (std::size_t k = 0; k < strategies.size(); ++k)
    if (strategies[k] == s) return static_cast<int>(k);
  return -1;
}

struct CandidateUtility {
  double value = 0.0;
  double self_capacity = 0.0;  // achieved own lambda * C, the potential tie-break key
};

// Fixed view of one player's decision problem against frozen opponents:
// precomputes the interference sums so that every candidate strategy is
// evaluated in O(1) (local) or O(N) (potential marginal).
class PlayerView {
 public:
  PlayerView(int link, const StrategyProfile& profile, const Topology& topo,
             const GameSpec& spec)
      : link_(link), profile_(&profile), topo_(&topo), spec_(&spec) {
    const int n = topo.link_count();
    const int f = topo.config.channel_count;
    own_intf_.assign(f, 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == link) continue;
      const Strategy& sj = profile[j];
      if (sj.on()) own_intf_[sj.channel] += transmit_power(topo, sj) * topo.gain(j, link);
    }
    if (spec.info == InfoModel::PotentialMarginal) {
      others_intf_.assign(n, 0.0);
      others_base_.assign(n, 0.0);
      others_base_sum_ = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == link) continue;
        const Strategy& sj = profile[j];
        if (!sj.on()) continue;
        double intf = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == j || k == link) continue;
          const Strategy& sk = profile[k];
          if (sk.on() && sk.channel == sj.channel)
            intf += transmit_power(topo, sk) * topo.gain(k, j);
        }
        others_intf_[j] = intf;
        const double g = transmit_power(topo, sj) * topo.gain(j, j) /
                         (topo.config.noise_mw + intf);
        others_base_[j] = gated_capacity(g, topo.config.bandwidth(sj.channel));
        others_base_sum_ += others_base_[j];
      }
    }
  }

  double candidate_sinr(const Strategy& c) const {
    if (!c.on()) return 0.0;
    return transmit_power(*topo_, c) * topo_->gain(link_, link_) /
           (topo_->config.noise_mw + own_intf_[c.channel]);
  }

  CandidateUtility evaluate(const Strategy& c) const {
    const double s = candidate_sinr(c);
    const double self_cap =
        c.on() ? gated_capacity(s, topo_->config.bandwidth(c.channel)) : 0.0;
    switch (spec_->info) {
      case InfoModel::Local: {
        if (!c.on()) return {0.0, 0.0};
        if (spec_->capacity.enforce_threshold && s < spec_->alpha) return {-1.0, self_cap};
        double u = capacity_from_sinr(s, topo_->config.bandwidth(c.channel), spec_->capacity,
                                      spec_->alpha, topo_->config.max_modulation);
        if (spec_->power_correction)
          u += topo_->config.bandwidth(c.channel) *
               (1.0 - transmit_power(*topo_, c) / topo_->config.p_max_mw);
        return {u, self_cap};
      }
      case InfoModel::PotentialIdentical: {
        StrategyProfile deviated = *profile_;
        deviated[link_] = c;
        return {network_utility(deviated, *topo_, spec_->capacity, spec_->alpha), self_cap};
      }
      case InfoModel::PotentialMarginal: {
        const double own = self_cap;
        const int n = topo_->link_count();
        double others = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j == link_) continue;
          const Strategy& sj = (*profile_)[j];
          if (!sj.on()) continue;
          double intf = others_intf_[j];
          if (c.on() && sj.channel == c.channel)
            intf += transmit_power(*topo_, c) * topo_->gain(link_, j);
          const double g = transmit_power(*topo_, sj) * topo_->gain(j, j) /
                           (topo_->config.noise_mw + intf);
          others += gated_capacity(g, topo_->config.bandwidth(sj.channel));
        }
        return {own - (others_base_sum_ - others), self_cap};
      }
    }
    return {};
  }

  double utility(const Strategy& c) const { return evaluate(c).value; }

 private:
  // lambda_j * C_j as network_utility counts it: zero when the mode enforces
  // the threshold and the link is below it.
  double gated_capacity(double sinr_linear, double bandwidth) const {
    if (spec_->capacity.enforce_threshold && sinr_linear < spec_->alpha) return 0.0;
    return capacity_from_sinr(sinr_linear, bandwidth, spec_->capacity, spec_->alpha,
                              topo_->config.max_modulation);
  }

  int link_;
  const StrategyProfile* profile_;
  const Topology* topo_;
  const GameSpec* spec_;
  std::vector<double> own_intf_;
  std::vector<double> others_intf_;
  std::vector<double> others_base_;
  double others_base_sum_ = 0.0;
};

// Eq.-9 style local utility of `candidate` against the rest of `profile`.
inline double utility_local(int link, const Strategy& candidate, const StrategyProfile& profile,
                            const Topology& topo, const GameSpec& spec) {
  GameSpec local = spec;
  local.info = InfoModel::Local;
  local.power_correction = false;
  return PlayerView(link, profile, topo, local).utility(candidate);
}

// Local utility with the power-correction bonus: C + w * (1 - p / P_max)
// for valid transmissions; OFF earns 0, not the bonus.
inline double utility_local_power(int link, const Strategy& candidate,
                                  const StrategyProfile& profile, const Topology& topo,
                                  const GameSpec& spec) {
  GameSpec local = spec;
  local.info = InfoModel::Local;
  local.power_correction = true;
  return PlayerView(link, profile, topo, local).utility(candidate);
}

// Identical-interest utility: the network utility of the deviated profile.
inline double utility_potential_identical(int link, const Strategy& candidate,
                                          const StrategyProfile& profile, const Topology& topo,
                                          const GameSpec& spec) {
  GameSpec pot = spec;
  pot.info = InfoModel::PotentialIdentical;
  pot.power_correction = false;
  return PlayerView(link, profile, topo, pot).utility(candidate);
}

// Marginal-contribution utility: own term minus the capacity the other
// links lose because this link is active. Same potential function as the
// identical-interest game.
inline double utility_potential_marginal(int link, const Strategy& candidate,
                                         const StrategyProfile& profile, const Topology& topo,
                                         const GameSpec& spec) {
  GameSpec pot = spec;
  pot.info = InfoModel::PotentialMarginal;
  pot.power_correction = false;
  return PlayerView(link, profile, topo, pot).utility(candidate);
}

inline double utility(int link, const Strategy& candidate, const StrategyProfile& profile,
                      const Topology& topo, const GameSpec& spec) {
  return PlayerView(link, profile, topo, spec).utility(candidate);
}

// Argmax over the player's strategies. Tie handling: if the current
// strategy attains the maximum utility the player stays (a switch with
// zero gain would make quiescence-based NE detection unsound). Otherwise,
// potential-game players prefer the higher own capacity among tied
// strategies; remaining ties fall to enumeration order (earliest channel,
// lowest power first).
inline Strategy best_response(int link, const StrategyProfile& profile, const Topology& topo,
                              const GameSpec& spec) {
  const PlayerView view(link, profile, topo, spec);
  const auto strategies = enumerate_strategies(link, topo);
  CandidateUtility best = view.evaluate(strategies[0]);
  Strategy best_s = strategies[0];
  for (std::size_t k = 1; k < strategies.size(); ++k) {
    const CandidateUtility u = view.evaluate(strategies[k]);
    const bool better =
        u.value > best.value ||
        (spec.potential() && u.value == best.value && u.self_capacity > best.self_capacity);
    if (better) {
      best = u;
      best_s = strategies[k];
    }
  }
  if (view.utility(profile[link]) == best.value) return profile[link];
  return best_s;
}

// A uniformly random strictly-improving strategy, or the current one if no
// improvement exists.
inline Strategy better_response(int link, const StrategyProfile& profile, const Topology& topo,
                                const GameSpec& spec, Rng& rng) {
  const PlayerView view(link, profile, topo, spec);
  const double current = view.utility(profile[link]);
  std::vector<Strategy> improving;
  for (const Strategy& s : enumerate_strategies(link, topo))
    if (view.utility(s) > current) improving.push_back(s);
  if (improving.empty()) return profile[link];
  return improving[rng.next_int(static_cast<int>(improving.size()))];
}

inline bool is_pure_nash(const StrategyProfile& profile, const Topology& topo,
                         const GameSpec& spec) {
  const int n = topo.link_count();
  for (int i = 0; i < n; ++i) {
    const PlayerView view(i, profile, topo, spec);
    const double current = view.utility(profile[i]);
    for (const Strategy& s : enumerate_strategies(i, topo))
      if (view.utility(s) > current) return false;
  }
  return true;
}

inline StrategyProfile random_profile(const Topology& topo, Rng& rng) {
  StrategyProfile profile(topo.link_count());
  for (int i = 0; i < topo.link_count(); ++i) {
    const auto strategies = enumerate_strategies(i, topo);
    profile[i] = strategies[rng.next_int(static_cast<int>(strategies.size()))];
  }
  return profile;
}

// Max relative discrepancy between the utility change and the network
// utility change over random unilateral deviations; zero (up to rounding)
// certifies the exact-potential property.
inline double check_potential_identity(const Topology& topo, const GameSpec& spec, int trials,
                                       Rng& rng) {
  if (!spec.potential())
    throw std::invalid_argument("check_potential_identity requires a potential info model");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    StrategyProfile profile = random_profile(topo, rng);
    const int link = rng.next_int(topo.link_count());
    const auto strategies = enumerate_strategies(link, topo);
    const Strategy candidate = strategies[rng.next_int(static_cast<int>(strategies.size()))];
    const PlayerView view(link, profile, topo, spec);
    const double du = view.utility(candidate) - view.utility(profile[link]);
    const double nu_before = network_utility(profile, topo, spec.capacity, spec.alpha);
    StrategyProfile deviated = profile;
    deviated[link] = candidate;
    const double nu_after = network_utility(deviated, topo, spec.capacity, spec.alpha);
    const double dv = nu_after - nu_before;
    const double denom = std::max({1.0, std::fabs(du), std::fabs(dv)});
    worst = std::max(worst, std::fabs(du - dv) / denom);
  }
  return worst;
}

}  // namespace crn
