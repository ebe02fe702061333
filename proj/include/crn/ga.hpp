// ga.hpp — centralized genetic-algorithm baseline for joint (power, channel)
// assignment, used as the near-optimality reference. Real-coded power genes
// with simulated binary crossover and polynomial mutation; categorical
// channel genes that swap between parents. The SINR constraint is handled by
// a single repair pass that silences below-threshold links.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "crn/phy.hpp"
#include "crn/rng.hpp"

namespace crn {

struct GAConfig {
  int population_size = 64;
  int max_generations = 500;
  double replace_proportion = 0.9;
  int tournament_size = 8;
  double crossover_prob = 0.9;
  double genewise_swap_prob = 0.5;     // channel-gene exchange probability
  double sbx_polynomial_order = 10.0;  // SBX distribution index; also mutation index
  double mutation_prob = 0.1;          // per chromosome; mutates one gene
  int stall_generations = 100;         // early stop; 0 disables
  std::uint64_t rng_seed = 1;

  // Full-scale parameter set used for the reference runs.
  static GAConfig full_scale() {
    GAConfig cfg;
    cfg.population_size = 1000;
    cfg.max_generations = 20000;
    cfg.tournament_size = 500;
    cfg.stall_generations = 0;
    return cfg;
  }

  void validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    if (max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
    if (!(replace_proportion > 0.0) || replace_proportion > 1.0)
      throw std::invalid_argument("replace_proportion must be in (0, 1]");
    if (tournament_size < 1 || tournament_size > population_size)
      throw std::invalid_argument("tournament_size must be in [1, population_size]");
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || genewise_swap_prob < 0.0 ||
        genewise_swap_prob > 1.0 || mutation_prob < 0.0 || mutation_prob > 1.0)
      throw std::invalid_argument("probabilities must be in [0, 1]");
    if (sbx_polynomial_order <= 0.0)
      throw std::invalid_argument("sbx_polynomial_order must be > 0");
    if (stall_generations < 0) throw std::invalid_argument("stall_generations must be >= 0");
  }
};

// 2N genes per individual: a real power in [0, P_max] and a channel drawn
// from the link's availability set.
struct Chromosome {
  std::vector<double> power;
  std::vector<int> channel;
};

struct GAProgressRow {
  int generation = 0;
  double best_nu = 0.0;
  double mean_nu = 0.0;
};

struct GAResult {
  StrategyProfile best_profile;
  double best_nu = 0.0;
  int generations_used = 0;
  std::vector<GAProgressRow> progress;
};

// Nearest-level quantization: gene 0 maps to OFF, otherwise to the closest
// of the Q positive levels.
inline StrategyProfile decode_chromosome(const Chromosome& chrom, const Topology& topo) {
  const int n = topo.link_count();
  const int q = static_cast<int>(topo.power_levels().size());
  StrategyProfile profile(n);
  for (int i = 0; i < n; ++i) {
    const long k = std::lround(chrom.power[i] * q / topo.config.p_max_mw);
    const int level = static_cast<int>(std::clamp<long>(k, 0, q));
    profile[i] = level == 0 ? Strategy::off() : Strategy::make(chrom.channel[i], level - 1);
  }
  return profile;
}

// Constraint repair, one pass in link order: any link transmitting below the
// threshold (under the profile as repaired so far) is switched off. A single
// pass only; zeroing a link can rescue later links in the same pass.
inline void repair_constraints(Chromosome& chrom, const Topology& topo, double alpha) {
  StrategyProfile profile = decode_chromosome(chrom, topo);
  const int n = topo.link_count();
  for (int i = 0; i < n; ++i) {
    if (!profile[i].on()) continue;
    if (sinr(i, profile, topo) < alpha) {
      chrom.power[i] = 0.0;
      profile[i] = Strategy::off();
    }
  }
}

namespace detail {

// Deb's simulated binary crossover on one gene pair, clamped to [lo, hi].
inline std::pair<double, double> sbx_genes(double a, double b, double eta, double lo, double hi,
                                           Rng& rng) {
  const double u = rng.next_double();
  const double beta_q = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
  double c1 = 0.5 * ((1.0 + beta_q) * a + (1.0 - beta_q) * b);
  double c2 = 0.5 * ((1.0 - beta_q) * a + (1.0 + beta_q) * b);
  return {std::clamp(c1, lo, hi), std::clamp(c2, lo, hi)};
}

inline double polynomial_mutation(double x, double eta, double lo, double hi, Rng& rng) {
  const double u = rng.next_double();
  const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                               : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
  return std::clamp(x + delta * (hi - lo), lo, hi);
}

}  // namespace detail

// With probability crossover_prob the pair recombines: power genes through
// SBX, channel genes exchanged genewise; otherwise the parents are copied.
inline std::pair<Chromosome, Chromosome> sbx_crossover(const Chromosome& parent_a,
                                                       const Chromosome& parent_b,
                                                       const GAConfig& cfg, double p_max,
                                                       Rng& rng) {
  if (parent_a.power.size() != parent_b.power.size())
    throw std::invalid_argument("sbx_crossover: parent length mismatch");
  Chromosome a = parent_a, b = parent_b;
  if (!rng.bernoulli(cfg.crossover_prob)) return {a, b};
  for (std::size_t g = 0; g < a.power.size(); ++g) {
    const auto [c1, c2] =
        detail::sbx_genes(parent_a.power[g], parent_b.power[g], cfg.sbx_polynomial_order, 0.0,
                          p_max, rng);
    a.power[g] = c1;
    b.power[g] = c2;
    if (rng.bernoulli(cfg.genewise_swap_prob)) std::swap(a.channel[g], b.channel[g]);
  }
  return {a, b};
}

// Selective mutation: with probability mutation_prob one uniformly chosen
// gene mutates — power genes by polynomial mutation, channel genes by a
// uniform resample from the link's availability.
inline void mutate(Chromosome& chrom, const Topology& topo, const GAConfig& cfg, Rng& rng) {
  if (!rng.bernoulli(cfg.mutation_prob)) return;
  const int n = static_cast<int>(chrom.power.size());
  const int gene = rng.next_int(2 * n);
  if (gene < n) {
    chrom.power[gene] = detail::polynomial_mutation(chrom.power[gene], cfg.sbx_polynomial_order,
                                                    0.0, topo.config.p_max_mw, rng);
  } else {
    const auto& avail = topo.availability[gene - n];
    chrom.channel[gene - n] = avail[rng.next_int(static_cast<int>(avail.size()))];
  }
}

// Generational GA with tournament selection (with replacement) and elitist
// replacement: offspring replace the worst replace_proportion of the
// population. Returns the best decoded profile ever seen and its network
// utility, recomputed on the decoded profile.
inline GAResult ga_optimize(const Topology& topo, CapacityMode mode, const GAConfig& cfg) {
  cfg.validate();
  if (mode.kind == CapacityKind::Continuous)
    throw std::invalid_argument("ga_optimize supports discrete and binary capacity");
  const int n = topo.link_count();
  const double alpha = topo.config.sinr_threshold;
  const double p_max = topo.config.p_max_mw;
  Rng rng(cfg.rng_seed);

  const auto evaluate = [&](Chromosome& chrom) {
    repair_constraints(chrom, topo, alpha);
    return network_utility(decode_chromosome(chrom, topo), topo, mode, alpha);
  };

  std::vector<Chromosome> pop(cfg.population_size);
  std::vector<double> fitness(cfg.population_size);
  for (int k = 0; k < cfg.population_size; ++k) {
    pop[k].power.resize(n);
    pop[k].channel.resize(n);
    for (int i = 0; i < n; ++i) {
      pop[k].power[i] = rng.uniform(0.0, p_max);
      const auto& avail = topo.availability[i];
      pop[k].channel[i] = avail[rng.next_int(static_cast<int>(avail.size()))];
    }
    fitness[k] = evaluate(pop[k]);
  }

  GAResult result;
  int best_idx = static_cast<int>(std::max_element(fitness.begin(), fitness.end()) -
                                  fitness.begin());
  result.best_nu = fitness[best_idx];
  Chromosome best_chrom = pop[best_idx];

  const auto tournament = [&]() {
    int winner = rng.next_int(cfg.population_size);
    for (int t = 1; t < cfg.tournament_size; ++t) {
      const int challenger = rng.next_int(cfg.population_size);
      if (fitness[challenger] > fitness[winner]) winner = challenger;
    }
    return winner;
  };

  const int n_offspring = std::max(
      1, static_cast<int>(std::lround(cfg.replace_proportion * cfg.population_size)));
  int stall = 0;
  std::vector<int> order(cfg.population_size);

  for (int gen = 0; gen < cfg.max_generations; ++gen) {
    std::vector<Chromosome> offspring;
    std::vector<double> offspring_fitness;
    offspring.reserve(n_offspring);
    while (static_cast<int>(offspring.size()) < n_offspring) {
      auto [a, b] = sbx_crossover(pop[tournament()], pop[tournament()], cfg, p_max, rng);
      mutate(a, topo, cfg, rng);
      offspring.push_back(std::move(a));
      if (static_cast<int>(offspring.size()) < n_offspring) {
        mutate(b, topo, cfg, rng);
        offspring.push_back(std::move(b));
      }
    }
    offspring_fitness.resize(offspring.size());
    for (std::size_t k = 0; k < offspring.size(); ++k)
      offspring_fitness[k] = evaluate(offspring[k]);

    // survivors = the best (population - offspring) incumbents
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return fitness[x] > fitness[y]; });
    std::vector<Chromosome> next;
    std::vector<double> next_fitness;
    next.reserve(cfg.population_size);
    const int survivors = cfg.population_size - n_offspring;
    for (int k = 0; k < survivors; ++k) {
      next.push_back(std::move(pop[order[k]]));
      next_fitness.push_back(fitness[order[k]]);
    }
    for (std::size_t k = 0; k < offspring.size(); ++k) {
      next.push_back(std::move(offspring[k]));
      next_fitness.push_back(offspring_fitness[k]);
    }
    pop = std::move(next);
    fitness = std::move(next_fitness);

    const int gen_best = static_cast<int>(std::max_element(fitness.begin(), fitness.end()) -
                                          fitness.begin());
    if (fitness[gen_best] > result.best_nu) {
      result.best_nu = fitness[gen_best];
      best_chrom = pop[gen_best];
      stall = 0;
    } else {
      ++stall;
    }
    result.generations_used = gen + 1;
    const double mean =
        std::accumulate(fitness.begin(), fitness.end(), 0.0) / fitness.size();
    result.progress.push_back({gen + 1, result.best_nu, mean});
    if (cfg.stall_generations > 0 && stall >= cfg.stall_generations) break;
  }

  result.best_profile = decode_chromosome(best_chrom, topo);
  result.best_nu = network_utility(result.best_profile, topo, mode, alpha);
  return result;
}

inline void export_ga_progress_csv(const GAResult& result, std::ostream& os) {
  os << "generation,best_nu,mean_nu\n";
  char buf[64];
  for (const GAProgressRow& row : result.progress) {
    os << row.generation << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.best_nu);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.mean_nu);
    os << buf << '\n';
  }
}

}  // namespace crn
