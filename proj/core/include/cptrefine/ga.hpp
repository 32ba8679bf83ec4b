#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cptrefine {

enum class CrossoverKind {
  kUniform,  // each gene swapped between the two children with probability 1/2
  kBlend,    // arithmetic blend with a uniform weight per gene
};

enum class MutationKind {
  kGaussian,      // one gene: reals perturbed by N(0, sigma) and clamped; label genes resampled
  kUniformReset,  // one gene resampled uniformly on [0,1)
};

/// Genetic algorithm hyperparameters. Defaults follow the published setup:
/// population 300, 2000 generations, mutation 0.3, elitism 0.05, crossover
/// 0.8, stop after 50 generations without improvement; 10 seeded restarts.
struct GaConfig {
  std::size_t population = 300;
  std::size_t max_generations = 2000;
  double mutation_prob = 0.3;   // per offspring
  double elitism_frac = 0.05;   // ceil(frac * population) survivors per generation
  double crossover_prob = 0.8;  // per pair of parents
  std::size_t stall_limit = 50;
  std::uint64_t seed = 1;
  std::size_t restarts = 10;  // seeds seed, seed+1, ...
  double mutation_sigma = 0.1;
  CrossoverKind crossover = CrossoverKind::kUniform;
  MutationKind mutation = MutationKind::kGaussian;

  /// Throws ValidationError on out-of-range values.
  void validate() const;
  std::size_t elite_count() const;
};

/// Layout of a mixed genome: `label_genes` integer genes taking values in
/// [0, label_count), followed by `real_genes` genes in [0,1].
struct GenomeShape {
  std::size_t label_genes = 0;
  std::uint32_t label_count = 2;
  std::size_t real_genes = 0;

  std::size_t size() const { return label_genes + real_genes; }
};

/// Decoded genome. Internally every gene is a real in [0,1]; label genes are
/// decoded as floor(g * label_count), capped at label_count - 1.
struct Genome {
  std::vector<std::uint32_t> labels;
  std::vector<double> reals;

  friend bool operator==(const Genome&, const Genome&) = default;
};

/// Minimized. Must be safe to call concurrently.
using Fitness = std::function<double(const Genome&)>;

struct GaProgress {
  std::size_t restart = 0;
  std::size_t generation = 0;
  std::uint64_t evaluations = 0;
  double best_score = 0.0;
};
using GaProgressFn = std::function<void(const GaProgress&)>;

struct GaResult {
  Genome best;
  double best_score = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t seed_used = 0;
  std::size_t generations_run = 0;
  /// Lowest fitness in the population after each generation (index 0 is the
  /// initial population) for the reported run.
  std::vector<double> best_history;
};

void decode_genome(const GenomeShape& shape, const std::vector<double>& genes, Genome& out);

/// One seeded run.
GaResult ga_run(const Fitness& fitness, const GenomeShape& shape, const GaConfig& config,
                std::uint64_t seed, std::size_t restart_index = 0,
                const GaProgressFn& progress = {});

/// `config.restarts` runs with seeds seed, seed+1, ...; returns the lowest
/// score (earliest restart on ties) with `evaluations` summed over all runs.
/// Restarts may run on parallel workers; the result does not depend on how
/// many.
GaResult ga_optimize(const Fitness& fitness, const GenomeShape& shape, const GaConfig& config,
                     const GaProgressFn& progress = {});

}  // namespace cptrefine
