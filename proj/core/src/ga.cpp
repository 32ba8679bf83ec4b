#include "cptrefine/ga.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>

#include "cptrefine/error.hpp"
#include "cptrefine/parallel.hpp"

namespace cptrefine {

namespace {

using Chromosome = std::vector<double>;

class Breeder {
 public:
  Breeder(const GenomeShape& shape, const GaConfig& config, std::uint64_t seed)
      : shape_(shape), config_(config), rng_(seed) {}

  double uniform() { return unit_(rng_); }

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  Chromosome random_chromosome() {
    Chromosome c(shape_.size());
    for (auto& g : c) g = uniform();
    return c;
  }

  std::size_t tournament(const std::vector<double>& fitness) {
    const std::size_t a = index(fitness.size());
    const std::size_t b = index(fitness.size());
    if (fitness[b] < fitness[a]) return b;
    return a;
  }

  void crossover(Chromosome& x, Chromosome& y) {
    for (std::size_t g = 0; g < x.size(); ++g) {
      if (config_.crossover == CrossoverKind::kUniform) {
        if (uniform() < 0.5) std::swap(x[g], y[g]);
      } else {
        const double w = uniform();
        const double a = x[g];
        const double b = y[g];
        x[g] = w * a + (1.0 - w) * b;
        y[g] = (1.0 - w) * a + w * b;
      }
    }
  }

  void mutate(Chromosome& c) {
    if (c.empty()) return;
    const std::size_t g = index(c.size());
    const bool label_gene = g < shape_.label_genes;
    if (label_gene || config_.mutation == MutationKind::kUniformReset) {
      c[g] = uniform();
      return;
    }
    const double step = std::normal_distribution<double>(0.0, config_.mutation_sigma)(rng_);
    c[g] = std::clamp(c[g] + step, 0.0, 1.0);
  }

 private:
  const GenomeShape& shape_;
  const GaConfig& config_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace

void GaConfig::validate() const {
  if (population < 2) throw ValidationError("GA population must be at least 2");
  if (max_generations < 1) throw ValidationError("GA needs at least one generation");
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(mutation_prob) || !unit(elitism_frac) || !unit(crossover_prob)) {
    throw ValidationError("GA probabilities must lie in [0,1]");
  }
  if (stall_limit < 1) throw ValidationError("GA stall limit must be at least 1");
  if (restarts < 1) throw ValidationError("GA needs at least one restart");
  if (!(mutation_sigma > 0.0)) throw ValidationError("GA mutation sigma must be positive");
  if (elite_count() >= population) throw ValidationError("GA elitism leaves no room for offspring");
}

std::size_t GaConfig::elite_count() const {
  return static_cast<std::size_t>(std::ceil(elitism_frac * static_cast<double>(population)));
}

void decode_genome(const GenomeShape& shape, const std::vector<double>& genes, Genome& out) {
  out.labels.resize(shape.label_genes);
  out.reals.resize(shape.real_genes);
  const double count = static_cast<double>(shape.label_count);
  for (std::size_t g = 0; g < shape.label_genes; ++g) {
    const auto label = static_cast<std::uint32_t>(genes[g] * count);
    out.labels[g] = std::min(label, shape.label_count - 1);
  }
  for (std::size_t g = 0; g < shape.real_genes; ++g) {
    out.reals[g] = std::clamp(genes[shape.label_genes + g], 0.0, 1.0);
  }
}

GaResult ga_run(const Fitness& fitness, const GenomeShape& shape, const GaConfig& config,
                std::uint64_t seed, std::size_t restart_index, const GaProgressFn& progress) {
  config.validate();
  if (shape.label_count < 1) throw ValidationError("genome needs at least one label value");
  Breeder breeder(shape, config, seed);
  const std::size_t pop_size = config.population;
  const std::size_t elites = config.elite_count();

  GaResult result;
  result.seed_used = seed;
  Genome scratch;
  auto evaluate = [&](const Chromosome& c) {
    decode_genome(shape, c, scratch);
    ++result.evaluations;
    return fitness(scratch);
  };

  std::vector<Chromosome> population(pop_size);
  std::vector<double> scores(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    population[i] = breeder.random_chromosome();
    scores[i] = evaluate(population[i]);
  }

  std::vector<std::size_t> order(pop_size);
  auto rank = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  };
  rank();
  double best = scores[order[0]];
  Chromosome best_chromosome = population[order[0]];
  result.best_history.push_back(best);
  std::size_t stall = 0;

  std::vector<Chromosome> next;
  std::vector<double> next_scores;
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    next.clear();
    next_scores.clear();
    for (std::size_t e = 0; e < elites; ++e) {
      next.push_back(population[order[e]]);
      next_scores.push_back(scores[order[e]]);
    }
    while (next.size() < pop_size) {
      Chromosome a = population[breeder.tournament(scores)];
      Chromosome b = population[breeder.tournament(scores)];
      if (breeder.uniform() < config.crossover_prob) breeder.crossover(a, b);
      for (Chromosome* child : {&a, &b}) {
        if (next.size() == pop_size) break;
        if (breeder.uniform() < config.mutation_prob) breeder.mutate(*child);
        next_scores.push_back(evaluate(*child));
        next.push_back(std::move(*child));
      }
    }
    population.swap(next);
    scores.swap(next_scores);
    rank();
    result.generations_run = gen;
    result.best_history.push_back(scores[order[0]]);
    if (scores[order[0]] < best) {
      best = scores[order[0]];
      best_chromosome = population[order[0]];
      stall = 0;
    } else {
      ++stall;
    }
    if (progress) progress({restart_index, gen, result.evaluations, best});
    if (stall >= config.stall_limit) break;
  }

  result.best_score = best;
  decode_genome(shape, best_chromosome, result.best);
  return result;
}

GaResult ga_optimize(const Fitness& fitness, const GenomeShape& shape, const GaConfig& config,
                     const GaProgressFn& progress) {
  config.validate();
  std::vector<std::optional<GaResult>> runs(config.restarts);
  std::mutex progress_mutex;
  GaProgressFn serialized;
  if (progress) {
    serialized = [&](const GaProgress& p) {
      std::lock_guard lock(progress_mutex);
      progress(p);
    };
  }
  parallel_for(config.restarts, [&](std::size_t r) {
    runs[r] = ga_run(fitness, shape, config, config.seed + r, r, serialized);
  });
  std::size_t winner = 0;
  std::uint64_t evaluations = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    evaluations += runs[r]->evaluations;
    if (runs[r]->best_score < runs[winner]->best_score) winner = r;
  }
  GaResult best = std::move(*runs[winner]);
  best.evaluations = evaluations;
  return best;
}

}  // namespace cptrefine
