#include "cptrefine/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>

#include "cptrefine/causal.hpp"
#include "cptrefine/error.hpp"
#include "cptrefine/metrics.hpp"
#include "cptrefine/parallel.hpp"
#include "cptrefine/partitions.hpp"
#include "cptrefine/structural.hpp"

namespace cptrefine {

namespace {

constexpr std::uint64_t kScmChunk = std::uint64_t{1} << 16;

// Sum of row-wise TVDs for a bipartition of a two-state child, using the
// identity sum|x_i - median| = (sum of upper half) - (sum of lower half) over
// each block's sorted values.
class BinaryBipartitionScorer {
 public:
  explicit BinaryBipartitionScorer(const Cpt& truth) {
    const std::size_t rows = truth.row_count();
    order_.resize(rows);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return truth.at(a, 0) < truth.at(b, 0);
    });
    for (auto r : order_) sorted_.push_back(truth.at(r, 0));
  }

  double cost(std::uint64_t mask) const {
    double a[64];
    double b[64];
    std::size_t na = 0;
    std::size_t nb = 0;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      if ((mask >> order_[pos]) & 1u) {
        b[nb++] = sorted_[pos];
      } else {
        a[na++] = sorted_[pos];
      }
    }
    return spread(a, na) + spread(b, nb);
  }

 private:
  static double spread(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) s -= x[i];
    for (std::size_t i = (n + 1) / 2; i < n; ++i) s += x[i];
    return s;
  }

  std::vector<std::size_t> order_;
  std::vector<double> sorted_;
};

ScmSpec scm_spec_of_mask(std::uint64_t mask, std::size_t rows) {
  return {bipartition_labels(mask, rows)};
}

void require_binary_child(const Cpt& truth, const char* what) {
  if (truth.child_card() != 2) {
    throw ValidationError(std::string(what) + " needs a two-state child");
  }
}

// Fitness of a mechanism model (ICI or US-SICI) with binary mechanisms and a
// binary child, evaluated directly on genome values.
class MechanismObjective {
 public:
  MechanismObjective(const Cpt& truth, ParentPartition blocks)
      : shape_(truth.shape()), blocks_(std::move(blocks)) {
    require_binary_child(truth, "mechanism model search");
    validate_parent_partition(blocks_, shape_.parent_count());
    if (blocks_.size() > kMaxSetPartitionItems) {
      throw SearchGuardExceeded("mechanism model search supports at most " +
                                std::to_string(kMaxSetPartitionItems) + " mechanisms");
    }
    std::size_t offset = 0;
    for (const auto& block : blocks_) {
      offsets_.push_back(offset);
      offset += block_config_count(shape_, block);
    }
    real_count_ = offset;
    const std::size_t rows = shape_.row_count();
    gene_index_.resize(rows * blocks_.size());
    for (std::size_t r = 0; r < rows; ++r) {
      const ParentConfig config = shape_.config_of(r);
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        gene_index_[r * blocks_.size() + b] = static_cast<std::uint32_t>(
            offsets_[b] + block_config_index(shape_, blocks_[b], config));
      }
      target_.push_back(truth.at(r, 1));
    }
  }

  GenomeShape genome_shape() const {
    return {(std::size_t{1} << blocks_.size()) - 1, 2, real_count_};
  }

  double score(const Genome& g) const {
    const std::size_t mechanisms = blocks_.size();
    thread_local std::vector<double> joint;
    joint.resize(std::size_t{1} << mechanisms);
    double total = 0.0;
    for (std::size_t r = 0; r < target_.size(); ++r) {
      const std::uint32_t* genes = gene_index_.data() + r * mechanisms;
      joint[0] = 1.0;
      std::size_t filled = 1;
      for (std::size_t b = 0; b < mechanisms; ++b) {
        const double on = g.reals[genes[b]];
        for (std::size_t m = 0; m < filled; ++m) {
          joint[m | filled] = joint[m] * on;
          joint[m] *= 1.0 - on;
        }
        filled <<= 1;
      }
      double yes = 0.0;
      for (std::size_t m = 1; m < filled; ++m) {
        if (g.labels[m - 1]) yes += joint[m];
      }
      total += std::abs(target_[r] - yes);
    }
    return total;
  }

  std::vector<std::uint32_t> combiner(const Genome& g) const {
    std::vector<std::uint32_t> f{0};
    f.insert(f.end(), g.labels.begin(), g.labels.end());
    return f;
  }

  std::vector<std::vector<double>> mechanism_tables(const Genome& g) const {
    std::vector<std::vector<double>> tables;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto begin = g.reals.begin() + static_cast<std::ptrdiff_t>(offsets_[b]);
      tables.emplace_back(begin,
                          begin + static_cast<std::ptrdiff_t>(block_config_count(shape_, blocks_[b])));
    }
    return tables;
  }

  SiciSpec sici_spec(const Genome& g) const {
    return {blocks_, mechanism_tables(g), combiner(g), {}};
  }

  IciSpec ici_spec(const Genome& g) const { return {mechanism_tables(g), combiner(g)}; }

 private:
  CptShape shape_;
  ParentPartition blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t real_count_ = 0;
  std::vector<std::uint32_t> gene_index_;
  std::vector<double> target_;
};

ApproxResult approx_of(const Cpt& truth, const RefinementSpec& spec, Cpt evaluated) {
  Cpt approx = truth.with_probs(evaluated.probs());
  const double s = score_sum_tvd(truth, approx);
  return {std::move(approx), s, param_savings(spec, truth.shape()).free_params};
}

SearchResult ici_result(const Cpt& truth, const MechanismObjective& objective,
                        const GaResult& run) {
  IciSpec spec = objective.ici_spec(run.best);
  ApproxResult approx = approx_of(truth, spec, ici_evaluate(truth.shape(), spec));
  const double s = approx.score;
  return {std::move(spec), s, run.evaluations, run.seed_used, run.generations_run,
          std::move(approx)};
}

SearchResult sici_result(const Cpt& truth, const MechanismObjective& objective,
                         const GaResult& run) {
  SiciSpec spec = objective.sici_spec(run.best);
  ApproxResult approx = approx_of(truth, spec, us_sici_evaluate(truth.shape(), spec));
  const double s = approx.score;
  return {std::move(spec), s, run.evaluations, run.seed_used, run.generations_run,
          std::move(approx)};
}

GaProgressFn forward_progress(const SearchProgressFn& progress) {
  if (!progress) return {};
  // Evaluations summed across restarts.
  struct Totals {
    std::vector<std::uint64_t> per_restart;
    double best = std::numeric_limits<double>::infinity();
  };
  auto totals = std::make_shared<Totals>();
  return [progress, totals](const GaProgress& p) {
    if (totals->per_restart.size() <= p.restart) totals->per_restart.resize(p.restart + 1, 0);
    totals->per_restart[p.restart] = p.evaluations;
    totals->best = std::min(totals->best, p.best_score);
    std::uint64_t sum = 0;
    for (auto e : totals->per_restart) sum += e;
    progress({sum, 0, totals->best});
  };
}

}  // namespace

SearchResult scm_bruteforce(const Cpt& truth, const SearchProgressFn& progress) {
  const std::size_t rows = truth.row_count();
  if (rows > kMaxBipartitionItems) {
    throw SearchGuardExceeded("SCM brute force supports at most " +
                              std::to_string(kMaxBipartitionItems) + " rows, table has " +
                              std::to_string(rows) + "; use the genetic search");
  }
  const std::uint64_t total = bipartition_count(rows);
  const bool binary = truth.child_card() == 2;
  std::optional<BinaryBipartitionScorer> scorer;
  if (binary) scorer.emplace(truth);
  auto cost = [&](std::uint64_t mask) {
    if (scorer) return scorer->cost(mask);
    return fit_and_score(truth, scm_groups(truth.shape(), scm_spec_of_mask(mask, rows)), 0).score;
  };

  struct Best {
    double score = std::numeric_limits<double>::infinity();
    std::uint64_t mask = 0;
  };
  const std::uint64_t chunks = (total + kScmChunk - 1) / kScmChunk;
  std::vector<Best> chunk_best(chunks);
  std::mutex progress_mutex;
  std::uint64_t done = 0;
  Best running;
  parallel_for(chunks, [&](std::size_t c) {
    Best local;
    const std::uint64_t first = 1 + c * kScmChunk;
    const std::uint64_t last = std::min(total, first + kScmChunk - 1);
    for (std::uint64_t i = first; i <= last; ++i) {
      const std::uint64_t mask = i << 1;
      const double s = cost(mask);
      if (strictly_better(s, local.score)) local = {s, mask};
    }
    chunk_best[c] = local;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      done += last - first + 1;
      if (strictly_better(local.score, running.score)) running = local;
      progress({done, total, running.score});
    }
  });
  Best best;
  for (const auto& b : chunk_best) {
    if (strictly_better(b.score, best.score)) best = b;
  }

  ScmSpec spec = scm_spec_of_mask(best.mask, rows);
  ApproxResult approx = scm_fit(truth, spec);
  const double s = approx.score;
  return {std::move(spec), s, total, 0, 0, std::move(approx)};
}

SearchResult scm_ga(const Cpt& truth, const GaConfig& config, const SearchProgressFn& progress) {
  const std::size_t rows = truth.row_count();
  if (rows < 2) throw ValidationError("SCM needs at least two parent configurations");
  const GenomeShape shape{rows, 2, 0};
  auto canonical = [](std::vector<std::uint32_t> labels) {
    if (labels[0] == 1) {
      for (auto& l : labels) l ^= 1u;
    }
    return labels;
  };
  std::optional<BinaryBipartitionScorer> scorer;
  if (truth.child_card() == 2 && rows <= 64) scorer.emplace(truth);
  const double penalty = static_cast<double>(rows) + 1.0;
  Fitness fitness = [&](const Genome& g) {
    const auto labels = canonical(g.labels);
    std::uint64_t ones = 0;
    for (auto l : labels) ones += l;
    if (ones == 0) return penalty;
    if (scorer) {
      std::uint64_t mask = 0;
      for (std::size_t r = 0; r < rows; ++r) mask |= std::uint64_t{labels[r]} << r;
      return scorer->cost(mask);
    }
    return fit_and_score(truth, RowPartition::from_labels(labels), 0).score;
  };
  GaResult run = ga_optimize(fitness, shape, config, forward_progress(progress));
  const auto labels = canonical(run.best.labels);
  ScmSpec spec{std::vector<std::uint8_t>(labels.begin(), labels.end())};
  ApproxResult approx = scm_fit(truth, spec);
  const double s = approx.score;
  return {std::move(spec), s, run.evaluations, run.seed_used, run.generations_run,
          std::move(approx)};
}

SearchResult optimize_ici(const Cpt& truth, const GaConfig& config,
                          const SearchProgressFn& progress) {
  require_binary_child(truth, "ICI search");
  ParentPartition singletons;
  for (std::size_t i = 0; i < truth.shape().parent_count(); ++i) singletons.push_back({i});
  const MechanismObjective objective(truth, singletons);
  const Fitness fitness = [&](const Genome& g) { return objective.score(g); };
  GaResult run = ga_optimize(fitness, objective.genome_shape(), config, forward_progress(progress));
  return ici_result(truth, objective, run);
}

SearchResult optimize_sici_partition(const Cpt& truth, const ParentPartition& blocks,
                                     const GaConfig& config, const SearchProgressFn& progress) {
  require_binary_child(truth, "SICI search");
  const MechanismObjective objective(truth, blocks);
  const Fitness fitness = [&](const Genome& g) { return objective.score(g); };
  GaResult run = ga_optimize(fitness, objective.genome_shape(), config, forward_progress(progress));
  return sici_result(truth, objective, run);
}

SiciSearchResult optimize_sici(const Cpt& truth, const GaConfig& config,
                               const SearchProgressFn& progress) {
  require_binary_child(truth, "SICI search");
  config.validate();
  const std::size_t n = truth.shape().parent_count();
  std::vector<MechanismObjective> objectives;
  std::vector<ParentPartition> partitions;
  for_each_restricted_growth_string(n, [&](const std::vector<std::uint32_t>& rgs) {
    ParentPartition blocks = blocks_of(rgs);
    if (blocks.size() < 2) return;
    objectives.emplace_back(truth, blocks);
    partitions.push_back(std::move(blocks));
  });
  if (partitions.empty()) throw ValidationError("SICI search needs at least two parents");

  // One job per (partition, restart); each job is a self-contained seeded run.
  const std::size_t restarts = config.restarts;
  std::vector<std::optional<GaResult>> runs(partitions.size() * restarts);
  std::mutex progress_mutex;
  std::uint64_t evaluations = 0;
  double running_best = std::numeric_limits<double>::infinity();
  parallel_for(runs.size(), [&](std::size_t job) {
    const std::size_t p = job / restarts;
    const std::size_t r = job % restarts;
    const MechanismObjective& objective = objectives[p];
    const Fitness fitness = [&](const Genome& g) { return objective.score(g); };
    runs[job] = ga_run(fitness, objective.genome_shape(), config, config.seed + r, r);
    if (progress) {
      std::lock_guard lock(progress_mutex);
      evaluations += runs[job]->evaluations;
      running_best = std::min(running_best, runs[job]->best_score);
      progress({evaluations, 0, running_best});
    }
  });

  SiciSearchResult out;
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    std::size_t winner = p * restarts;
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
      const auto& run = *runs[p * restarts + r];
      total += run.evaluations;
      if (run.best_score < runs[winner]->best_score) winner = p * restarts + r;
    }
    GaResult best = std::move(*runs[winner]);
    best.evaluations = total;
    out.per_partition.push_back({partitions[p], sici_result(truth, objectives[p], best)});
    if (strictly_better(out.per_partition.back().result.best_score,
                        out.per_partition[out.best_index].result.best_score)) {
      out.best_index = p;
    }
  }
  return out;
}

}  // namespace cptrefine
