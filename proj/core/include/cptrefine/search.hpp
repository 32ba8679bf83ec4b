#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cptrefine/cpt.hpp"
#include "cptrefine/ga.hpp"
#include "cptrefine/refinement.hpp"

namespace cptrefine {

struct SearchResult {
  RefinementSpec best_spec;
  double best_score = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t seed_used = 0;
  std::size_t generations_run = 0;
  ApproxResult approx;  // best_spec expanded against the truth
};

struct SearchProgress {
  std::uint64_t evaluations = 0;
  std::uint64_t total = 0;  // 0 when unknown
  double best_score = 0.0;
};
using SearchProgressFn = std::function<void(const SearchProgress&)>;

/// Exact SCM optimum over every non-trivial bipartition of the rows. Ties go
/// to the smallest bipartition mask (row 0 always has M = 0). Throws
/// SearchGuardExceeded above 30 rows.
SearchResult scm_bruteforce(const Cpt& truth, const SearchProgressFn& progress = {});

/// SCM search with the genetic algorithm, one label gene per row. Used when
/// the table is too large to enumerate.
SearchResult scm_ga(const Cpt& truth, const GaConfig& config,
                    const SearchProgressFn& progress = {});

/// Joint GA search over the ICI combiner and mechanism probabilities. The
/// combiner maps the all-zero mechanism configuration to child state 0; every
/// other function except the constant one is reachable from there by
/// relabelling mechanisms. Needs a two-state child.
SearchResult optimize_ici(const Cpt& truth, const GaConfig& config,
                          const SearchProgressFn& progress = {});

/// US-SICI search for one fixed parent partition.
SearchResult optimize_sici_partition(const Cpt& truth, const ParentPartition& blocks,
                                     const GaConfig& config,
                                     const SearchProgressFn& progress = {});

struct PartitionResult {
  ParentPartition blocks;
  SearchResult result;
};

struct SiciSearchResult {
  std::vector<PartitionResult> per_partition;  // enumeration order
  std::size_t best_index = 0;

  const PartitionResult& best() const { return per_partition.at(best_index); }
};

/// Runs optimize_sici_partition over every set partition of the parents
/// except the single block. Ties go to the earliest partition.
SiciSearchResult optimize_sici(const Cpt& truth, const GaConfig& config,
                               const SearchProgressFn& progress = {});

}  // namespace cptrefine
