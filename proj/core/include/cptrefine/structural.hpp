#pragma once

#include <functional>

#include "cptrefine/cpt.hpp"
#include "cptrefine/grouping.hpp"
#include "cptrefine/refinement.hpp"

namespace cptrefine {

/// Median-fit a row partition, expand it and score it against the truth.
ApproxResult fit_and_score(const Cpt& truth, const RowPartition& partition,
                           std::uint64_t free_params);

// -- pruning ----------------------------------------------------------------

/// Rows sharing a configuration of every parent but the pruned one form a group.
RowPartition prune_groups(const CptShape& shape, const PruneSpec& spec);

/// Tries every single-parent prune; lowest score wins, ties go to the lowest
/// parent index. Needs at least two parents.
Refined<PruneSpec> prune_best(const Cpt& truth);

// -- divorcing --------------------------------------------------------------

/// Gate over binary inputs; XOR is parity for more than two inputs.
std::uint8_t apply_gate(Gate gate, std::span<const std::uint8_t> inputs);

/// Throws ValidationError on repeated or out-of-range divorced parents, fewer
/// than two divorced parents, no remaining parent, or a binarization that maps
/// no state or every state to 1.
void validate_divorce(const CptShape& shape, const DivorceSpec& spec);

/// Rows agreeing on the gate output and on every remaining parent form a group.
RowPartition divorce_groups(const CptShape& shape, const DivorceSpec& spec);

/// Visits every divorce of `block_size` parents in lexicographic order of
/// (parent subset, gate AND < OR < XOR, binarization masks).
void for_each_divorce(const CptShape& shape, std::size_t block_size,
                      const std::function<void(const DivorceSpec&)>& visit);

/// Exhaustive divorce search; the first spec in lexicographic order wins ties.
/// Requires 2 <= block_size < number of parents.
Refined<DivorceSpec> divorce_best(const Cpt& truth, std::size_t block_size = 2);

// -- simple canonical model -------------------------------------------------

/// Throws ValidationError if the spec's length is wrong, a label is not 0/1,
/// or one block is empty.
void validate_scm(const CptShape& shape, const ScmSpec& spec);

RowPartition scm_groups(const CptShape& shape, const ScmSpec& spec);

/// Median fit of the two blocks. Free parameters: 2 * (child_card - 1).
ApproxResult scm_fit(const Cpt& truth, const ScmSpec& spec);

}  // namespace cptrefine
