#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cptrefine/cpt.hpp"

namespace cptrefine {

/// Remove the edge from one parent; rows differing only in that parent share
/// a distribution.
struct PruneSpec {
  std::size_t pruned_parent = 0;

  friend bool operator==(const PruneSpec&, const PruneSpec&) = default;
};

enum class Gate { kAnd, kOr, kXor };

const char* to_string(Gate gate);
Gate gate_from_string(std::string_view name);

/// Route a subset of parents through a deterministic gate node.
///
/// `binarization[j]` is a bitmask over the states of parent `divorced[j]`:
/// states whose bit is set feed input 1 to the gate.
struct DivorceSpec {
  std::vector<std::size_t> divorced;
  Gate gate = Gate::kAnd;
  std::vector<std::uint32_t> binarization;

  friend bool operator==(const DivorceSpec&, const DivorceSpec&) = default;
};

/// Simple canonical model: a deterministic binary node M = f(x) is the child's
/// only parent. `block[row]` is f at that parent configuration.
struct ScmSpec {
  std::vector<std::uint8_t> block;

  friend bool operator==(const ScmSpec&, const ScmSpec&) = default;
};

/// Independence of causal influences with binary mechanisms.
///
/// `mechanisms[i][x]` is P(M_i = 1 | X_i = x). `combiner[m]` is the child state
/// for mechanism configuration m, where bit i of m is the value of M_i.
struct IciSpec {
  std::vector<std::vector<double>> mechanisms;
  std::vector<std::uint32_t> combiner;

  friend bool operator==(const IciSpec&, const IciSpec&) = default;
};

/// ICI with a stochastic lower relationship: `lower_cpt[m * child_card + y]`
/// is p(y | m).
struct PiciSpec {
  std::vector<std::vector<double>> mechanisms;
  std::vector<double> lower_cpt;

  friend bool operator==(const PiciSpec&, const PiciSpec&) = default;
};

/// Blocks of parent indices. Each block shares one mechanism.
using ParentPartition = std::vector<std::vector<std::size_t>>;

/// Throws ValidationError unless `blocks` is a partition of 0..parent_count-1.
void validate_parent_partition(const ParentPartition& blocks, std::size_t parent_count);

/// Rows of a block's mechanism table: product of the block's cardinalities.
std::size_t block_config_count(const CptShape& shape, const std::vector<std::size_t>& block);

/// Index of the block's sub-configuration within `config` (first listed
/// parent varies fastest).
std::size_t block_config_index(const CptShape& shape, const std::vector<std::size_t>& block,
                               std::span<const std::size_t> config);

/// Surjective ICI. `mechanisms[b][c]` is P(M_b = 1 | block b in configuration c).
/// Exactly one of `combiner` (upper-stochastic variant) or `lower_cpt`
/// (double-stochastic variant) is non-empty.
struct SiciSpec {
  ParentPartition blocks;
  std::vector<std::vector<double>> mechanisms;
  std::vector<std::uint32_t> combiner;
  std::vector<double> lower_cpt;

  bool is_upper_stochastic() const { return !combiner.empty(); }

  friend bool operator==(const SiciSpec&, const SiciSpec&) = default;
};

using RefinementSpec =
    std::variant<PruneSpec, DivorceSpec, ScmSpec, IciSpec, PiciSpec, SiciSpec>;

/// Expanded approximation, its score against the truth, and its free
/// parameter count.
struct ApproxResult {
  Cpt cpt;
  double score = 0.0;
  std::uint64_t free_params = 0;
};

template <typename Spec>
struct Refined {
  Spec spec;
  ApproxResult result;
};

struct ParamSavings {
  std::uint64_t free_params = 0;
  std::int64_t savings = 0;  // full count minus free; negative if the method costs more
};

/// Free parameters needed by the refined structure and the saving against the
/// full table.
///
///   prune      rows / s_p * (s_c - 1)
///   divorce    2 * prod(remaining cards) * (s_c - 1)
///   scm        2 * (s_c - 1)
///   ici        sum of parent cardinalities
///   pici       ici count + 2^n * (s_c - 1)
///   us-sici    sum over blocks of prod(block cards)
///   ds-sici    us-sici count + 2^m * (s_c - 1)
ParamSavings param_savings(const RefinementSpec& spec, const CptShape& shape);

std::string method_name(const RefinementSpec& spec);

/// One-line human-readable summary using the signature's labels.
std::string describe(const RefinementSpec& spec, const Signature& signature);

}  // namespace cptrefine
