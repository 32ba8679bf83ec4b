#include "cptrefine/structural.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "cptrefine/error.hpp"
#include "cptrefine/metrics.hpp"

namespace cptrefine {

ApproxResult fit_and_score(const Cpt& truth, const RowPartition& partition,
                           std::uint64_t free_params) {
  Cpt approx = expand_grouped(truth.signature(), fit_grouping(truth, partition));
  const double s = score_sum_tvd(truth, approx);
  return {std::move(approx), s, free_params};
}

RowPartition prune_groups(const CptShape& shape, const PruneSpec& spec) {
  if (spec.pruned_parent >= shape.parent_count()) {
    throw ValidationError("pruned parent " + std::to_string(spec.pruned_parent) +
                          " out of range");
  }
  std::vector<std::uint32_t> labels(shape.row_count());
  for (std::size_t r = 0; r < labels.size(); ++r) {
    ParentConfig config = shape.config_of(r);
    config[spec.pruned_parent] = 0;
    labels[r] = static_cast<std::uint32_t>(shape.row_index(config));
  }
  return RowPartition::from_labels(labels);
}

Refined<PruneSpec> prune_best(const Cpt& truth) {
  const CptShape& shape = truth.shape();
  if (shape.parent_count() < 2) throw ValidationError("pruning search needs at least two parents");
  std::optional<Refined<PruneSpec>> best;
  for (std::size_t p = 0; p < shape.parent_count(); ++p) {
    const PruneSpec spec{p};
    ApproxResult r = fit_and_score(truth, prune_groups(shape, spec),
                                   param_savings(spec, shape).free_params);
    if (!best || strictly_better(r.score, best->result.score)) best = Refined<PruneSpec>{spec, std::move(r)};
  }
  return std::move(*best);
}

std::uint8_t apply_gate(Gate gate, std::span<const std::uint8_t> inputs) {
  switch (gate) {
    case Gate::kAnd:
      return std::all_of(inputs.begin(), inputs.end(), [](auto v) { return v != 0; });
    case Gate::kOr:
      return std::any_of(inputs.begin(), inputs.end(), [](auto v) { return v != 0; });
    case Gate::kXor: {
      std::uint8_t parity = 0;
      for (auto v : inputs) parity ^= (v != 0);
      return parity;
    }
  }
  return 0;
}

void validate_divorce(const CptShape& shape, const DivorceSpec& spec) {
  const std::size_t n = shape.parent_count();
  if (spec.divorced.size() < 2) throw ValidationError("divorce needs at least two parents");
  if (spec.divorced.size() >= n) throw ValidationError("divorce must leave a remaining parent");
  if (spec.binarization.size() != spec.divorced.size()) {
    throw ValidationError("divorce needs one binarization per divorced parent");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < spec.divorced.size(); ++j) {
    const std::size_t p = spec.divorced[j];
    if (p >= n) throw ValidationError("divorced parent out of range");
    if (seen[p]) throw ValidationError("divorced parent listed twice");
    seen[p] = true;
    const std::size_t card = shape.parent_cards[p];
    if (card > 31) throw ValidationError("binarization supports at most 31 states");
    const std::uint32_t full = (1u << card) - 1;
    const std::uint32_t mask = spec.binarization[j];
    if (mask == 0 || (mask & full) == full || (mask & ~full) != 0) {
      throw ValidationError("binarization of parent " + std::to_string(p) +
                            " must map some but not all states to 1");
    }
  }
}

RowPartition divorce_groups(const CptShape& shape, const DivorceSpec& spec) {
  validate_divorce(shape, spec);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < shape.parent_count(); ++i) {
    if (std::find(spec.divorced.begin(), spec.divorced.end(), i) == spec.divorced.end()) {
      rest.push_back(i);
    }
  }
  std::vector<std::uint8_t> inputs(spec.divorced.size());
  std::vector<std::uint32_t> labels(shape.row_count());
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const ParentConfig config = shape.config_of(r);
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      inputs[j] = (spec.binarization[j] >> config[spec.divorced[j]]) & 1u;
    }
    const std::size_t rest_index = block_config_index(shape, rest, config);
    labels[r] = static_cast<std::uint32_t>(2 * rest_index + apply_gate(spec.gate, inputs));
  }
  return RowPartition::from_labels(labels);
}

namespace {

// Odometer over masks 1 .. 2^s - 2 per divorced parent, last parent fastest.
bool next_binarization(const CptShape& shape, DivorceSpec& spec) {
  for (std::size_t j = spec.divorced.size(); j-- > 0;) {
    const std::uint32_t last = (1u << shape.parent_cards[spec.divorced[j]]) - 2;
    if (spec.binarization[j] < last) {
      ++spec.binarization[j];
      return true;
    }
    spec.binarization[j] = 1;
  }
  return false;
}

}  // namespace

void for_each_divorce(const CptShape& shape, std::size_t block_size,
                      const std::function<void(const DivorceSpec&)>& visit) {
  const std::size_t n = shape.parent_count();
  if (block_size < 2 || block_size >= n) {
    throw ValidationError("divorce block size must satisfy 2 <= i < number of parents");
  }
  std::vector<std::size_t> subset(block_size);
  for (std::size_t j = 0; j < block_size; ++j) subset[j] = j;
  while (true) {
    for (Gate gate : {Gate::kAnd, Gate::kOr, Gate::kXor}) {
      DivorceSpec spec{subset, gate, std::vector<std::uint32_t>(block_size, 1)};
      do {
        visit(spec);
      } while (next_binarization(shape, spec));
    }
    // Next combination in lexicographic order.
    std::size_t j = block_size;
    while (j > 0 && subset[j - 1] == n - block_size + (j - 1)) --j;
    if (j == 0) return;
    ++subset[j - 1];
    for (std::size_t k = j; k < block_size; ++k) subset[k] = subset[k - 1] + 1;
  }
}

Refined<DivorceSpec> divorce_best(const Cpt& truth, std::size_t block_size) {
  const CptShape& shape = truth.shape();
  std::optional<DivorceSpec> best_spec;
  double best_score = std::numeric_limits<double>::infinity();
  for_each_divorce(shape, block_size, [&](const DivorceSpec& spec) {
    const double s = fit_and_score(truth, divorce_groups(shape, spec), 0).score;
    if (strictly_better(s, best_score)) {
      best_score = s;
      best_spec = spec;
    }
  });
  ApproxResult r = fit_and_score(truth, divorce_groups(shape, *best_spec),
                                 param_savings(*best_spec, shape).free_params);
  return {std::move(*best_spec), std::move(r)};
}

void validate_scm(const CptShape& shape, const ScmSpec& spec) {
  if (spec.block.size() != shape.row_count()) {
    throw ValidationError("SCM bipartition must label every parent configuration");
  }
  std::size_t ones = 0;
  for (auto b : spec.block) {
    if (b > 1) throw ValidationError("SCM block labels must be 0 or 1");
    ones += b;
  }
  if (ones == 0 || ones == spec.block.size()) {
    throw ValidationError("SCM bipartition must have two nonempty blocks");
  }
}

RowPartition scm_groups(const CptShape& shape, const ScmSpec& spec) {
  validate_scm(shape, spec);
  std::vector<std::uint32_t> labels(spec.block.begin(), spec.block.end());
  return RowPartition::from_labels(labels);
}

ApproxResult scm_fit(const Cpt& truth, const ScmSpec& spec) {
  return fit_and_score(truth, scm_groups(truth.shape(), spec),
                       param_savings(spec, truth.shape()).free_params);
}

}  // namespace cptrefine
