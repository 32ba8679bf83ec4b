#include "cptrefine/causal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cptrefine/error.hpp"

namespace cptrefine {

namespace {

constexpr std::size_t kMaxMechanisms = 20;

std::size_t mechanism_configs(std::size_t count) {
  if (count > kMaxMechanisms) {
    throw ValidationError("at most " + std::to_string(kMaxMechanisms) + " mechanisms supported");
  }
  return std::size_t{1} << count;
}

void check_probability_table(const std::vector<double>& table, std::size_t expected,
                             const char* what) {
  if (table.size() != expected) {
    throw ShapeMismatch(std::string(what) + " table has " + std::to_string(table.size()) +
                        " entries, expected " + std::to_string(expected));
  }
  for (double p : table) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(std::string(what) + " probability outside [0,1]");
    }
  }
}

void check_combiner(std::span<const std::uint32_t> combiner, std::size_t mechanisms,
                    std::size_t child_card) {
  if (combiner.size() != mechanism_configs(mechanisms)) {
    throw ValidationError("combiner must assign a child state to all " +
                          std::to_string(mechanism_configs(mechanisms)) +
                          " mechanism configurations");
  }
  for (auto y : combiner) {
    if (y >= child_card) throw ValidationError("combiner names an unknown child state");
  }
}

void check_lower(const std::vector<double>& lower, std::size_t mechanisms,
                 std::size_t child_card) {
  const std::size_t rows = mechanism_configs(mechanisms);
  if (lower.size() != rows * child_card) {
    throw ShapeMismatch("lower CPT must have one distribution per mechanism configuration");
  }
  for (std::size_t m = 0; m < rows; ++m) {
    double sum = 0.0;
    for (std::size_t y = 0; y < child_card; ++y) {
      const double p = lower[m * child_card + y];
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("lower CPT probability outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("lower CPT row not normalized");
  }
}

// Joint distribution of independent binary mechanisms with P(M_b = 1) = on[b].
void mechanism_joint(std::span<const double> on, std::vector<double>& joint) {
  joint.assign(std::size_t{1} << on.size(), 0.0);
  joint[0] = 1.0;
  std::size_t filled = 1;
  for (std::size_t b = 0; b < on.size(); ++b) {
    for (std::size_t m = 0; m < filled; ++m) {
      joint[m | filled] = joint[m] * on[b];
      joint[m] *= 1.0 - on[b];
    }
    filled <<= 1;
  }
}

// Shared forward pass: `on_of(config, on)` fills the per-mechanism activation
// probabilities for one parent configuration; the lower relationship is
// either a deterministic combiner or a stochastic table.
template <typename ActivationFn>
Cpt forward(const CptShape& shape, std::size_t mechanisms, ActivationFn on_of,
            std::span<const std::uint32_t> combiner, std::span<const double> lower) {
  const std::size_t card = shape.child_card;
  std::vector<double> probs(shape.row_count() * card, 0.0);
  std::vector<double> on(mechanisms);
  std::vector<double> joint;
  for (std::size_t r = 0; r < shape.row_count(); ++r) {
    const ParentConfig config = shape.config_of(r);
    on_of(config, on);
    mechanism_joint(on, joint);
    double* row = probs.data() + r * card;
    for (std::size_t m = 0; m < joint.size(); ++m) {
      if (!combiner.empty()) {
        row[combiner[m]] += joint[m];
      } else {
        for (std::size_t y = 0; y < card; ++y) row[y] += joint[m] * lower[m * card + y];
      }
    }
    // Clamp rounding drift so the result validates as a CPT.
    double sum = 0.0;
    for (std::size_t y = 0; y < card; ++y) {
      row[y] = std::min(1.0, std::max(0.0, row[y]));
      sum += row[y];
    }
    for (std::size_t y = 0; y < card; ++y) row[y] /= sum;
  }
  return Cpt(shape, std::move(probs));
}

void check_ici_mechanisms(const CptShape& shape,
                          const std::vector<std::vector<double>>& mechanisms) {
  shape.validate();
  if (mechanisms.size() != shape.parent_count()) {
    throw ShapeMismatch("need one mechanism table per parent");
  }
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    check_probability_table(mechanisms[i], shape.parent_cards[i], "mechanism");
  }
}

void check_sici_mechanisms(const CptShape& shape, const SiciSpec& spec) {
  shape.validate();
  validate_parent_partition(spec.blocks, shape.parent_count());
  if (spec.mechanisms.size() != spec.blocks.size()) {
    throw ShapeMismatch("need one mechanism table per parent block");
  }
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    check_probability_table(spec.mechanisms[b], block_config_count(shape, spec.blocks[b]),
                            "mechanism");
  }
}

Cpt sici_forward(const CptShape& shape, const SiciSpec& spec,
                 std::span<const std::uint32_t> combiner, std::span<const double> lower) {
  return forward(
      shape, spec.blocks.size(),
      [&](const ParentConfig& config, std::vector<double>& on) {
        for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
          on[b] = spec.mechanisms[b][block_config_index(shape, spec.blocks[b], config)];
        }
      },
      combiner, lower);
}

}  // namespace

Cpt ici_evaluate(const CptShape& shape, const IciSpec& spec) {
  check_ici_mechanisms(shape, spec.mechanisms);
  check_combiner(spec.combiner, shape.parent_count(), shape.child_card);
  return forward(
      shape, shape.parent_count(),
      [&](const ParentConfig& config, std::vector<double>& on) {
        for (std::size_t i = 0; i < config.size(); ++i) on[i] = spec.mechanisms[i][config[i]];
      },
      spec.combiner, {});
}

IciSpec noisy_or(std::span<const double> inhibitors) {
  const std::size_t n = inhibitors.size();
  IciSpec spec;
  for (double p : inhibitors) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("inhibition probability outside [0,1]");
    spec.mechanisms.push_back({0.0, 1.0 - p});
  }
  spec.combiner.resize(mechanism_configs(n));
  for (std::size_t m = 0; m < spec.combiner.size(); ++m) spec.combiner[m] = m != 0 ? 1 : 0;
  return spec;
}

Cpt pici_evaluate(const CptShape& shape, const PiciSpec& spec) {
  check_ici_mechanisms(shape, spec.mechanisms);
  check_lower(spec.lower_cpt, shape.parent_count(), shape.child_card);
  return forward(
      shape, shape.parent_count(),
      [&](const ParentConfig& config, std::vector<double>& on) {
        for (std::size_t i = 0; i < config.size(); ++i) on[i] = spec.mechanisms[i][config[i]];
      },
      {}, spec.lower_cpt);
}

std::vector<double> noisy_average_lower(std::size_t mechanism_count) {
  if (mechanism_count == 0) throw ValidationError("noisy average needs at least one mechanism");
  const std::size_t rows = mechanism_configs(mechanism_count);
  std::vector<double> lower(rows * 2);
  for (std::size_t m = 0; m < rows; ++m) {
    const auto ones = static_cast<double>(std::popcount(m));
    lower[2 * m + 1] = ones / static_cast<double>(mechanism_count);
    lower[2 * m] = 1.0 - lower[2 * m + 1];
  }
  return lower;
}

Cpt us_sici_evaluate(const CptShape& shape, const SiciSpec& spec) {
  check_sici_mechanisms(shape, spec);
  if (!spec.lower_cpt.empty()) throw ValidationError("US-SICI spec must not carry a lower CPT");
  check_combiner(spec.combiner, spec.blocks.size(), shape.child_card);
  return sici_forward(shape, spec, spec.combiner, {});
}

Cpt ds_sici_evaluate(const CptShape& shape, const SiciSpec& spec) {
  check_sici_mechanisms(shape, spec);
  if (!spec.combiner.empty()) throw ValidationError("DS-SICI spec must not carry a combiner");
  check_lower(spec.lower_cpt, spec.blocks.size(), shape.child_card);
  return sici_forward(shape, spec, {}, spec.lower_cpt);
}

std::vector<double> indicator_lower(std::span<const std::uint32_t> combiner,
                                    std::size_t child_card) {
  std::vector<double> lower(combiner.size() * child_card, 0.0);
  for (std::size_t m = 0; m < combiner.size(); ++m) {
    if (combiner[m] >= child_card) throw ValidationError("combiner names an unknown child state");
    lower[m * child_card + combiner[m]] = 1.0;
  }
  return lower;
}

}  // namespace cptrefine
