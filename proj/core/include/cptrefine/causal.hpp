#pragma once

#include <span>
#include <vector>

#include "cptrefine/cpt.hpp"
#include "cptrefine/refinement.hpp"

namespace cptrefine {

// Causal interaction models. Every mechanism is binary; bit i of a mechanism
// configuration index m holds M_i.

/// p(y|x) = sum over m with f(m) = y of prod_i p(m_i | x_i).
Cpt ici_evaluate(const CptShape& shape, const IciSpec& spec);

/// Noisy-OR over binary parents: P(M_i=1|X_i=0) = 0, P(M_i=1|X_i=1) = 1 - p_i,
/// combined by OR.
IciSpec noisy_or(std::span<const double> inhibitors);

/// p(y|x) = sum over m of p(y|m) prod_i p(m_i | x_i).
Cpt pici_evaluate(const CptShape& shape, const PiciSpec& spec);

/// Noisy-average lower table for n binary mechanisms and a binary child:
/// p(y|m) = |{i : m_i = y}| / n.
std::vector<double> noisy_average_lower(std::size_t mechanism_count);

/// Upper-stochastic SICI: deterministic combiner over block mechanisms.
Cpt us_sici_evaluate(const CptShape& shape, const SiciSpec& spec);

/// Double-stochastic SICI: stochastic lower table over block mechanisms.
Cpt ds_sici_evaluate(const CptShape& shape, const SiciSpec& spec);

/// Deterministic combiner as a 0/1 lower table: p(y|m) = [f(m) = y].
std::vector<double> indicator_lower(std::span<const std::uint32_t> combiner,
                                    std::size_t child_card);

}  // namespace cptrefine
