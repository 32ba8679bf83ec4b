#pragma once

#include <span>
#include <vector>

#include "cptrefine/cpt.hpp"

namespace cptrefine {

enum class Metric { kTotalVariation, kKullbackLeibler };

inline constexpr double kDefaultKlEpsilon = 1e-9;

/// Scores closer than this are treated as tied by the exhaustive searches,
/// which then keep the earlier candidate.
inline constexpr double kScoreTieTolerance = 1e-12;

inline bool strictly_better(double candidate, double incumbent) {
  return candidate < incumbent - kScoreTieTolerance;
}

/// Total variation distance, half the L1 distance. For two-state vectors this
/// is exactly |p0 - q0|.
double tvd_row(std::span<const double> p, std::span<const double> q);

/// KL(p || q) after adding `epsilon` to every entry of q and renormalizing.
/// Terms with p_y = 0 contribute nothing.
double kl_row(std::span<const double> p, std::span<const double> q,
              double epsilon = kDefaultKlEpsilon);

/// Per-row distances between two tables of identical shape.
std::vector<double> row_distances(const Cpt& truth, const Cpt& approx,
                                  Metric metric = Metric::kTotalVariation,
                                  double epsilon = kDefaultKlEpsilon);

/// Sum of row-wise total variation distances.
double score_sum_tvd(const Cpt& truth, const Cpt& approx);

double score(const Cpt& truth, const Cpt& approx, Metric metric,
             double epsilon = kDefaultKlEpsilon);

}  // namespace cptrefine
