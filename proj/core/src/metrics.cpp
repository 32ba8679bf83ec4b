#include "cptrefine/metrics.hpp"

#include <cmath>

#include "cptrefine/error.hpp"

namespace cptrefine {

double tvd_row(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ShapeMismatch("distributions differ in length");
  if (p.size() == 2) return std::abs(p[0] - q[0]);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double kl_row(std::span<const double> p, std::span<const double> q, double epsilon) {
  if (p.size() != q.size()) throw ShapeMismatch("distributions differ in length");
  if (!(epsilon > 0.0)) throw ValidationError("KL smoothing epsilon must be positive");
  double q_total = 0.0;
  for (double v : q) q_total += v + epsilon;
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double qs = (q[i] + epsilon) / q_total;
    kl += p[i] * std::log(p[i] / qs);
  }
  return kl;
}

std::vector<double> row_distances(const Cpt& truth, const Cpt& approx, Metric metric,
                                  double epsilon) {
  if (truth.shape() != approx.shape()) {
    throw ShapeMismatch("tables differ in shape");
  }
  std::vector<double> out(truth.row_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = metric == Metric::kTotalVariation
                 ? tvd_row(truth.row(k), approx.row(k))
                 : kl_row(truth.row(k), approx.row(k), epsilon);
  }
  return out;
}

double score(const Cpt& truth, const Cpt& approx, Metric metric, double epsilon) {
  double total = 0.0;
  for (double d : row_distances(truth, approx, metric, epsilon)) total += d;
  return total;
}

double score_sum_tvd(const Cpt& truth, const Cpt& approx) {
  return score(truth, approx, Metric::kTotalVariation);
}

}  // namespace cptrefine
