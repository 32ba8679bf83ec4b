#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cptrefine/cpt.hpp"
#include "cptrefine/io.hpp"

namespace cptrefine::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CPTREFINE_DATA_DIR) + "/" + name;
}

inline Cpt fixture(const std::string& name) { return load_cpt(data_path(name)).cpt; }

inline Cpt anxiety() { return fixture("anxiety.json"); }

/// Uniform random rows (normalized exponential draws).
inline Cpt random_cpt(const CptShape& shape, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> probs(shape.row_count() * shape.child_card);
  for (std::size_t k = 0; k < shape.row_count(); ++k) {
    double sum = 0.0;
    for (std::size_t c = 0; c < shape.child_card; ++c) sum += probs[k * shape.child_card + c] = draw(rng);
    for (std::size_t c = 0; c < shape.child_card; ++c) probs[k * shape.child_card + c] /= sum;
  }
  return Cpt(shape, std::move(probs));
}

inline double unit(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Straightforward |p - q| / 2 summed over all rows.
inline double naive_tvd(const Cpt& a, const Cpt& b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.row_count(); ++k) {
    double row = 0.0;
    for (std::size_t c = 0; c < a.child_card(); ++c) {
      const double d = a.at(k, c) - b.at(k, c);
      row += d < 0 ? -d : d;
    }
    total += row / 2.0;
  }
  return total;
}

}  // namespace cptrefine::testing
