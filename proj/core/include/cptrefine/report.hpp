#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cptrefine/cpt.hpp"
#include "cptrefine/ga.hpp"
#include "cptrefine/refinement.hpp"
#include "cptrefine/search.hpp"

namespace cptrefine {

/// One line of the method comparison table.
struct ReportRow {
  std::string method;
  double score = 0.0;
  std::uint64_t free_params = 0;
  std::int64_t savings = 0;
  std::string summary;
};

struct MethodOutcome {
  ReportRow row;
  RefinementSpec spec;
  ApproxResult approx;
};

MethodOutcome make_outcome(const Cpt& truth, const RefinementSpec& spec, ApproxResult approx);

struct ReproduceOptions {
  GaConfig ga;
  /// Called with the method about to run ("Pruning", "Divorcing", ...).
  std::function<void(const std::string&)> on_method;
  SearchProgressFn progress;
};

/// Best pruning, best two-parent divorce, exact SCM (genetic search above 30
/// rows), ICI and SICI, in that order.
std::vector<MethodOutcome> reproduce(const Cpt& truth, const ReproduceOptions& options);

/// CSV: method,optimal_score,free_parameters,parameter_savings,spec
std::string report_csv(const std::vector<MethodOutcome>& outcomes);

/// Aligned plain-text version of the same table.
std::string report_text(const std::vector<MethodOutcome>& outcomes);

/// Side-by-side CSV: one line per configuration with the parent states, the
/// truth, and each method's approximation (4 decimal places), then a final
/// line of scores.
std::string approximations_csv(const Cpt& truth, const std::vector<MethodOutcome>& outcomes);

/// Per-row distance breakdown for `score --verbose`.
std::string row_breakdown(const Cpt& truth, const std::vector<double>& distances);

std::string format_fixed(double value, int decimals = 4);
std::string csv_field(const std::string& text);

}  // namespace cptrefine
