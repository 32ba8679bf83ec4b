#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cptrefine/cpt.hpp"

namespace cptrefine {

// JSON CPT document, format 1:
//
//   {
//     "format": 1,
//     "child": {"name": "Y", "states": ["No", "Yes"]},
//     "parents": [{"name": "X1", "states": ["a", "b"]}, ...],
//     "rows": [{"config": ["a", ...], "probs": [0.9, 0.1]}, ...]
//   }
//
// Rows may appear in any order on input but must cover every configuration
// exactly once. A row whose sum is off by more than 1e-6 is rejected; one off
// by more than 1e-9 is renormalized and reported as a warning. Output is
// always in canonical row order (first parent fastest), one row per line.

inline constexpr int kCptFormatVersion = 1;

struct LoadedCpt {
  Cpt cpt;
  std::vector<std::string> warnings;
};

LoadedCpt parse_cpt(std::string_view json_text);
LoadedCpt load_cpt(const std::filesystem::path& path);

std::string format_cpt(const Cpt& cpt);
void save_cpt(const Cpt& cpt, const std::filesystem::path& path);

/// "Depression=No, Hypertension=Yes, ..." for diagnostics.
std::string describe_config(const Signature& signature, const ParentConfig& config);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace cptrefine
