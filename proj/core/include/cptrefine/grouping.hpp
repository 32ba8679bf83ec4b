#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cptrefine/cpt.hpp"

namespace cptrefine {

/// A partition of CPT rows into groups that share one child distribution.
///
/// Stored as one label per row. Labels are canonical: group ids are assigned
/// in order of first appearance, so two equal partitions compare equal.
class RowPartition {
 public:
  RowPartition() = default;

  /// Any labelling of rows; relabelled canonically.
  static RowPartition from_labels(std::span<const std::uint32_t> labels);

  /// Explicit groups. Throws ValidationError on an empty group or on a row
  /// that is uncovered, out of range, or covered twice.
  static RowPartition from_groups(const std::vector<std::vector<std::size_t>>& groups,
                                  std::size_t row_count);

  std::size_t row_count() const { return labels_.size(); }
  std::size_t group_count() const { return group_count_; }
  std::uint32_t group_of(std::size_t row) const { return labels_[row]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }

  /// Member rows of each group, ascending.
  std::vector<std::vector<std::size_t>> groups() const;
  std::vector<std::size_t> group_sizes() const;

  friend bool operator==(const RowPartition&, const RowPartition&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t group_count_ = 0;
};

/// A row partition together with the shared child distribution of each group.
struct Grouping {
  RowPartition partition;
  std::vector<std::vector<double>> params;

  /// Throws ValidationError if params are missing or not normalized.
  void validate(std::size_t child_card) const;
};

/// Minimizer of sum |v_j - q|. Even-length inputs return the midpoint of the
/// two central values.
double median_lad(std::span<const double> values);

/// Per group and child state, the median of the truth's entries over the
/// group's rows. Two-state children use p(state 0) = median and
/// p(state 1) = 1 - median; larger children divide the medians by their sum
/// (falling back to the group mean if every median is zero).
Grouping fit_grouping(const Cpt& truth, const RowPartition& partition);

/// Full-shape table in which every row carries its group's distribution.
Cpt expand_grouped(const Signature& signature, const Grouping& grouping);
Cpt expand_grouped(const CptShape& shape, const Grouping& grouping);

}  // namespace cptrefine
