#include "cptrefine/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cptrefine/error.hpp"

namespace cptrefine {

RowPartition RowPartition::from_labels(std::span<const std::uint32_t> labels) {
  RowPartition p;
  p.labels_.resize(labels.size());
  std::vector<std::uint32_t> remap;
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const std::uint32_t l = labels[r];
    if (l >= remap.size()) remap.resize(std::size_t{l} + 1, kUnset);
    if (remap[l] == kUnset) remap[l] = static_cast<std::uint32_t>(p.group_count_++);
    p.labels_[r] = remap[l];
  }
  return p;
}

RowPartition RowPartition::from_groups(const std::vector<std::vector<std::size_t>>& groups,
                                       std::size_t row_count) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> labels(row_count, kUnset);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw ValidationError("group " + std::to_string(g) + " is empty");
    for (std::size_t r : groups[g]) {
      if (r >= row_count) {
        throw ValidationError("row " + std::to_string(r) + " out of range");
      }
      if (labels[r] != kUnset) {
        throw ValidationError("row " + std::to_string(r) + " appears in two groups");
      }
      labels[r] = static_cast<std::uint32_t>(g);
    }
  }
  for (std::size_t r = 0; r < row_count; ++r) {
    if (labels[r] == kUnset) {
      throw ValidationError("row " + std::to_string(r) + " is not in any group");
    }
  }
  return from_labels(labels);
}

std::vector<std::vector<std::size_t>> RowPartition::groups() const {
  std::vector<std::vector<std::size_t>> out(group_count_);
  for (std::size_t r = 0; r < labels_.size(); ++r) out[labels_[r]].push_back(r);
  return out;
}

std::vector<std::size_t> RowPartition::group_sizes() const {
  std::vector<std::size_t> out(group_count_, 0);
  for (auto l : labels_) ++out[l];
  return out;
}

void Grouping::validate(std::size_t child_card) const {
  if (params.size() != partition.group_count()) {
    throw ValidationError("grouping has " + std::to_string(params.size()) +
                          " parameter vectors for " +
                          std::to_string(partition.group_count()) + " groups");
  }
  for (const auto& q : params) {
    if (q.size() != child_card) throw ShapeMismatch("group distribution has wrong length");
    double sum = 0.0;
    for (double v : q) {
      if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("group probability outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("group distribution not normalized");
  }
}

double median_lad(std::span<const double> values) {
  if (values.empty()) throw ValidationError("median of an empty list");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

Grouping fit_grouping(const Cpt& truth, const RowPartition& partition) {
  if (partition.row_count() != truth.row_count()) {
    throw ShapeMismatch("partition covers " + std::to_string(partition.row_count()) +
                        " rows, table has " + std::to_string(truth.row_count()));
  }
  const std::size_t card = truth.child_card();
  Grouping g{partition, {}};
  std::vector<double> column;
  for (const auto& members : partition.groups()) {
    std::vector<double> q(card);
    if (card == 2) {
      column.clear();
      for (auto r : members) column.push_back(truth.at(r, 0));
      q[0] = median_lad(column);
      q[1] = 1.0 - q[0];
    } else {
      double sum = 0.0;
      for (std::size_t c = 0; c < card; ++c) {
        column.clear();
        for (auto r : members) column.push_back(truth.at(r, c));
        q[c] = median_lad(column);
        sum += q[c];
      }
      if (sum > 0.0) {
        for (auto& v : q) v /= sum;
      } else {
        for (std::size_t c = 0; c < card; ++c) {
          double mean = 0.0;
          for (auto r : members) mean += truth.at(r, c);
          q[c] = mean / static_cast<double>(members.size());
        }
      }
    }
    g.params.push_back(std::move(q));
  }
  return g;
}

Cpt expand_grouped(const Signature& signature, const Grouping& grouping) {
  const CptShape shape = signature.shape();
  if (grouping.partition.row_count() != shape.row_count()) {
    throw ShapeMismatch("grouping does not cover the table's rows");
  }
  grouping.validate(shape.child_card);
  std::vector<double> probs;
  probs.reserve(shape.row_count() * shape.child_card);
  for (std::size_t r = 0; r < shape.row_count(); ++r) {
    const auto& q = grouping.params[grouping.partition.group_of(r)];
    probs.insert(probs.end(), q.begin(), q.end());
  }
  return Cpt(signature, std::move(probs));
}

Cpt expand_grouped(const CptShape& shape, const Grouping& grouping) {
  return expand_grouped(Signature::anonymous(shape), grouping);
}

}  // namespace cptrefine
