#include "cptrefine/partitions.hpp"

#include <algorithm>

#include "cptrefine/error.hpp"

namespace cptrefine {

namespace {

void check_bipartition_items(std::size_t k) {
  if (k < 2 || k > kMaxBipartitionItems) {
    throw SearchGuardExceeded("bipartition enumeration supports 2.." +
                              std::to_string(kMaxBipartitionItems) + " items, got " +
                              std::to_string(k));
  }
}

}  // namespace

std::uint64_t bipartition_count(std::size_t item_count) {
  check_bipartition_items(item_count);
  return (std::uint64_t{1} << (item_count - 1)) - 1;
}

void for_each_bipartition(std::size_t item_count,
                          const std::function<bool(std::uint64_t)>& visit) {
  const std::uint64_t last = bipartition_count(item_count);
  for (std::uint64_t i = 1; i <= last; ++i) {
    if (!visit(i << 1)) return;
  }
}

std::vector<std::uint8_t> bipartition_labels(std::uint64_t mask, std::size_t item_count) {
  std::vector<std::uint8_t> labels(item_count);
  for (std::size_t j = 0; j < item_count; ++j) labels[j] = (mask >> j) & 1u;
  return labels;
}

std::uint64_t bell_number(std::size_t n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_restricted_growth_string(
    std::size_t n, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (n < 1 || n > kMaxSetPartitionItems) {
    throw SearchGuardExceeded("set partition enumeration supports 1.." +
                              std::to_string(kMaxSetPartitionItems) + " items, got " +
                              std::to_string(n));
  }
  std::vector<std::uint32_t> rgs(n, 0);
  // prefix_max[i] = max(rgs[0..i]).
  std::vector<std::uint32_t> prefix_max(n, 0);
  while (true) {
    visit(rgs);
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<std::vector<std::size_t>> blocks_of(const std::vector<std::uint32_t>& rgs) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] >= blocks.size()) blocks.resize(rgs[i] + 1);
    blocks[rgs[i]].push_back(i);
  }
  return blocks;
}

std::vector<std::vector<std::vector<std::size_t>>> enumerate_set_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for_each_restricted_growth_string(n, [&](const auto& rgs) { out.push_back(blocks_of(rgs)); });
  return out;
}

}  // namespace cptrefine
