#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cptrefine {

inline constexpr std::size_t kMaxBipartitionItems = 30;
inline constexpr std::size_t kMaxSetPartitionItems = 12;

/// Number of unordered two-block partitions with both blocks nonempty:
/// 2^(k-1) - 1.
std::uint64_t bipartition_count(std::size_t item_count);

/// Calls `visit(mask)` for every non-trivial bipartition of `item_count` items.
/// Item 0 is always in block A; bit j of mask (j >= 1) puts item j in block B.
/// Masks are visited in increasing order 1 .. 2^(k-1) - 1. Returning false from
/// `visit` stops the enumeration.
///
/// Throws SearchGuardExceeded unless 2 <= item_count <= 30.
void for_each_bipartition(std::size_t item_count,
                          const std::function<bool(std::uint64_t mask)>& visit);

/// Block labels (0 for A, 1 for B) of a bipartition mask.
std::vector<std::uint8_t> bipartition_labels(std::uint64_t mask, std::size_t item_count);

/// Bell number B(n).
std::uint64_t bell_number(std::size_t n);

/// Calls `visit(rgs)` for every restricted growth string of length n, in
/// lexicographic order: rgs[0] = 0 and rgs[i] <= 1 + max(rgs[0..i-1]).
/// Each string encodes one set partition (rgs[i] is the block of item i).
///
/// Throws SearchGuardExceeded unless 1 <= n <= 12.
void for_each_restricted_growth_string(
    std::size_t n, const std::function<void(const std::vector<std::uint32_t>&)>& visit);

/// Blocks of a restricted growth string, ordered by smallest member.
std::vector<std::vector<std::size_t>> blocks_of(const std::vector<std::uint32_t>& rgs);

/// Every set partition of {0..n-1} as a list of blocks.
std::vector<std::vector<std::vector<std::size_t>>> enumerate_set_partitions(std::size_t n);

}  // namespace cptrefine
