#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cptrefine/error.hpp"
#include "cptrefine/partitions.hpp"

namespace cptrefine {
namespace {

using Blocks = std::vector<std::vector<std::size_t>>;

// Independent listing: insert item n-1 into each block of, or as a new block
// next to, every partition of the first n-1 items.
std::set<Blocks> listed_partitions(std::size_t n) {
  std::set<Blocks> out;
  if (n == 0) return {Blocks{}};
  for (const Blocks& smaller : listed_partitions(n - 1)) {
    for (std::size_t b = 0; b <= smaller.size(); ++b) {
      Blocks next = smaller;
      if (b == smaller.size()) {
        next.push_back({n - 1});
      } else {
        next[b].push_back(n - 1);
      }
      for (auto& block : next) std::sort(block.begin(), block.end());
      std::sort(next.begin(), next.end());
      out.insert(next);
    }
  }
  return out;
}

TEST(Bipartitions, Counts) {
  EXPECT_EQ(bipartition_count(24), 8'388'607u);
  EXPECT_EQ(bipartition_count(2), 1u);
  EXPECT_EQ(bipartition_count(4), 7u);
  EXPECT_THROW(bipartition_count(1), SearchGuardExceeded);
  EXPECT_THROW(bipartition_count(31), SearchGuardExceeded);
}

TEST(Bipartitions, FourItemsListedExplicitly) {
  std::vector<std::uint64_t> masks;
  for_each_bipartition(4, [&](std::uint64_t m) {
    masks.push_back(m);
    return true;
  });
  std::set<std::set<std::set<std::size_t>>> expected{
      {{0}, {1, 2, 3}}, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}},
      {{0, 1, 2}, {3}}, {{0, 1, 3}, {2}}, {{0, 2, 3}, {1}}};
  std::set<std::set<std::set<std::size_t>>> got;
  for (auto m : masks) {
    std::set<std::size_t> a, b;
    const auto labels = bipartition_labels(m, 4);
    for (std::size_t i = 0; i < 4; ++i) (labels[i] ? b : a).insert(i);
    got.insert({a, b});
  }
  EXPECT_EQ(masks.size(), 7u);
  EXPECT_EQ(got, expected);
}

TEST(Bipartitions, ExhaustiveUpToSixteen) {
  for (std::size_t k = 2; k <= 16; ++k) {
    std::set<std::vector<std::uint8_t>> seen;
    std::uint64_t count = 0;
    for_each_bipartition(k, [&](std::uint64_t m) {
      ++count;
      auto labels = bipartition_labels(m, k);
      EXPECT_EQ(labels[0], 0);
      EXPECT_NE(std::count(labels.begin(), labels.end(), 1), 0);
      std::vector<std::uint8_t> swapped(labels);
      for (auto& l : swapped) l ^= 1;
      EXPECT_EQ(seen.count(swapped), 0u);
      EXPECT_TRUE(seen.insert(labels).second);
      return true;
    });
    EXPECT_EQ(count, (std::uint64_t{1} << (k - 1)) - 1) << "k=" << k;
    EXPECT_EQ(count, bipartition_count(k));
  }
}

TEST(Bipartitions, EarlyStop) {
  int visits = 0;
  for_each_bipartition(10, [&](std::uint64_t) { return ++visits < 5; });
  EXPECT_EQ(visits, 5);
}

TEST(SetPartitions, BellNumbers) {
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(bell_number(n), bell[n]) << n;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto all = enumerate_set_partitions(n);
    EXPECT_EQ(all.size(), bell[n]) << n;
  }
}

TEST(SetPartitions, MatchIndependentListing) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<Blocks> got;
    for (Blocks blocks : enumerate_set_partitions(n)) {
      std::vector<bool> covered(n, false);
      for (const auto& block : blocks) {
        ASSERT_FALSE(block.empty());
        for (auto i : block) {
          ASSERT_LT(i, n);
          ASSERT_FALSE(covered[i]);
          covered[i] = true;
        }
      }
      ASSERT_EQ(std::count(covered.begin(), covered.end(), true), static_cast<long>(n));
      for (auto& block : blocks) std::sort(block.begin(), block.end());
      std::sort(blocks.begin(), blocks.end());
      EXPECT_TRUE(got.insert(blocks).second);
    }
    EXPECT_EQ(got, listed_partitions(n)) << n;
  }
}

TEST(SetPartitions, ThreeItems) {
  const auto all = enumerate_set_partitions(3);
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all.front(), (Blocks{{0, 1, 2}}));
  EXPECT_EQ(all.back(), (Blocks{{0}, {1}, {2}}));
}

TEST(SetPartitions, RestrictedGrowthStrings) {
  std::vector<std::vector<std::uint32_t>> strings;
  for_each_restricted_growth_string(4, [&](const std::vector<std::uint32_t>& rgs) {
    strings.push_back(rgs);
  });
  ASSERT_EQ(strings.size(), 15u);
  EXPECT_TRUE(std::is_sorted(strings.begin(), strings.end()));
  for (const auto& rgs : strings) {
    EXPECT_EQ(rgs[0], 0u);
    std::uint32_t top = 0;
    for (std::size_t i = 1; i < rgs.size(); ++i) {
      EXPECT_LE(rgs[i], top + 1);
      top = std::max(top, rgs[i]);
    }
  }
  EXPECT_EQ(blocks_of({0, 1, 0, 2}), (Blocks{{0, 2}, {1}, {3}}));
}

TEST(SetPartitions, Guards) {
  EXPECT_THROW(enumerate_set_partitions(0), SearchGuardExceeded);
  EXPECT_THROW(for_each_restricted_growth_string(13, [](const auto&) {}), SearchGuardExceeded);
}

}  // namespace
}  // namespace cptrefine
