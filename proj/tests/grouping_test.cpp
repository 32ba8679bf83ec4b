#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cptrefine/error.hpp"
#include "cptrefine/grouping.hpp"
#include "cptrefine/metrics.hpp"
#include "test_support.hpp"

namespace cptrefine {
namespace {

using V = std::vector<double>;

double abs_loss(const V& values, double q) {
  double total = 0;
  for (double v : values) total += std::abs(v - q);
  return total;
}

TEST(Median, Examples) {
  EXPECT_NEAR(median_lad(V{0.9630, 0.9830}), 0.9730, 1e-12);
  EXPECT_DOUBLE_EQ(median_lad(V{0.9630, 0.9147, 0.9506, 0.9352, 0.9434}), 0.9434);
  EXPECT_DOUBLE_EQ(median_lad(V{0.42}), 0.42);
  EXPECT_DOUBLE_EQ(median_lad(V{0.8409, 0.75, 0.75, 0.7, 0.8299, 0.7955, 0.5, 0.5}), 0.75);
  EXPECT_THROW(median_lad(V{}), ValidationError);
}

TEST(Median, BeatsEveryGridPoint) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    V values(1 + trial % 12);
    for (auto& v : values) v = testing::unit(rng);
    const double best = abs_loss(values, median_lad(values));
    for (int g = 0; g <= 10000; ++g) {
      ASSERT_LE(best, abs_loss(values, g * 1e-4) + 1e-12);
    }
  }
}

TEST(RowPartitionTest, CanonicalLabels) {
  const std::vector<std::uint32_t> raw{5, 5, 2, 9, 2};
  const RowPartition p = RowPartition::from_labels(raw);
  EXPECT_EQ(p.labels(), (std::vector<std::uint32_t>{0, 0, 1, 2, 1}));
  EXPECT_EQ(p.group_count(), 3u);
  EXPECT_EQ(p.group_sizes(), (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(p, RowPartition::from_groups({{0, 1}, {2, 4}, {3}}, 5));
}

TEST(RowPartitionTest, RejectsBadGroups) {
  EXPECT_THROW(RowPartition::from_groups({{0, 1}, {}}, 2), ValidationError);
  EXPECT_THROW(RowPartition::from_groups({{0, 1}, {1}}, 2), ValidationError);
  EXPECT_THROW(RowPartition::from_groups({{0}}, 2), ValidationError);
  EXPECT_THROW(RowPartition::from_groups({{0, 2}}, 2), ValidationError);
}

TEST(FitGrouping, SingletonsReproduceTruth) {
  const Cpt truth = testing::anxiety();
  std::vector<std::uint32_t> labels(24);
  for (std::uint32_t k = 0; k < 24; ++k) labels[k] = k;
  const Grouping g = fit_grouping(truth, RowPartition::from_labels(labels));
  const Cpt expanded = expand_grouped(truth.signature(), g);
  EXPECT_EQ(score_sum_tvd(truth, expanded), 0.0);
}

TEST(FitGrouping, SingleGroupIsConstant) {
  const Cpt truth = testing::anxiety();
  const Grouping g = fit_grouping(truth, RowPartition::from_labels(std::vector<std::uint32_t>(24, 0)));
  const Cpt expanded = expand_grouped(truth.shape(), g);
  for (std::size_t k = 1; k < 24; ++k) EXPECT_EQ(expanded.at(k, 0), expanded.at(0, 0));
}

TEST(FitGrouping, AppendixScmSplit) {
  const Cpt truth = testing::anxiety();
  std::vector<std::uint32_t> labels(24, 0);
  for (std::size_t row : {7, 8, 16, 19, 21, 22, 23, 24}) labels[row - 1] = 1;
  const Grouping g = fit_grouping(truth, RowPartition::from_labels(labels));
  EXPECT_NEAR(g.params[0][0], 0.9393, 1e-12);
  EXPECT_NEAR(g.params[1][0], 0.7500, 1e-12);
  EXPECT_NEAR(score_sum_tvd(truth, expand_grouped(truth.signature(), g)), 1.2693, 2e-3);
}

TEST(FitGrouping, ExpandedScoreMatchesDirectSum) {
  std::mt19937_64 rng(23);
  const CptShape shape{{2, 3, 2}, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const Cpt truth = testing::random_cpt(shape, rng);
    std::vector<std::uint32_t> labels(12);
    for (auto& l : labels) l = std::uniform_int_distribution<std::uint32_t>(0, 3)(rng);
    const RowPartition partition = RowPartition::from_labels(labels);
    const Grouping g = fit_grouping(truth, partition);
    double direct = 0;
    for (const auto& group : partition.groups()) {
      V ones;
      for (auto k : group) ones.push_back(truth.at(k, 1));
      V zeros;
      for (auto k : group) zeros.push_back(truth.at(k, 0));
      const double q1 = 1.0 - median_lad(zeros);
      for (double v : ones) direct += std::abs(v - q1);
    }
    EXPECT_NEAR(score_sum_tvd(truth, expand_grouped(shape, g)), direct, 1e-12);
  }
}

TEST(FitGrouping, MultiStateRowsAreNormalized) {
  std::mt19937_64 rng(29);
  const CptShape shape{{3, 2}, 4};
  for (int trial = 0; trial < 100; ++trial) {
    const Cpt truth = testing::random_cpt(shape, rng);
    const Grouping g = fit_grouping(truth, RowPartition::from_labels(std::vector<std::uint32_t>{0, 1, 0, 1, 2, 2}));
    EXPECT_NO_THROW(g.validate(4));
  }
}

}  // namespace
}  // namespace cptrefine
