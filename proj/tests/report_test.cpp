#include <gtest/gtest.h>

#include <algorithm>

#include "cptrefine/io.hpp"
#include "cptrefine/metrics.hpp"
#include "cptrefine/report.hpp"
#include "test_support.hpp"

namespace cptrefine {
namespace {

std::vector<MethodOutcome> quick_reproduce() {
  ReproduceOptions options;
  options.ga.restarts = 2;
  options.ga.max_generations = 40;
  return reproduce(testing::anxiety(), options);
}

TEST(Format, FixedDecimals) {
  EXPECT_EQ(format_fixed(0.64856), "0.6486");
  EXPECT_EQ(format_fixed(1.0), "1.0000");
  EXPECT_EQ(format_fixed(-0.00001), "0.0000");
  EXPECT_EQ(format_fixed(0.5, 2), "0.50");
}

TEST(Format, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, TableShapeAndAccounting) {
  const auto outcomes = quick_reproduce();
  ASSERT_EQ(outcomes.size(), 5u);
  const std::vector<std::string> names{"Pruning", "Divorcing", "SCM", "ICI", "SICI"};
  const std::vector<std::uint64_t> params{12, 8, 2, 9, 14};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(outcomes[i].row.method, names[i]);
    EXPECT_EQ(outcomes[i].row.free_params, params[i]);
    EXPECT_EQ(static_cast<std::int64_t>(outcomes[i].row.free_params) + outcomes[i].row.savings, 24);
  }
  const std::string csv = report_csv(outcomes);
  EXPECT_EQ(csv.rfind("method,optimal_score,free_parameters,parameter_savings,spec\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_NE(csv.find("Pruning,0.6485,12,12,prune Depression\n"), std::string::npos);
  EXPECT_NE(csv.find("SCM,1.2693,2,22,"), std::string::npos);

  const std::string text = report_text(outcomes);
  EXPECT_NE(text.find("Optimal Score (4dp)"), std::string::npos);
  EXPECT_NE(text.find("0.5072"), std::string::npos);
}

TEST(Report, EmittedTablesValidateAndRescore) {
  const Cpt truth = testing::anxiety();
  for (const auto& o : quick_reproduce()) {
    const Cpt back = parse_cpt(format_cpt(o.approx.cpt)).cpt;
    EXPECT_EQ(back.probs(), o.approx.cpt.probs());
    EXPECT_NEAR(score_sum_tvd(truth, back), o.row.score, 1e-9) << o.row.method;
  }
}

TEST(Report, SideBySideLayout) {
  const Cpt truth = testing::anxiety();
  const auto outcomes = quick_reproduce();
  const std::string csv = approximations_csv(truth, outcomes);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header.rfind("row,Depression,Hypertension,Sex,SleepDuration,Truth:No,Truth:Yes,Pruning:No", 0), 0u);
  EXPECT_NE(csv.find("\n1,No,No,Female,6-9hours,0.9630,0.0370,0.9730,0.0270,"), std::string::npos);
  EXPECT_NE(csv.find("\nscore,,,,,,,0.6485,,0.5072,,1.2693,,"), std::string::npos);
}

TEST(Report, RowBreakdown) {
  const Cpt truth = testing::anxiety();
  const Cpt pruned = testing::fixture("anxiety_pruning.json");
  const std::string text = row_breakdown(truth, row_distances(truth, pruned, Metric::kTotalVariation));
  EXPECT_EQ(text.rfind("1  Depression=No, Hypertension=No, Sex=Female, SleepDuration=6-9hours  0.0100\n", 0), 0u);
}

}  // namespace
}  // namespace cptrefine
