#include <gtest/gtest.h>

#include "cptrefine/cpt.hpp"
#include "cptrefine/refinement.hpp"
#include "test_support.hpp"

namespace cptrefine {
namespace {

const CptShape kAnxiety{{2, 2, 2, 3}, 2};

IciSpec anxiety_ici() {
  return {{{0.1, 0.2}, {0.1, 0.2}, {0.1, 0.2}, {0.1, 0.2, 0.3}}, std::vector<std::uint32_t>(16, 0)};
}

SiciSpec anxiety_sici() {
  return {{{1}, {0, 2, 3}}, {{0.1, 0.2}, std::vector<double>(12, 0.5)}, {0, 0, 1, 0}, {}};
}

TEST(ParamSavingsTest, AnxietyTable) {
  const auto prune = param_savings(PruneSpec{0}, kAnxiety);
  EXPECT_EQ(prune.free_params, 12u);
  EXPECT_EQ(prune.savings, 12);
  const auto divorce = param_savings(DivorceSpec{{1, 3}, Gate::kAnd, {0b10, 0b100}}, kAnxiety);
  EXPECT_EQ(divorce.free_params, 8u);
  EXPECT_EQ(divorce.savings, 16);
  const auto scm = param_savings(ScmSpec{std::vector<std::uint8_t>(24, 0)}, kAnxiety);
  EXPECT_EQ(scm.free_params, 2u);
  EXPECT_EQ(scm.savings, 22);
  const auto ici = param_savings(anxiety_ici(), kAnxiety);
  EXPECT_EQ(ici.free_params, 9u);
  EXPECT_EQ(ici.savings, 15);
  const auto sici = param_savings(anxiety_sici(), kAnxiety);
  EXPECT_EQ(sici.free_params, 14u);
  EXPECT_EQ(sici.savings, 10);
}

TEST(ParamSavingsTest, StochasticLowerTables) {
  PiciSpec pici{anxiety_ici().mechanisms, std::vector<double>(32, 0.5)};
  EXPECT_EQ(param_savings(pici, kAnxiety).free_params, 9u + 16u);
  EXPECT_EQ(param_savings(pici, kAnxiety).savings, 24 - 25);
  SiciSpec ds = anxiety_sici();
  ds.combiner.clear();
  ds.lower_cpt.assign(8, 0.5);
  EXPECT_EQ(param_savings(ds, kAnxiety).free_params, 14u + 4u);
}

TEST(ParamSavingsTest, FreePlusSavingsIsFullCount) {
  for (const CptShape& shape : {kAnxiety, CptShape{{3, 2, 4}, 3}, CptShape{{2, 2, 2, 2, 2}, 2}}) {
    for (std::size_t p = 0; p < shape.parent_count(); ++p) {
      const auto s = param_savings(PruneSpec{p}, shape);
      EXPECT_EQ(static_cast<std::int64_t>(s.free_params) + s.savings,
                static_cast<std::int64_t>(param_count(shape)));
    }
  }
}

TEST(ParamSavingsTest, AllBinaryDivorceCount) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const CptShape shape{std::vector<std::size_t>(n, 2), 2};
    for (std::size_t i = 2; i < n; ++i) {
      DivorceSpec spec{{}, Gate::kOr, std::vector<std::uint32_t>(i, 0b10)};
      for (std::size_t j = 0; j < i; ++j) spec.divorced.push_back(j);
      EXPECT_EQ(param_savings(spec, shape).free_params, std::uint64_t{1} << (n - i + 1));
    }
  }
}

TEST(Describe, ReadableSummaries) {
  const Signature sig = testing::anxiety().signature();
  EXPECT_EQ(describe(PruneSpec{0}, sig), "prune Depression");
  EXPECT_EQ(describe(DivorceSpec{{1, 3}, Gate::kAnd, {0b10, 0b100}}, sig),
            "AND(Hypertension=Yes; SleepDuration=>9hours)");
  EXPECT_EQ(describe(anxiety_sici(), sig), "{Hypertension | Depression,Sex,SleepDuration} f(m)=0010");
  EXPECT_EQ(method_name(PruneSpec{0}), "Pruning");
  EXPECT_EQ(method_name(anxiety_sici()), "SICI");
}

}  // namespace
}  // namespace cptrefine
