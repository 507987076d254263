#include <gtest/gtest.h>

#include "mas/dsl.hpp"
#include "properties.hpp"
#include "random_model.hpp"

namespace mas::testing {
namespace {

class RandomModels : public ::testing::TestWithParam<std::uint32_t> {
 protected:
  MissionModel Make() {
    std::mt19937 rng(GetParam());
    RawModel raw = RandomModel(rng);
    EXPECT_LE(ElementCount(raw), 50u);
    auto m = Resolve(raw);
    EXPECT_TRUE(m.ok());
    return std::move(*m);
  }
};

TEST_P(RandomModels, RoundTrip) { EXPECT_EQ(CheckRoundTrip(Make()), std::nullopt); }
TEST_P(RandomModels, Idempotence) { EXPECT_EQ(CheckIdempotence(Make()), std::nullopt); }
TEST_P(RandomModels, Duality) { EXPECT_EQ(CheckDuality(Make()), std::nullopt); }
TEST_P(RandomModels, MatrixCardinality) {
  EXPECT_EQ(CheckMatrixCardinality(Make()), std::nullopt);
}
TEST_P(RandomModels, CoverageIsGapCells) {
  EXPECT_EQ(CheckCoverageIsGapCells(Make()), std::nullopt);
}
TEST_P(RandomModels, TraceOracle) { EXPECT_EQ(CheckTraceOracle(Make()), std::nullopt); }
TEST_P(RandomModels, CriticalityMonotone) {
  EXPECT_EQ(CheckCriticalityMonotone(Make(), GetParam()), std::nullopt);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomModels, ::testing::Range(1u, 121u));

TEST(Properties, GeneratorCoversInterestingShapes) {
  // The generator must actually produce gaps, justified cells, sparse
  // priorities and scenarios, or the properties above prove little.
  int gaps = 0, justified = 0, scenarios = 0, big = 0;
  for (std::uint32_t seed = 1; seed <= 120; ++seed) {
    std::mt19937 rng(seed);
    auto raw = RandomModel(rng);
    if (ElementCount(raw) >= 30) ++big;
    scenarios += static_cast<int>(raw.scenarios.size());
    for (const auto& a : raw.actions) {
      gaps += 4 - static_cast<int>(a.ucas.size());
      for (const auto& u : a.ucas) justified += u.justified_absent;
    }
  }
  EXPECT_GT(gaps, 20);
  EXPECT_GT(justified, 20);
  EXPECT_GT(scenarios, 20);
  EXPECT_GT(big, 5);
}

}  // namespace
}  // namespace mas::testing
