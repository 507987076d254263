#include <gtest/gtest.h>

#include "common.hpp"
#include "mas/analysis.hpp"
#include "mas/dsl.hpp"
#include "trace_oracle.hpp"

namespace mas {
namespace {

using testing::Corpus;
using testing::IdChain;
using Strings = std::vector<std::string>;

Identifier Id(const char* s) { return *Identifier::Parse(s); }

IdChain Down(const MissionModel& m, const char* id) {
  auto chain = TraceDown(m, Id(id));
  EXPECT_TRUE(chain.ok());
  return testing::ToIds(m, *chain);
}

IdChain Up(const MissionModel& m, const char* id) {
  auto chain = TraceUp(m, Id(id));
  EXPECT_TRUE(chain.ok());
  return testing::ToIds(m, *chain);
}

std::vector<Code> Codes(const std::vector<Diagnostic>& ds) {
  std::vector<Code> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

TEST(Trace, DownFromL1ReachesEveryAction) {
  auto c = Down(Corpus(), "L1");
  EXPECT_EQ(c.losses, Strings{"L1"});
  EXPECT_EQ(c.hazards, (Strings{"H1", "H2"}));
  EXPECT_EQ(c.actions, (Strings{"CA1.1", "CA1.2", "CA1.3", "CA1.4"}));
  EXPECT_EQ(c.constraints, (Strings{"SC1.1", "SC1.2", "SC1.3", "SC1.4"}));
  // Every UCA except CA1.4/not_provided, which cites only H3.
  EXPECT_EQ(c.ucas.size(), 15u);
  EXPECT_EQ(std::count(c.ucas.begin(), c.ucas.end(), "CA1.4/not_provided"), 0);
}

TEST(Trace, DownFromL3IsExact) {
  auto c = Down(Corpus(), "L3");
  EXPECT_EQ(c.losses, Strings{"L3"});
  EXPECT_EQ(c.hazards, Strings{"H3"});
  EXPECT_EQ(c.ucas, Strings{"CA1.4/not_provided"});
  EXPECT_EQ(c.actions, Strings{"CA1.4"});
  EXPECT_EQ(c.constraints, Strings{"SC1.4"});
}

TEST(Trace, UpFromCA14ReachesEveryLoss) {
  auto c = Up(Corpus(), "CA1.4");
  EXPECT_EQ(c.losses, (Strings{"L1", "L2", "L3"}));
  EXPECT_EQ(c.hazards, (Strings{"H1", "H2", "H3"}));
  EXPECT_EQ(c.ucas, (Strings{"CA1.4/not_provided", "CA1.4/provided",
                             "CA1.4/wrong_timing", "CA1.4/wrong_duration"}));
  EXPECT_EQ(c.actions, Strings{"CA1.4"});
  EXPECT_EQ(c.constraints, Strings{"SC1.4"});
}

TEST(Trace, UpFromCA11StaysOnL1) {
  auto c = Up(Corpus(), "CA1.1");
  EXPECT_EQ(c.losses, Strings{"L1"});
  EXPECT_EQ(c.hazards, (Strings{"H1", "H2"}));
}

TEST(Trace, UnknownRootIsE101) {
  for (auto chain : {TraceDown(Corpus(), Id("L9")), TraceDown(Corpus(), Id("H1")),
                     TraceUp(Corpus(), Id("CA9.9")), TraceUp(Corpus(), Id("L1"))}) {
    ASSERT_FALSE(chain.ok());
    EXPECT_EQ(Codes(chain.diagnostics), std::vector<Code>{Code::kE101});
  }
}

TEST(Trace, JustifiedAbsentUcasDoNotPropagate) {
  auto m = Load(testing::EditCorpus(
      "uca not_provided {\n      hazards: [H3]\n      context: \"UAV strays into inappropriate area\"\n    }",
      "uca not_provided none \"Rules always exist\""));
  ASSERT_TRUE(m.ok());
  auto c = Down(*m, "L3");
  EXPECT_EQ(c.hazards, Strings{"H3"});
  EXPECT_TRUE(c.ucas.empty());
  EXPECT_TRUE(c.actions.empty());
  EXPECT_EQ(Up(*m, "CA1.4").losses, Strings{"L1"});
}

TEST(Trace, CorpusMatchesBruteForceOracle) {
  const auto& m = Corpus();
  for (const auto& l : m.losses()) {
    EXPECT_EQ(Down(m, l.id.str().c_str()), testing::BruteForceDown(m, l.id.str()));
  }
  for (const auto& a : m.actions()) {
    EXPECT_EQ(Up(m, a.id.str().c_str()), testing::BruteForceUp(m, a.id.str()));
  }
}

TEST(Trace, Duality) {
  const auto& m = Corpus();
  for (const auto& l : m.losses()) {
    auto down = Down(m, l.id.str().c_str());
    for (const auto& a : m.actions()) {
      auto up = Up(m, a.id.str().c_str());
      const bool a_in_down = std::count(down.actions.begin(), down.actions.end(), a.id.str()) > 0;
      const bool l_in_up = std::count(up.losses.begin(), up.losses.end(), l.id.str()) > 0;
      EXPECT_EQ(a_in_down, l_in_up) << l.id.str() << " / " << a.id.str();
    }
  }
}

TEST(Validate, CorpusIsClean) { EXPECT_TRUE(Validate(Corpus()).empty()); }

TEST(Validate, DeletedUcaIsOneCoverageGap) {
  auto m = Load(testing::EditCorpus(
      "    uca not_provided {\n      hazards: [H3]\n      context: \"UAV strays into inappropriate area\"\n    }\n",
      ""));
  ASSERT_TRUE(m.ok());
  auto ds = Validate(*m);
  // That UCA was the only one citing H3, so H3 is now uncited as well.
  ASSERT_EQ(Codes(ds), (std::vector<Code>{Code::kW204, Code::kW201}));
  EXPECT_NE(ds[0].message.find("H3"), std::string::npos);
  EXPECT_NE(ds[1].message.find("CA1.4"), std::string::npos);
  EXPECT_NE(ds[1].message.find("not_provided"), std::string::npos);
  auto gaps = CategoryCoverage(*m);
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(m->get(gaps[0].action).id.str(), "CA1.4");
  EXPECT_EQ(gaps[0].category, UcaCategory::kNotProvided);
}

TEST(Validate, SkippingALevelIsE104) {
  auto m = Load(testing::EditCorpus(
      "  constraint SC1.1",
      "  action CA2.1 \"Skip\" from mission_req to autopilot {\n"
      "    uca not_provided { hazards: [H1] context: \"a\" }\n"
      "    uca provided { hazards: [H1] context: \"b\" }\n"
      "    uca wrong_timing { hazards: [H1] context: \"c\" }\n"
      "    uca wrong_duration { hazards: [H1] context: \"d\" }\n"
      "  }\n"
      "  constraint SC2.1 for CA2.1 \"x\"\n"
      "  constraint SC1.1"));
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(Codes(Validate(*m)), std::vector<Code>{Code::kE104});
}

TEST(Validate, UpwardActionIsE104) {
  auto m = Load(testing::EditCorpus("action CA 1.4 \"Create rules of flight or engagement\" from mission_req to operator",
                                    "action CA 1.4 \"Create rules of flight or engagement\" from operator to mission_req"));
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(Codes(Validate(*m)), std::vector<Code>{Code::kE104});
}

TEST(Validate, EnvironmentTakesPrecedenceOverAdjacency) {
  auto m = Load(testing::EditCorpus("action CA 1.4 \"Create rules of flight or engagement\" from mission_req to operator",
                                    "action CA 1.4 \"Create rules of flight or engagement\" from mission_req to physical_env"));
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(Codes(Validate(*m)), std::vector<Code>{Code::kE105});
}

TEST(Validate, LevelStructure) {
  const char* head = "mission \"m\" { statement: \"s\" system: \"y\" ";
  for (const char* levels : {"", "level w \"W\" environment ",
                             "level a \"A\" level w \"W\" environment level v \"V\" environment ",
                             "level w \"W\" environment level a \"A\" "}) {
    auto m = Load(std::string(head) + levels + "}");
    ASSERT_TRUE(m.ok()) << levels;
    auto codes = Codes(Validate(*m));
    ASSERT_FALSE(codes.empty()) << levels;
    for (auto c : codes) EXPECT_EQ(c, Code::kE107) << levels;
  }
}

TEST(Validate, FindingsAreSorted) {
  std::string text = testing::EditCorpus(
      "constraint SC1.2 for CA1.2 \"The mission planner shall indicate a specific target for the reconnaissance\"\n", "");
  text.insert(text.find("  loss L3"), "  loss L0 priority 9 \"Unlinked\"\n");
  text.insert(text.find("  level mission_req"),
              "  hazard H0 \"Uncited\" {\n    worst_case: \"w\"\n    leads_to: [L1]\n  }\n");
  auto m = Load(text);
  ASSERT_TRUE(m.ok());
  auto ds = Validate(*m);
  auto sorted = ds;
  SortDiagnostics(sorted);
  ASSERT_EQ(ds.size(), sorted.size());
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(ds[i].code, sorted[i].code);
  EXPECT_EQ(Codes(ds), (std::vector<Code>{Code::kW202, Code::kW204, Code::kW203}));
}

TEST(ScenarioCheck, CorpusScenarioIsLive) { EXPECT_TRUE(ScenarioCheck(Corpus()).empty()); }

TEST(ScenarioCheck, RuledOutUcaIsE106) {
  auto m = Load(testing::EditCorpus("uca: CA1.2/provided", "uca: CA1.4/provided"));
  ASSERT_TRUE(m.ok());
  EXPECT_TRUE(ScenarioCheck(*m).empty());

  auto ruled_out = Load(testing::EditCorpus(
      "    uca not_provided {\n      hazards: [H1]\n      context: \"No information collected\"\n    }",
      "    uca not_provided none \"Always designated\""));
  ASSERT_TRUE(ruled_out.ok());
  std::string text = Serialize(*ruled_out);
  text.replace(text.find("uca: CA1.2/provided"), 19, "uca: CA1.1/not_provided");
  auto m2 = Load(text);
  ASSERT_TRUE(m2.ok());
  EXPECT_EQ(Codes(ScenarioCheck(*m2)), std::vector<Code>{Code::kE106});
}

TEST(ScenarioCheck, UnknownActionIsE106NamingIt) {
  auto m = Load(testing::EditCorpus("uca: CA1.2/provided", "uca: CA9.9/provided"));
  ASSERT_TRUE(m.ok());
  auto ds = ScenarioCheck(*m);
  ASSERT_EQ(Codes(ds), std::vector<Code>{Code::kE106});
  EXPECT_NE(ds[0].message.find("CA9.9"), std::string::npos);
}

TEST(Matrix, CorpusIsFull) {
  auto matrix = BuildUcaMatrix(Corpus());
  ASSERT_EQ(matrix.rows.size(), 4u);
  EXPECT_EQ(matrix.cell_count(), 16u);
  for (const auto& row : matrix.rows) {
    for (const auto& cell : row.cells) {
      EXPECT_EQ(cell.state, UcaMatrix::CellState::kUca);
      EXPECT_TRUE(cell.uca);
    }
  }
  EXPECT_TRUE(CategoryCoverage(Corpus()).empty());
}

TEST(Matrix, JustifiedAbsentIsNotAGap) {
  auto m = Load(testing::EditCorpus(
      "uca not_provided {\n      hazards: [H3]\n      context: \"UAV strays into inappropriate area\"\n    }",
      "uca not_provided none \"Rules always exist\""));
  ASSERT_TRUE(m.ok());
  auto matrix = BuildUcaMatrix(*m);
  EXPECT_EQ(matrix.rows[3].cells[0].state, UcaMatrix::CellState::kJustifiedAbsent);
  EXPECT_TRUE(CategoryCoverage(*m).empty());
}

TEST(Criticality, CorpusRanking) {
  // Weights: L1=3, L2=2, L3=1.  CA1.4 reaches all three losses; the other
  // actions only cite H1/H2 and so reach L1 alone.
  const auto& m = Corpus();
  auto rank = CriticalityRank(m);
  ASSERT_EQ(rank.size(), 4u);
  const std::vector<std::pair<std::string, int>> expected = {
      {"CA1.4", 6}, {"CA1.1", 3}, {"CA1.2", 3}, {"CA1.3", 3}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(m.get(rank[i].action).id.str(), expected[i].first);
    EXPECT_EQ(rank[i].score, expected[i].second);
  }
  EXPECT_EQ(rank[0].reachable_losses.size(), 3u);
}

TEST(Criticality, TieBreakUsesNaturalIdOrder) {
  // Renaming the action also needs its constraint moved.
  std::string text = testing::EditCorpus("action CA 1.3 ", "action CA 1.10 ");
  text.replace(text.find("for CA1.3"), 9, "for CA1.10");
  auto renamed = Load(text);
  ASSERT_TRUE(renamed.ok());
  auto rank = CriticalityRank(*renamed);
  std::vector<std::string> order;
  for (const auto& s : rank) order.push_back(renamed->get(s.action).id.str());
  EXPECT_EQ(order, (Strings{"CA1.4", "CA1.1", "CA1.2", "CA1.10"}));
}

TEST(Skeletons, LiveUcasTimesFifteenElements) {
  auto sk = ScenarioSkeletons(Corpus(), Id("CA1.4"));
  ASSERT_TRUE(sk.ok());
  ASSERT_EQ(sk->size(), 60u);
  EXPECT_EQ(Corpus().get((*sk)[0].uca).category, UcaCategory::kNotProvided);
  EXPECT_EQ((*sk)[0].element, LoopElement::kController);
  EXPECT_EQ((*sk)[14].element, LoopElement::kProcessOutput);
  EXPECT_EQ(Corpus().get((*sk)[15].uca).category, UcaCategory::kProvided);
  EXPECT_FALSE(ScenarioSkeletons(Corpus(), Id("CA7")).ok());
}

}  // namespace
}  // namespace mas
