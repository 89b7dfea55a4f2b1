#include <gtest/gtest.h>

#include <algorithm>

#include "guard_oracle.hpp"
#include "rsmlkit/analysis.hpp"
#include "support.hpp"

using namespace rsmlkit;

namespace
{

Specification two_cases(const std::string & first, const std::string & second)
{
  return test::spec_from("specification a\ntype T_Lamp = { ON, OFF }\n"
                         "component C { input B : bool output L : T_Lamp\n"
                         "assign L {\n" +
                         first + "\n" + second + "\n} }");
}

const Diagnostic * find_code(const AnalysisReport & r, const std::string & code)
{
  const auto it = std::find_if(r.diagnostics.begin(), r.diagnostics.end(),
                               [&](const Diagnostic & d) { return d.code == code; });
  return it == r.diagnostics.end() ? nullptr : &*it;
}

}  // namespace

TEST(Analysis, StartStopIsCompleteAndConsistent)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const AnalysisReport r = analyze(s);
  ASSERT_EQ(r.guard_sets.size(), 1u);
  EXPECT_TRUE(r.guard_sets[0].completeness.complete);
  EXPECT_FALSE(r.guard_sets[0].completeness.enumerated);
  EXPECT_TRUE(r.guard_sets[0].consistency.consistent());
  EXPECT_EQ(r.summary(), "1 guard set: 1 complete, 1 consistent");
  EXPECT_FALSE(has_errors(r.diagnostics));
}

TEST(Analysis, StartStopReferencedDomain)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const ReferencedDomain d = referenced_domain(s, guard_sets(s)[0]);
  ASSERT_EQ(d.slots.size(), 3u);
  EXPECT_EQ(s.slot_name(d.slots[0]), "SSE_Driver_Needs_HMI.Clutch_Pedal");
  EXPECT_EQ(s.slot_name(d.slots[1]), "SSE_Driver_Needs_HMI.Steering_Wheel");
  EXPECT_EQ(s.slot_name(d.slots[2]), "SSE_Driver_Needs_HMI.Gearbox");
  EXPECT_EQ(d.values[0].size(), 2u);
  EXPECT_EQ(d.values[1].size(), 2u);
  EXPECT_EQ(d.values[2].size(), 3u);
  EXPECT_EQ(d.product, 12u);
}

TEST(Analysis, ConstantTrueTableHasEmptyDomain)
{
  const Specification s = test::spec_from(
    "specification a\ncomponent C { input B : bool output o : bool\n"
    "assign o { when table { B = TRUE : . } then TRUE } }");
  const ReferencedDomain d = referenced_domain(s, guard_sets(s)[0]);
  EXPECT_TRUE(d.slots.empty());
  EXPECT_EQ(d.product, 1u);
  EXPECT_TRUE(check_completeness(s, guard_sets(s)[0]).complete);
}

TEST(Analysis, DomainCapIsEnforced)
{
  const Specification s = test::spec_from(
    "specification a\ntype R = int [0..999]\n"
    "component C { input x : R input y : R input z : R output o : bool\n"
    "assign o { when table {\n x = 1 : T\n y = 1 : T\n z = 1 : T\n } then TRUE } }");
  const GuardSet g = guard_sets(s)[0];
  EXPECT_EQ(referenced_domain(s, g).product, 1'000'000'000u);
  try {
    (void)check_completeness(s, g, 10'000'000);
    FAIL() << "expected DomainTooLarge";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), "DomainTooLarge");
  }
  const AnalysisReport r = analyze(s);
  ASSERT_NE(find_code(r, "DomainTooLarge"), nullptr);
  EXPECT_TRUE(r.guard_sets[0].too_large);
}

TEST(Analysis, SingleCaseIsIncompleteWithWitness)
{
  const Specification s = test::spec_from(
    "specification a\ncomponent C { input B : bool output o : bool\n"
    "assign o { when table { B = TRUE : T } then TRUE } }");
  const Completeness c = check_completeness(s, guard_sets(s)[0]);
  EXPECT_FALSE(c.complete);
  ASSERT_TRUE(c.witness.has_value());
  ASSERT_EQ(c.witness->size(), 1u);
  EXPECT_EQ(s.format_value((*c.witness)[0].first, (*c.witness)[0].second), "FALSE");
  const AnalysisReport r = analyze(s);
  const Diagnostic * d = find_code(r, "IncompleteAssignment");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->severity, Severity::warning);
  EXPECT_NE(d->message.find("B=FALSE"), std::string::npos) << d->message;
}

TEST(Analysis, ConflictingCases)
{
  const Specification s = two_cases("when table { B = TRUE : T } then ON",
                                    "when table { B = TRUE : T } then OFF");
  const Consistency c = check_consistency(s, guard_sets(s)[0]);
  ASSERT_EQ(c.overlaps.size(), 1u);
  EXPECT_TRUE(c.overlaps[0].conflict);
  EXPECT_EQ(c.overlaps[0].first, 0u);
  EXPECT_EQ(c.overlaps[0].second, 1u);
  EXPECT_EQ(format_witness(s, c.overlaps[0].witness), "B=TRUE");
  const AnalysisReport r = analyze(s);
  ASSERT_NE(find_code(r, "InconsistentGuards"), nullptr);
  EXPECT_TRUE(has_errors(r.diagnostics));
}

TEST(Analysis, EquivalentOverlapIsOnlyAWarning)
{
  const Specification s = two_cases("when table { B = TRUE : T } then ON",
                                    "when table { B = TRUE : . } then ON");
  const Consistency c = check_consistency(s, guard_sets(s)[0]);
  EXPECT_TRUE(c.consistent());
  ASSERT_EQ(c.overlaps.size(), 1u);
  EXPECT_FALSE(c.overlaps[0].conflict);
  EXPECT_EQ(format_witness(s, c.overlaps[0].witness), "B=TRUE");
  const AnalysisReport r = analyze(s);
  const Diagnostic * d = find_code(r, "OverlappingEquivalentCases");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->severity, Severity::warning);
  EXPECT_FALSE(has_errors(r.diagnostics));
}

TEST(Analysis, WitnessIsLexicographicallySmallest)
{
  const Specification s = test::spec_from(
    "specification a\ntype R = int [0..3]\n"
    "component C { input x : R input y : R output o : bool\n"
    "assign o { when table {\n x < 2 : T .\n y > 0 : . T\n } then TRUE } }");
  const Completeness c = check_completeness(s, guard_sets(s)[0]);
  ASSERT_TRUE(c.witness.has_value());
  // the first uncovered valuation with x most significant is x=2, y=0
  EXPECT_EQ(format_witness(s, *c.witness), "x=2, y=0");
}

TEST(Analysis, AbsorbingStateIsInfo)
{
  const Specification s = test::spec_from(
    "specification a\ncomponent C { input B : bool\n"
    "statemachine M { initial Idle; state Idle { goto Done when table { B = TRUE : T } }\n"
    "state Done { } } }");
  const AnalysisReport r = analyze(s);
  const Diagnostic * d = find_code(r, "AbsorbingState");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->severity, Severity::info);
  const Diagnostic * inc = find_code(r, "IncompleteTransitions");
  ASSERT_NE(inc, nullptr);
  EXPECT_EQ(inc->severity, Severity::info);
}

TEST(Analysis, CycleBetweenComponents)
{
  const Specification s = test::spec_from(
    "specification a\n"
    "component A { input y : bool output x : bool\n"
    "assign x { when table { y = TRUE : T } then TRUE when else then FALSE } }\n"
    "component B { input x : bool output y : bool\n"
    "assign y { when table { x = TRUE : T } then TRUE when else then FALSE } }\n");
  const DependencyGraph g = build_dependency_graph(s);
  EXPECT_FALSE(g.acyclic());
  ASSERT_EQ(g.cycle.size(), 2u);
  std::vector<std::string> names;
  for (SlotId sl : g.cycle) names.push_back(s.slot_name(sl));
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"A.x", "B.y"}));
  const AnalysisReport r = analyze(s);
  const Diagnostic * d = find_code(r, "CyclicDependency");
  ASSERT_NE(d, nullptr);
  EXPECT_NE(d->message.find("->"), std::string::npos);
}

TEST(Analysis, SelfStateTestIsNotACycle)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const DependencyGraph g = build_dependency_graph(s);
  ASSERT_TRUE(g.acyclic());
  // every slot precedes the slots that read it
  const auto & order = *g.order;
  auto pos = [&](SlotId x) { return std::find(order.begin(), order.end(), x) - order.begin(); };
  for (SlotId v = 0; v < g.reads.size(); ++v) {
    for (SlotId u : g.reads[v]) EXPECT_LT(pos(u), pos(v));
  }
}

TEST(Analysis, ComponentOrderPutsProducersFirst)
{
  const Specification s = test::corpus_spec("twocomp/twocomp.rsml");
  const ComponentGraph g = build_component_graph(s);
  ASSERT_TRUE(g.order.has_value());
  EXPECT_EQ(s.components[(*g.order)[0]].name, "Sensor");
  EXPECT_EQ(s.components[(*g.order)[1]].name, "Alarm");
}

TEST(Analysis, GuardSetsFollowSourceOrder)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const auto sets = guard_sets(s);
  std::vector<std::string> names;
  for (const auto & g : sets) names.push_back(g.name);
  EXPECT_EQ(names, (std::vector<std::string>{"Engine.Stopped", "Engine.Running",
                                             "Start_Stop_Controller.HMI_Strt_Req",
                                             "Start_Stop_Controller.HMI_Stop_Req"}));
}

TEST(AnalysisOracle, RandomGuardSetsAgree)
{
  const auto r = test::compare_with_oracle(300, 12345);
  EXPECT_EQ(r.checked, 300);
  EXPECT_EQ(r.verdict_mismatches, 0) << r.first_failure;
  EXPECT_EQ(r.witness_failures, 0) << r.first_failure;
}
