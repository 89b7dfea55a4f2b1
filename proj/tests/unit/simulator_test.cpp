#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "rsmlkit/simulator.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace rsmlkit;

namespace
{

SlotId slot(const Specification & s, const std::string & n)
{
  return s.variables[*s.find_variable(n)].slot;
}

InputAssignment in(const Specification & s, std::initializer_list<std::pair<const char *, const char *>> kv)
{
  InputAssignment a;
  for (const auto & [k, v] : kv) a.emplace_back(slot(s, k), *s.parse_value(slot(s, k), v));
  return a;
}

std::string value(const Specification & s, const SystemState & st, const std::string & n)
{
  return s.format_value(slot(s, n), st.values[slot(s, n)]);
}

const char * const toy =
  "specification toy\n"
  "component C { input a : bool input b : bool }\n"
  "invariant Not_Both : table {\n a = TRUE : F .\n b = TRUE : . F\n}\n";

}  // namespace

TEST(Simulator, InitialStateUsesDefaults)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const SystemState st = initial_state(s);
  EXPECT_EQ(st.step, 0u);
  EXPECT_EQ(value(s, st, "Clutch_Pedal"), "PRESSED");
  EXPECT_EQ(value(s, st, "HMI_Stop_Ena"), "FALSE");
  const Specification m = test::corpus_spec("mutex/mutex_faulty.rsml");
  EXPECT_EQ(m.format_value(m.machines[0].slot, initial_state(m).values[m.machines[0].slot]), "Stopped");
}

TEST(Simulator, StartStopCases)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const Simulator sim(s);
  auto r = sim.step(sim.initial_state(), in(s, {{"Clutch_Pedal", "PRESSED"}}));
  EXPECT_EQ(value(s, r.state, "HMI_Stop_Ena"), "FALSE");
  EXPECT_EQ(r.fired.cases[0], std::optional<std::size_t>(0));
  r = sim.step(r.state, in(s, {{"Clutch_Pedal", "RELEASED"}, {"Steering_Wheel", "NOT_USED"},
                               {"Gearbox", "NEUTRAL"}}));
  EXPECT_EQ(value(s, r.state, "HMI_Stop_Ena"), "TRUE");
  EXPECT_EQ(r.fired.cases[0], std::optional<std::size_t>(1));
  EXPECT_EQ(r.state.step, 2u);
}

TEST(Simulator, ScriptHandStepped)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto script = parse_script(s, test::slurp(test::corpus("startstop/startstop.script")), "s");
  ASSERT_TRUE(script.ok()) << test::describe(script.diagnostics);
  const Trace t = run_script(Simulator(s), *script.value);
  ASSERT_EQ(t.steps.size(), 3u);
  // released + not used with the gearbox still in neutral: the else case
  EXPECT_EQ(value(s, t.steps[0].state, "HMI_Stop_Ena"), "TRUE");
  EXPECT_EQ(value(s, t.steps[1].state, "HMI_Stop_Ena"), "FALSE");
  EXPECT_EQ(value(s, t.steps[2].state, "HMI_Stop_Ena"), "TRUE");
  // unmentioned inputs persist
  EXPECT_EQ(value(s, t.steps[1].state, "Clutch_Pedal"), "RELEASED");
  EXPECT_TRUE(t.violations.empty());
}

TEST(Simulator, EmptyScript)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto script = parse_script(s, "# nothing\n\n", "s");
  ASSERT_TRUE(script.ok());
  const Trace t = run_script(Simulator(s), *script.value);
  EXPECT_TRUE(t.steps.empty());
  EXPECT_EQ(t.initial, initial_state(s));
}

TEST(Simulator, ScriptRejectsOutputs)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto script = parse_script(s, "HMI_Stop_Ena=TRUE\n", "s");
  ASSERT_FALSE(script.ok());
  EXPECT_EQ(script.diagnostics[0].code, "NotAnInput");
  EXPECT_EQ(script.diagnostics[0].message, "not an input: HMI_Stop_Ena");
  EXPECT_EQ(script.diagnostics[0].span.line, 1);
}

TEST(Simulator, ScriptErrors)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  EXPECT_EQ(parse_script(s, "Gearbox\n", "s").diagnostics.at(0).code, "ScriptSyntax");
  EXPECT_EQ(parse_script(s, "Nope=TRUE\n", "s").diagnostics.at(0).code, "UnknownName");
  EXPECT_EQ(parse_script(s, "Gearbox=TRUE\n", "s").diagnostics.at(0).code, "TypeMismatch");
}

TEST(Simulator, InitialViolationIsStepZero)
{
  const Specification s = test::spec_from(
    "specification v\ncomponent C { input B : bool init FALSE }\n"
    "invariant B_Holds : table { B = TRUE : T }\n");
  const Trace t = run_script(Simulator(s), {});
  ASSERT_EQ(t.violations.size(), 1u);
  EXPECT_EQ(t.violations[0].step, 0u);
}

TEST(Simulator, MutexViolation)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const auto script = parse_script(s, test::slurp(test::corpus("mutex/mutex.script")), "s");
  ASSERT_TRUE(script.ok());
  const Trace t = run_script(Simulator(s), *script.value, false);
  ASSERT_EQ(t.violations.size(), 1u);
  EXPECT_EQ(t.violations[0].step, 2u);
  EXPECT_EQ(s.invariants[t.violations[0].invariant].name, "No_Start_And_Stop");
  EXPECT_EQ(value(s, t.steps.back().state, "HMI_Strt_Req"), "TRUE");
  EXPECT_EQ(value(s, t.steps.back().state, "HMI_Stop_Req"), "TRUE");
}

TEST(Simulator, MachinesReadPriorState)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const Simulator sim(s);
  // the engine starts in this step, but the stop request still sees Stopped
  const auto r = sim.step(sim.initial_state(), in(s, {{"Start_Button", "TRUE"}, {"Brake", "TRUE"}}));
  EXPECT_EQ(s.format_value(s.machines[0].slot, r.state.values[s.machines[0].slot]), "Running");
  EXPECT_EQ(value(s, r.state, "HMI_Stop_Req"), "FALSE");
}

TEST(Simulator, WiredValuesFlowWithinOneStep)
{
  const Specification s = test::corpus_spec("twocomp/twocomp.rsml");
  const Simulator sim(s);
  auto r = sim.step(sim.initial_state(), {{slot(s, "Raw"), 3}});
  EXPECT_EQ(value(s, r.state, "Level_High"), "TRUE");
  EXPECT_EQ(s.format_value(s.machines[0].slot, r.state.values[s.machines[0].slot]), "Ringing");
  EXPECT_EQ(value(s, r.state, "Alarm_On"), "FALSE");  // reads the prior machine state
  r = sim.step(r.state, {});
  EXPECT_EQ(value(s, r.state, "Alarm_On"), "TRUE");
}

TEST(Simulator, FramingAndDeterminism)
{
  for (const char * f : {"mutex/mutex_faulty.rsml", "twocomp/twocomp.rsml", "startstop/startstop.rsml"}) {
    const Specification s = test::corpus_spec(f);
    const Simulator sim(s);
    const auto combos = input_combinations(sim);
    std::mt19937 rng(3);
    SystemState cur = sim.initial_state();
    for (int i = 0; i < 200; ++i) {
      const auto & inputs = combos[rng() % combos.size()];
      const auto r = sim.step(cur, inputs);
      EXPECT_EQ(r.state, sim.step(cur, inputs).state);
      for (SlotId sl = 0; sl < s.slot_count(); ++sl) {
        bool written = std::any_of(inputs.begin(), inputs.end(), [&](const auto & p) { return p.first == sl; });
        if (s.slots[sl].kind == Slot::Kind::machine) {
          written = written || r.fired.transitions[s.slots[sl].index].has_value();
        } else if (auto a = s.assignment_for(s.slot_variable(sl))) {
          written = written || r.fired.cases[*a].has_value();
        }
        if (!written) EXPECT_EQ(r.state.values[sl], cur.values[sl]) << f << " " << s.slot_name(sl);
      }
      cur = r.state;
    }
  }
}

TEST(Simulator, NondeterministicFiring)
{
  const Specification s = test::spec_from(
    "specification n\ntype T_Lamp = { ON, OFF }\n"
    "component C { input B : bool output L : T_Lamp\n"
    "assign L { when table { B = TRUE : T } then ON when table { B = TRUE : T } then OFF } }");
  const Simulator sim(s);
  try {
    (void)sim.step(sim.initial_state(), {{slot(s, "B"), 1}});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), "NondeterministicFiring");
  }
}

TEST(Simulator, RejectsCycles)
{
  const Specification s = test::spec_from(
    "specification a\n"
    "component A { input y : bool output x : bool\n"
    "assign x { when table { y = TRUE : T } then TRUE when else then FALSE } }\n"
    "component B { input x : bool output y : bool\n"
    "assign y { when table { x = TRUE : T } then TRUE when else then FALSE } }\n");
  EXPECT_THROW(Simulator{s}, Error);
}

TEST(Explorer, StartStopCountMatchesHandEnumeration)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto states = test::startstop_states(s);
  const ExplorationReport r = explore(Simulator(s));
  EXPECT_EQ(r.states, states.size());
  EXPECT_FALSE(r.violated());
  EXPECT_EQ(r.limit, ExplorationReport::Limit::none);
}

TEST(Explorer, IndependentInputsViolateAtDepthOne)
{
  const Specification s = test::spec_from(toy);
  const ExplorationReport r = explore(Simulator(s));
  ASSERT_EQ(r.counterexamples.size(), 1u);
  const Trace & t = r.counterexamples[0].trace;
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(format_inputs(s, t.steps[0].inputs), "a=TRUE, b=TRUE");
}

TEST(Explorer, MutexCounterexampleIsShortest)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const Simulator sim(s);
  const ExplorationReport r = explore(sim);
  ASSERT_EQ(r.counterexamples.size(), 1u);
  const std::size_t len = r.counterexamples[0].trace.steps.size();

  EXPECT_EQ(len, 2u);
  EXPECT_FALSE(test::violates_within(sim, len - 1));
  EXPECT_TRUE(test::violates_within(sim, len));

  // the counterexample replays
  SystemState st = sim.initial_state();
  for (const auto & step : r.counterexamples[0].trace.steps) st = sim.step(st, step.inputs).state;
  EXPECT_FALSE(sim.violated_invariants(st.values).empty());
}

TEST(Explorer, FixedMutexHolds)
{
  const Specification s = test::corpus_spec("mutex/mutex_fixed.rsml");
  const ExplorationReport r = explore(Simulator(s));
  EXPECT_FALSE(r.violated());
  EXPECT_EQ(r.limit, ExplorationReport::Limit::none);
}

TEST(Explorer, Limits)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  EXPECT_EQ(explore(Simulator(s), {1, std::nullopt}).limit, ExplorationReport::Limit::states);
  const Specification m = test::corpus_spec("mutex/mutex_fixed.rsml");
  EXPECT_EQ(explore(Simulator(m), {1'000'000, 1}).limit, ExplorationReport::Limit::depth);
  EXPECT_EQ(explore(Simulator(m), {1'000'000, 10}).limit, ExplorationReport::Limit::none);
}

TEST(Explorer, ScriptStatesAreReachable)
{
  // every state on a scripted run is found by a search bounded at the script length
  const Specification s = test::corpus_spec("mutex/mutex_fixed.rsml");
  const Simulator sim(s);
  const auto script = parse_script(s, "Start_Button=TRUE\nBrake=TRUE\nStart_Button=FALSE\n", "s");
  ASSERT_TRUE(script.ok());
  const Trace t = run_script(sim, *script.value);
  std::set<Valuation> frontier{sim.initial_state().values}, seen = frontier;
  for (std::size_t d = 0; d < t.steps.size(); ++d) {
    std::set<Valuation> next;
    for (const auto & v : frontier) {
      for (const auto & c : input_combinations(sim)) next.insert(sim.step({v, d}, c).state.values);
    }
    seen.insert(next.begin(), next.end());
    frontier = next;
  }
  for (const auto & st : t.steps) EXPECT_TRUE(seen.count(st.state.values));
  EXPECT_LE(seen.size(), explore(sim).states);
}
