#include <gtest/gtest.h>

#include <algorithm>

#include "agreement.hpp"
#include "machine_tokens.hpp"
#include "rsmlkit/eventb.hpp"
#include "rsmlkit/eventb_reader.hpp"
#include "support.hpp"

using namespace rsmlkit;

namespace
{

std::vector<std::string> event_names(const eventb::Machine & m)
{
  std::vector<std::string> out;
  for (const auto & e : m.events) out.push_back(e.name);
  return out;
}

}  // namespace

TEST(EventB, FlatMachineMatchesTranscription)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const std::string text = eventb::render(eventb::gen_flat(s));
  const auto r = test::compare_machine_tokens(text, test::slurp(test::corpus("startstop/expected_mch.tokens")));
  EXPECT_TRUE(r.variables);
  EXPECT_TRUE(r.invariants);
  EXPECT_TRUE(r.false_event);
  EXPECT_TRUE(r.true_event);
  EXPECT_TRUE(r.all()) << r.detail;
}

TEST(EventB, GoldenFiles)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  EXPECT_EQ(eventb::render(eventb::gen_context(s)),
            test::slurp(test::corpus("startstop/golden/startstop_ctx.ebc")));
  EXPECT_EQ(eventb::render(eventb::gen_flat(s)),
            test::slurp(test::corpus("startstop/golden/startstop_mch.ebm")));
}

TEST(EventB, DisjunctiveGuardStaysWhole)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto & cases = s.assigns[0].cases;
  const std::vector<const Condition *> sib{&cases[0].condition, &cases[1].condition};
  const auto d = eventb::translate_condition(s, cases[0].condition, sib);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(eventb::render(d[0]), "Clutch_Pedal = PRESSED ∨ Steering_Wheel = USED ∨ Gearbox ≠ NEUTRAL");
  const auto e = eventb::translate_condition(s, cases[1].condition, sib);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(eventb::render(e[2]), "Gearbox = NEUTRAL");
}

TEST(EventB, ConjunctionColumnIsSplit)
{
  const Specification s = test::corpus_spec("mutex/mutex_fixed.rsml");
  const auto m = eventb::gen_flat(s);
  const eventb::Event * e = m.find_event("Set_HMI_Stop_Req_TRUE");
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->guards.size(), 3u);
  EXPECT_EQ(e->guards[1].label, "grd2");
  EXPECT_EQ(eventb::render(e->guards[1].pred), "Engine_state = Running");
  const eventb::Event * t = m.find_event("Engine_Running_to_Stopped");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(eventb::render(t->guards[0].pred), "Engine_state = Running");
  EXPECT_EQ(t->guards.size(), 3u);
}

TEST(EventB, ComplexElseIsOneNegatedGuard)
{
  const Specification s = test::corpus_spec("andor/andor.rsml");
  const auto & cases = s.assigns[0].cases;
  const std::vector<const Condition *> sib{&cases[0].condition, &cases[1].condition};
  const auto g = eventb::translate_condition(s, cases[1].condition, sib);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].kind, eventb::Pred::Kind::negation);
}

TEST(EventB, AsciiSpellings)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const std::string text = eventb::render(eventb::gen_flat(s), {true});
  EXPECT_NE(text.find("Clutch_Pedal = PRESSED or Steering_Wheel = USED or Gearbox /= NEUTRAL"),
            std::string::npos);
  EXPECT_NE(text.find("HMI_Stop_Ena : BOOL"), std::string::npos);
  EXPECT_NE(text.find("Gearbox :: T_Gearbox"), std::string::npos);
  EXPECT_TRUE(std::all_of(text.begin(), text.end(), [](char c) { return static_cast<unsigned char>(c) < 128; }));
}

TEST(EventB, EnvironmentEvents)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const auto open = eventb::gen_flat(s);
  EXPECT_EQ(event_names(open),
            (std::vector<std::string>{"INITIALISATION", "Set_HMI_Stop_Ena_FALSE", "Set_HMI_Stop_Ena_TRUE",
                                      "Env_Set_Clutch_Pedal", "Env_Set_Steering_Wheel", "Env_Set_Gearbox"}));
  EXPECT_TRUE(open.find_event("Env_Set_Gearbox")->guards.empty());
  const auto closed = eventb::gen_flat(s, {true});
  EXPECT_EQ(closed.events.size(), 3u);
}

TEST(EventB, ContextPartitions)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const auto c = eventb::gen_context(s);
  ASSERT_EQ(c.sets.size(), 1u);
  EXPECT_EQ(c.sets[0].name, "T_Engine_States");
  EXPECT_EQ(c.sets[0].members, (std::vector<std::string>{"Stopped", "Running"}));
  ASSERT_EQ(c.axioms.size(), 1u);
  EXPECT_EQ(eventb::render(c.axioms[0].pred), "partition(T_Engine_States, {Stopped}, {Running})");
}

TEST(EventB, IntRangeTyping)
{
  const Specification s = test::corpus_spec("twocomp/twocomp.rsml");
  const auto m = eventb::gen_flat(s);
  EXPECT_EQ(eventb::render(m.invariants[0].pred), "Raw ∈ 0‥3");
}

TEST(EventB, UserInvariantsCarryTrace)
{
  const Specification s = test::corpus_spec("mutex/mutex_faulty.rsml");
  const auto m = eventb::gen_flat(s);
  const auto & last = m.invariants.back();
  EXPECT_EQ(last.source, "invariant:No_Start_And_Stop");
  EXPECT_EQ(eventb::render(last.pred), "HMI_Strt_Req ≠ TRUE ∨ HMI_Stop_Req ≠ TRUE");
  EXPECT_NE(std::find(last.comments.begin(), last.comments.end(), "trace: REQ-002"), last.comments.end());
}

TEST(EventB, ChainOnTwoComponents)
{
  const Specification s = test::corpus_spec("twocomp/twocomp.rsml");
  const auto chain = eventb::gen_chain(s);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[0].name, "twocomp_m0");
  EXPECT_FALSE(chain[0].refines.has_value());
  EXPECT_EQ(chain[0].variables, (std::vector<std::string>{"Alarm_On"}));
  EXPECT_EQ(chain[1].refines, std::optional<std::string>("twocomp_m0"));
  EXPECT_EQ(chain[2].refines, std::optional<std::string>("twocomp_r1"));
  // each level keeps the variables of the one above
  for (std::size_t i = 1; i < chain.size(); ++i) {
    for (const auto & v : chain[i - 1].variables) {
      EXPECT_NE(std::find(chain[i].variables.begin(), chain[i].variables.end(), v), chain[i].variables.end());
    }
  }
  // the sensor output is an environment variable until the sensor is added
  EXPECT_NE(chain[1].find_event("Env_Set_Level_High"), nullptr);
  const eventb::Event * set = chain[2].find_event("Set_Level_High_TRUE");
  ASSERT_NE(set, nullptr);
  EXPECT_EQ(set->refines, std::optional<std::string>("Env_Set_Level_High"));
  EXPECT_EQ(chain[2].find_event("Env_Set_Level_High"), nullptr);
  // every refined event exists one level up
  for (std::size_t i = 1; i < chain.size(); ++i) {
    for (const auto & e : chain[i].events) {
      if (e.refines) EXPECT_NE(chain[i - 1].find_event(*e.refines), nullptr) << e.name;
    }
  }
}

TEST(EventB, ChainNeedsOutputs)
{
  const Specification s = test::spec_from("specification x\ncomponent C { input a : bool }\n");
  try {
    (void)eventb::gen_chain(s);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), "NoOutputs");
  }
}

TEST(EventB, NameCollisionIsReported)
{
  const Specification s = test::spec_from(
    "specification x\ntype T_Mode = { Idle, Busy }\n"
    "component C { input a : T_Mode\nstatemachine M { initial Idle; state Idle { } } }\n");
  try {
    (void)eventb::gen_flat(s);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), "NameCollision");
  }
}

TEST(EventB, Deterministic)
{
  const Specification s = test::corpus_spec("twocomp/twocomp.rsml");
  for (const auto & m : eventb::gen_chain(s)) {
    EXPECT_EQ(eventb::render(m), eventb::render(m));
  }
  const Specification again = test::corpus_spec("twocomp/twocomp.rsml");
  EXPECT_EQ(eventb::render(eventb::gen_flat(s)), eventb::render(eventb::gen_flat(again)));
}

class ReadBack : public ::testing::TestWithParam<std::tuple<std::string, bool>>
{
};

TEST_P(ReadBack, RenderedTextParsesToTheSameUnit)
{
  const auto & [file, ascii] = GetParam();
  const Specification s = test::corpus_spec(file);
  const eventb::RenderOptions ro{ascii};
  eventb::Context c = eventb::gen_context(s);
  eventb::strip_sources(c);
  EXPECT_EQ(eventb::read_context(eventb::render(c, ro)), c);
  std::vector<eventb::Machine> units{eventb::gen_flat(s)};
  for (auto & m : eventb::gen_chain(s)) units.push_back(std::move(m));
  for (auto & m : units) {
    eventb::strip_sources(m);
    const std::string text = eventb::render(m, ro);
    const eventb::Machine back = eventb::read_machine(text);
    EXPECT_EQ(back, m) << text;
    EXPECT_EQ(eventb::render(back, ro), text);
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, ReadBack,
                         ::testing::Combine(::testing::Values("startstop/startstop.rsml",
                                                              "mutex/mutex_faulty.rsml",
                                                              "twocomp/twocomp.rsml",
                                                              "andor/andor.rsml"),
                                            ::testing::Bool()));

TEST(EventBReader, SyntaxErrorHasPosition)
{
  try {
    (void)eventb::read_machine("machine m\nsees c\nvariables\n  x\ninvariants\n  @inv1 x ∈\nend\n");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), "EventBSyntax");
    EXPECT_EQ(e.diagnostic().span.line, 7);
  }
}

TEST(EventBReader, PredicateSpellingsAgree)
{
  EXPECT_EQ(eventb::read_predicate("a = X or not(b /= Y) and c <= 3"),
            eventb::read_predicate("a = X ∨ ¬(b ≠ Y) ∧ c ≤ 3"));
}

TEST(EventBInterpreter, StepsTheStartStopMachine)
{
  const Specification s = test::corpus_spec("startstop/startstop.rsml");
  const eventb::Interpreter in(eventb::gen_context(s), eventb::gen_flat(s));
  eventb::State st = in.initial();
  EXPECT_EQ(st.at("Clutch_Pedal"), "PRESSED");
  auto en = in.enabled(st);
  EXPECT_NE(std::find(en.begin(), en.end(), "Set_HMI_Stop_Ena_FALSE"), en.end());
  EXPECT_EQ(std::find(en.begin(), en.end(), "Set_HMI_Stop_Ena_TRUE"), en.end());
  st = in.apply("Env_Set_Clutch_Pedal", st, {{"Clutch_Pedal", "RELEASED"}});
  st = in.apply("Env_Set_Steering_Wheel", st, {{"Steering_Wheel", "NOT_USED"}});
  en = in.enabled(st);
  EXPECT_NE(std::find(en.begin(), en.end(), "Set_HMI_Stop_Ena_TRUE"), en.end());
  st = in.apply("Set_HMI_Stop_Ena_TRUE", st);
  EXPECT_EQ(st.at("HMI_Stop_Ena"), "TRUE");
  EXPECT_TRUE(in.violated(st).empty());
  EXPECT_THROW((void)in.apply("Env_Set_Gearbox", st), Error);
}

TEST(Agreement, StartStop)
{
  const auto r = test::check_agreement(test::corpus_spec("startstop/startstop.rsml"));
  EXPECT_EQ(r.states, 12u);
  EXPECT_EQ(r.pairs, 144u);
  EXPECT_EQ(r.mismatches, 0u) << r.first_mismatch;
}

TEST(Agreement, OtherCorpora)
{
  for (const char * f : {"mutex/mutex_faulty.rsml", "mutex/mutex_fixed.rsml", "twocomp/twocomp.rsml"}) {
    const auto r = test::check_agreement(test::corpus_spec(f), true);
    EXPECT_GT(r.pairs, 0u);
    EXPECT_EQ(r.mismatches, 0u) << f << ": " << r.first_mismatch;
  }
}
