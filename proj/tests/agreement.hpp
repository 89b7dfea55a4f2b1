#pragma once

// Compares the simulator with the generated flat machine, executed from its
// rendered text, over every reachable (state, input) pair.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rsmlkit/analysis.hpp"
#include "rsmlkit/eventb.hpp"
#include "rsmlkit/eventb_reader.hpp"
#include "rsmlkit/simulator.hpp"

namespace rsmlkit::test
{

struct Agreement
{
  std::size_t states = 0;
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

inline std::string eventb_name(const Specification & s, SlotId sl)
{
  if (s.slots[sl].kind == Slot::Kind::machine) return eventb::state_variable(s.machines[s.slots[sl].index]);
  return s.variables[s.slot_variable(sl)].name;
}

inline eventb::State to_eventb(const Specification & s, const Valuation & v)
{
  eventb::State st;
  for (SlotId sl = 0; sl < s.slot_count(); ++sl) st[eventb_name(s, sl)] = s.format_value(sl, v[sl]);
  return st;
}

inline Agreement check_agreement(const Specification & s, bool ascii = false)
{
  Agreement out;
  const eventb::Machine generated = eventb::gen_flat(s);
  const eventb::RenderOptions ro{ascii};
  const eventb::Interpreter interp(eventb::read_context(eventb::render(eventb::gen_context(s), ro)),
                                   eventb::read_machine(eventb::render(generated, ro)));
  std::map<std::string, std::string> event_of;  // element id to event name
  for (const auto & e : generated.events) {
    if (!e.source.empty()) event_of[e.source] = e.name;
  }

  const Simulator sim(s);
  const auto order = build_dependency_graph(s).order;
  const auto combos = input_combinations(sim);
  auto mismatch = [&](const std::string & why) {
    ++out.mismatches;
    if (out.first_mismatch.empty()) out.first_mismatch = why;
  };

  if (interp.initial() != to_eventb(s, sim.initial_state().values)) mismatch("INITIALISATION differs");

  std::set<Valuation> seen{sim.initial_state().values};
  std::deque<Valuation> queue{sim.initial_state().values};
  while (!queue.empty()) {
    const Valuation cur = queue.front();
    queue.pop_front();
    ++out.states;
    for (const auto & in : combos) {
      ++out.pairs;
      const StepOutcome r = sim.step({cur, 0}, in);
      if (seen.insert(r.state.values).second) queue.push_back(r.state.values);

      // data values after the step, machine states before it
      Valuation mixed = r.state.values;
      for (SlotId sl = 0; sl < s.slot_count(); ++sl) {
        if (s.slots[sl].kind == Slot::Kind::machine) mixed[sl] = cur[sl];
      }
      const eventb::State before = to_eventb(s, mixed);

      std::set<std::string> expected;
      for (std::size_t a = 0; a < r.fired.cases.size(); ++a) {
        if (r.fired.cases[a]) expected.insert(event_of.at(eventb::case_id(s, a, *r.fired.cases[a])));
      }
      for (std::size_t m = 0; m < r.fired.transitions.size(); ++m) {
        if (r.fired.transitions[m]) {
          expected.insert(event_of.at(eventb::transition_id(s, m, *r.fired.transitions[m])));
        }
      }
      std::set<std::string> enabled;
      for (const auto & e : interp.enabled(before)) {
        if (e.rfind("Env_", 0) != 0) enabled.insert(e);
      }
      if (enabled != expected) {
        mismatch("enabled events differ at " + format_state(s, mixed));
        continue;
      }
      // replay as an interleaving: environment events set the inputs, then
      // the fired events run in evaluation order with machines last
      eventb::State st = to_eventb(s, cur);
      for (const auto & [sl, v] : in) {
        const std::string var = eventb_name(s, sl);
        st = interp.apply("Env_Set_" + var, st, {{var, s.format_value(sl, v)}});
      }
      std::vector<std::string> sequence;
      for (SlotId sl : *order) {
        if (s.slots[sl].kind != Slot::Kind::variable) continue;
        const auto a = s.assignment_for(s.slot_variable(sl));
        if (a && r.fired.cases[*a]) sequence.push_back(event_of.at(eventb::case_id(s, *a, *r.fired.cases[*a])));
      }
      for (std::size_t m = 0; m < r.fired.transitions.size(); ++m) {
        if (r.fired.transitions[m]) {
          sequence.push_back(event_of.at(eventb::transition_id(s, m, *r.fired.transitions[m])));
        }
      }
      bool ok = true;
      for (const auto & e : sequence) {
        const auto now = interp.enabled(st);
        if (std::find(now.begin(), now.end(), e) == now.end()) {
          mismatch(e + " is not enabled when replayed at " + format_state(s, cur));
          ok = false;
          break;
        }
        st = interp.apply(e, st);
      }
      if (ok && st != to_eventb(s, r.state.values)) {
        mismatch("replay does not reach the simulator state from " + format_state(s, cur));
      }
      if (ok && interp.violated(st).size() != r.violated.size()) {
        mismatch("invariant verdicts differ at " + format_state(s, r.state.values));
      }
    }
  }
  return out;
}

}  // namespace rsmlkit::test
