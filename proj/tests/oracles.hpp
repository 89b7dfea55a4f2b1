#pragma once

// Hand-built references for the corpus: the AND/OR table truth, the start/stop state
// space, a depth-bounded violation search and the start/stop trace edges.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rsmlkit/simulator.hpp"
#include "rsmlkit/trace.hpp"

namespace rsmlkit::test
{

// Columns transcribed by hand: (T,T,.,.), (F,F,T,.), (.,.,T,T).
inline bool andor_oracle(bool r1, bool r2, bool r3, bool r4)
{
  return (r1 && r2) || (!r1 && !r2 && r3) || (r3 && r4);
}

inline SlotId slot_of(const Specification & s, const std::string & name)
{
  return s.variables[*s.find_variable(name)].slot;
}

// An andor valuation making the four rows evaluate to the given truth values.
inline Valuation andor_realise(const Specification & s, bool x_gt_y, bool a_lt_b, bool s_pressed,
                                bool lamp_on)
{
  auto lit = [&](const std::string & n, const std::string & l) { return *s.parse_value(slot_of(s, n), l); };
  Valuation v = initial_valuation(s);
  v[slot_of(s, "X")] = x_gt_y ? 1 : 0;
  v[slot_of(s, "Y")] = x_gt_y ? 0 : 1;
  v[slot_of(s, "A")] = a_lt_b ? 0 : 1;
  v[slot_of(s, "B")] = a_lt_b ? 1 : 0;
  v[slot_of(s, "S")] = lit("S", s_pressed ? "PRESSED" : "RELEASED");
  v[slot_of(s, "Lamp")] = lit("Lamp", lamp_on ? "ON" : "OFF");
  return v;
}

// After one step the output is a function of the inputs, so the reachable
// states are the initial state plus one state per input combination.
inline std::set<std::vector<Value>> startstop_states(const Specification & s)
{
  std::set<std::vector<Value>> states;
  const SlotId c = slot_of(s, "Clutch_Pedal"), w = slot_of(s, "Steering_Wheel"),
               g = slot_of(s, "Gearbox"), o = slot_of(s, "HMI_Stop_Ena");
  states.insert(initial_state(s).values);
  for (Value cv = 0; cv < 2; ++cv) {
    for (Value wv = 0; wv < 2; ++wv) {
      for (Value gv = 0; gv < 3; ++gv) {
        std::vector<Value> v(s.slot_count());
        v[c] = cv;
        v[w] = wv;
        v[g] = gv;
        const bool pressed = cv == 0, used = wv == 0, neutral = gv == 0;
        v[o] = (pressed || used || !neutral) ? 0 : 1;
        states.insert(v);
      }
    }
  }
  return states;
}

// True when some input sequence of at most `depth` steps violates an invariant.
inline bool violates_within(const Simulator & sim, std::size_t depth)
{
  const auto combos = input_combinations(sim);
  std::function<bool(const SystemState &, std::size_t)> go = [&](const SystemState & st, std::size_t d) {
    if (!sim.violated_invariants(st.values).empty()) return true;
    if (d == 0) return false;
    return std::any_of(combos.begin(), combos.end(),
                       [&](const InputAssignment & c) { return go(sim.step(st, c).state, d - 1); });
  };
  return go(sim.initial_state(), depth);
}

inline std::vector<trace::Edge> startstop_edges()
{
  using trace::EdgeKind;
  const std::string c = "SSE_Driver_Needs_HMI.";
  const std::string m = "startstop_mch/";
  std::vector<trace::Edge> e{
    {"case:" + c + "HMI_Stop_Ena#1", "req:REQ-001", EdgeKind::declared},
    {"case:" + c + "HMI_Stop_Ena#2", "req:REQ-001", EdgeKind::declared},
    {"pf:SSE_Driver_Needs_HMI_Problem/Driver_Needs", "req:REQ-001", EdgeKind::declared},
    {"case:" + c + "HMI_Stop_Ena#1", "event:" + m + "Set_HMI_Stop_Ena_FALSE", EdgeKind::provenance},
    {"case:" + c + "HMI_Stop_Ena#2", "event:" + m + "Set_HMI_Stop_Ena_TRUE", EdgeKind::provenance},
  };
  const char * vars[] = {"HMI_Stop_Ena", "Clutch_Pedal", "Steering_Wheel", "Gearbox"};
  for (int i = 0; i < 4; ++i) {
    const std::string v = vars[i];
    e.push_back({"phen:" + v, "var:" + c + v, EdgeKind::name_match});
    e.push_back({"var:" + c + v, "evinv:" + m + "inv" + std::to_string(i + 1), EdgeKind::provenance});
    if (i > 0) e.push_back({"var:" + c + v, "event:" + m + "Env_Set_" + v, EdgeKind::provenance});
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace rsmlkit::test
