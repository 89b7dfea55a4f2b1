#include "rsmlkit/simulator.hpp"

#include <algorithm>
#include <unordered_map>

namespace rsmlkit
{

// ---- Simulator ------------------------------------------------------------------

Simulator::Simulator(const Specification & spec) : spec_(&spec)
{
  const DependencyGraph g = build_dependency_graph(spec);
  if (!g.acyclic()) {
    std::string path;
    for (const SlotId s : g.cycle) path += spec.slot_name(s) + " -> ";
    path += spec.slot_name(g.cycle.front());
    throw Error("CyclicDependency", "cyclic dependency: " + path);
  }
  order_ = *g.order;
  for (const VarId v : spec.top_level_inputs()) inputs_.push_back(spec.variables[v].slot);

  assign_of_slot_.assign(spec.slot_count(), std::nullopt);
  for (std::size_t a = 0; a < spec.assigns.size(); ++a) {
    assign_of_slot_[spec.variables[spec.assigns[a].target].slot] = a;
    std::vector<const Condition *> conds;
    for (const auto & k : spec.assigns[a].cases) conds.push_back(&k.condition);
    case_conds_.push_back(std::move(conds));
  }
  for (const auto & sm : spec.machines) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::vector<const Condition *>> conds;
    for (std::size_t s = 0; s < sm.states.size(); ++s) {
      out.push_back(sm.outgoing(s));
      std::vector<const Condition *> c;
      for (const std::size_t t : out.back()) c.push_back(&sm.transitions[t].guard);
      conds.push_back(std::move(c));
    }
    outgoing_.push_back(std::move(out));
    transition_conds_.push_back(std::move(conds));
  }
}

SystemState Simulator::initial_state() const
{
  return {initial_valuation(*spec_), 0};
}

std::vector<std::size_t> Simulator::violated_invariants(const Valuation & v) const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec_->invariants.size(); ++i) {
    if (!eval_table(spec_->invariants[i].body, v)) out.push_back(i);
  }
  return out;
}

namespace
{

/// Index of the entry that fires, or nullopt. Entries that are enabled
/// together must agree on the action; the first one is reported.
template <typename SameAction>
std::optional<std::size_t> choose(const std::vector<bool> & truth, SameAction && same,
                                  const std::string & owner, const Specification & spec,
                                  const Valuation & v)
{
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!truth[i]) continue;
    if (!first) {
      first = i;
    } else if (!same(*first, i)) {
      throw Error("NondeterministicFiring", "'" + owner + "' has entries " +
                                              std::to_string(*first + 1) + " and " +
                                              std::to_string(i + 1) +
                                              " enabled with different actions at " +
                                              format_state(spec, v));
    }
  }
  return first;
}

}  // namespace

StepOutcome Simulator::step(const SystemState & cur, const InputAssignment & inputs) const
{
  const Specification & spec = *spec_;
  StepOutcome out;
  out.state = cur;
  out.state.step = cur.step + 1;
  Valuation & v = out.state.values;

  for (const auto & [slot, value] : inputs) {
    if (std::find(inputs_.begin(), inputs_.end(), slot) == inputs_.end()) {
      throw Error("NotAnInput", "not an input: " + spec.display_name(slot));
    }
    if (spec.slot_type(slot) && !spec.slot_type(slot)->contains(value)) {
      throw Error("TypeMismatch", "value " + std::to_string(value) + " is outside the type of " +
                                    spec.display_name(slot));
    }
    v[slot] = value;
  }

  out.fired.cases.assign(spec.assigns.size(), std::nullopt);
  out.fired.transitions.assign(spec.machines.size(), std::nullopt);
  std::vector<std::pair<SlotId, Value>> commits;

  for (const SlotId s : order_) {
    const Slot & slot = spec.slots[s];
    if (slot.kind == Slot::Kind::variable) {
      const auto a = assign_of_slot_[s];
      if (!a) continue;
      const AssignmentSpec & as = spec.assigns[*a];
      const auto truth = eval_conditions(case_conds_[*a], v);
      const auto k = choose(
        truth, [&](std::size_t i, std::size_t j) { return as.cases[i].value == as.cases[j].value; },
        spec.qualified_name(as.target), spec, v);
      if (k) {
        v[s] = as.cases[*k].value;
        out.fired.cases[*a] = *k;
      }
    } else {
      const std::size_t m = slot.index;
      const StateMachine & sm = spec.machines[m];
      const auto from = static_cast<std::size_t>(cur.values[s]);
      const auto & outgoing = outgoing_[m][from];
      const auto truth = eval_conditions(transition_conds_[m][from], v);
      const auto t = choose(
        truth,
        [&](std::size_t i, std::size_t j) {
          return sm.transitions[outgoing[i]].to == sm.transitions[outgoing[j]].to;
        },
        sm.name + "." + sm.states[from], spec, v);
      if (t) {
        out.fired.transitions[m] = outgoing[*t];
        commits.emplace_back(s, static_cast<Value>(sm.transitions[outgoing[*t]].to));
      }
    }
  }
  for (const auto & [s, value] : commits) v[s] = value;
  out.violated = violated_invariants(v);
  return out;
}

SystemState initial_state(const Specification & spec)
{
  return Simulator(spec).initial_state();
}

StepOutcome step(const Specification & spec, const SystemState & cur,
                 const InputAssignment & inputs)
{
  return Simulator(spec).step(cur, inputs);
}

// ---- scripts --------------------------------------------------------------------

namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Parsed<std::vector<InputAssignment>> parse_script(const Specification & spec,
                                                  std::string_view text,
                                                  const std::string & file)
{
  Parsed<std::vector<InputAssignment>> out;
  std::vector<InputAssignment> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) continue;

    InputAssignment row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      const std::string_view raw = line.substr(start, comma - start);
      const std::string_view item = trim(raw);
      const std::size_t lead = item.empty() ? 0 : static_cast<std::size_t>(item.data() - raw.data());
      const SourceSpan span{file, line_no, static_cast<int>(start + lead) + 1,
                            static_cast<int>(item.size())};
      start = comma + 1;
      const auto eq = item.find('=');
      if (item.empty() || eq == std::string_view::npos) {
        out.diagnostics.push_back(make_error(
          "ScriptSyntax", "expected name=value, found '" + std::string(item) + "'", span));
        continue;
      }
      const std::string name(trim(item.substr(0, eq)));
      const std::string value(trim(item.substr(eq + 1)));
      const auto var = spec.find_variable(name);
      if (!var) {
        if (spec.find_machine(name)) {
          out.diagnostics.push_back(make_error("NotAnInput", "not an input: " + name, span));
        } else {
          out.diagnostics.push_back(make_error("UnknownName", "unknown input '" + name + "'", span));
        }
        continue;
      }
      if (!spec.is_top_level_input(*var)) {
        out.diagnostics.push_back(make_error("NotAnInput", "not an input: " + name, span));
        continue;
      }
      const SlotId slot = spec.variables[*var].slot;
      const auto parsed = spec.parse_value(slot, value);
      if (!parsed) {
        out.diagnostics.push_back(make_error(
          "TypeMismatch",
          "'" + value + "' is not a value of '" + spec.slot_type(slot)->name + "'", span));
        continue;
      }
      row.emplace_back(slot, *parsed);
    }
    rows.push_back(std::move(row));
  }
  if (!has_errors(out.diagnostics)) out.value = std::move(rows);
  return out;
}

Trace run_script(const Simulator & sim, const std::vector<InputAssignment> & script,
                 bool keep_going)
{
  Trace trace;
  trace.initial = sim.initial_state();
  for (const std::size_t i : sim.violated_invariants(trace.initial.values)) {
    trace.violations.push_back({i, 0});
  }
  if (!trace.violations.empty() && !keep_going) return trace;
  SystemState cur = trace.initial;
  for (const auto & row : script) {
    StepOutcome o = sim.step(cur, row);
    for (const std::size_t i : o.violated) trace.violations.push_back({i, o.state.step});
    cur = o.state;
    trace.steps.push_back({row, std::move(o.state), std::move(o.fired)});
    if (!o.violated.empty() && !keep_going) break;
  }
  return trace;
}

// ---- exploration ----------------------------------------------------------------

std::vector<InputAssignment> input_combinations(const Simulator & sim)
{
  const Specification & spec = sim.spec();
  const auto & slots = sim.input_slots();
  std::vector<std::vector<Value>> domains;
  for (const SlotId s : slots) domains.push_back(spec.slot_domain(s));
  std::vector<InputAssignment> out;
  for (const auto & d : domains) {
    if (d.empty()) return out;
  }
  std::vector<std::size_t> digit(slots.size(), 0);
  for (;;) {
    InputAssignment row;
    for (std::size_t i = 0; i < slots.size(); ++i) row.emplace_back(slots[i], domains[i][digit[i]]);
    out.push_back(std::move(row));
    std::size_t i = slots.size();
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++digit[i] < domains[i].size()) break;
      digit[i] = 0;
    }
  }
}

namespace
{

struct ValuationHash
{
  std::size_t operator()(const Valuation & v) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (const Value x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Node
{
  Valuation values;
  std::size_t parent = 0;  // index into nodes; the root points at itself
  std::size_t input = 0;   // index into the input combinations
  std::size_t depth = 0;
};

Trace rebuild(const Simulator & sim, const std::vector<Node> & nodes,
              const std::vector<InputAssignment> & combos, std::size_t target, std::size_t inv)
{
  std::vector<std::size_t> path;
  for (std::size_t n = target; n != 0; n = nodes[n].parent) path.push_back(n);
  std::reverse(path.begin(), path.end());
  Trace t;
  t.initial = sim.initial_state();
  SystemState cur = t.initial;
  for (const std::size_t n : path) {
    StepOutcome o = sim.step(cur, combos[nodes[n].input]);
    cur = o.state;
    t.steps.push_back({combos[nodes[n].input], std::move(o.state), std::move(o.fired)});
  }
  t.violations.push_back({inv, path.size()});
  return t;
}

}  // namespace

ExplorationReport explore(const Simulator & sim, const ExploreLimits & limits)
{
  const Specification & spec = sim.spec();
  const std::vector<InputAssignment> combos = input_combinations(sim);
  ExplorationReport report;
  std::vector<Node> nodes;
  std::unordered_map<Valuation, std::size_t, ValuationHash> seen;
  std::vector<bool> found(spec.invariants.size(), false);

  auto discover = [&](std::size_t n) {
    for (const std::size_t i : sim.violated_invariants(nodes[n].values)) {
      if (found[i]) continue;
      found[i] = true;
      report.counterexamples.push_back({i, rebuild(sim, nodes, combos, n, i)});
    }
  };

  nodes.push_back({sim.initial_state().values, 0, 0, 0});
  seen.emplace(nodes[0].values, 0);
  discover(0);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const bool at_limit = limits.max_depth && nodes[i].depth >= *limits.max_depth;
    for (std::size_t c = 0; c < combos.size(); ++c) {
      const SystemState cur{nodes[i].values, nodes[i].depth};
      StepOutcome o = sim.step(cur, combos[c]);
      ++report.transitions;
      if (seen.count(o.state.values)) continue;
      if (at_limit) {
        report.limit = ExplorationReport::Limit::depth;
        break;
      }
      if (nodes.size() >= limits.max_states) {
        report.limit = ExplorationReport::Limit::states;
        break;
      }
      const std::size_t n = nodes.size();
      seen.emplace(o.state.values, n);
      nodes.push_back({std::move(o.state.values), i, c, nodes[i].depth + 1});
      report.depth = std::max(report.depth, nodes[n].depth);
      discover(n);
    }
    if (report.limit == ExplorationReport::Limit::states) break;
  }
  report.states = nodes.size();
  std::sort(report.counterexamples.begin(), report.counterexamples.end(),
            [](const Counterexample & a, const Counterexample & b) {
              return a.invariant < b.invariant;
            });
  return report;
}

// ---- formatting -------------------------------------------------------------------

std::string format_state(const Specification & spec, const Valuation & v)
{
  std::string out;
  for (SlotId s = 0; s < spec.slot_count() && s < v.size(); ++s) {
    if (!out.empty()) out += ", ";
    out += spec.display_name(s) + "=" + spec.format_value(s, v[s]);
  }
  return out;
}

std::string format_inputs(const Specification & spec, const InputAssignment & in)
{
  std::string out;
  for (const auto & [slot, value] : in) {
    if (!out.empty()) out += ", ";
    out += spec.display_name(slot) + "=" + spec.format_value(slot, value);
  }
  return out;
}

}  // namespace rsmlkit
