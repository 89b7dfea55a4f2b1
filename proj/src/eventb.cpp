#include "rsmlkit/eventb.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rsmlkit/analysis.hpp"

namespace rsmlkit::eventb
{

// ---- predicates -----------------------------------------------------------------

Pred Pred::relation(std::string lhs, RelOp op, std::string rhs)
{
  Pred p;
  p.kind = Kind::relation;
  p.lhs = std::move(lhs);
  p.op = op;
  p.rhs = std::move(rhs);
  return p;
}

Pred Pred::member(std::string lhs, std::string set)
{
  Pred p;
  p.kind = Kind::member;
  p.lhs = std::move(lhs);
  p.set = std::move(set);
  return p;
}

Pred Pred::in_range(std::string lhs, Value lo, Value hi)
{
  Pred p;
  p.kind = Kind::in_range;
  p.lhs = std::move(lhs);
  p.lo = lo;
  p.hi = hi;
  return p;
}

Pred Pred::partition(std::string set, std::vector<std::string> parts)
{
  Pred p;
  p.kind = Kind::partition;
  p.lhs = std::move(set);
  p.parts = std::move(parts);
  return p;
}

Pred Pred::negation(Pred inner)
{
  Pred p;
  p.kind = Kind::negation;
  p.args.push_back(std::move(inner));
  return p;
}

Pred Pred::conjunction(std::vector<Pred> args)
{
  Pred p;
  p.kind = Kind::conjunction;
  p.args = std::move(args);
  return p;
}

Pred Pred::disjunction(std::vector<Pred> args)
{
  Pred p;
  p.kind = Kind::disjunction;
  p.args = std::move(args);
  return p;
}

Pred negate(const Pred & p)
{
  switch (p.kind) {
    case Pred::Kind::relation:
      return Pred::relation(p.lhs, rsmlkit::negate(p.op), p.rhs);
    case Pred::Kind::negation:
      return p.args.front();
    case Pred::Kind::truth: {
      Pred f;
      f.kind = Pred::Kind::falsity;
      return f;
    }
    case Pred::Kind::falsity:
      return Pred{};
    default:
      return Pred::negation(p);
  }
}

const Event * Machine::find_event(const std::string & event) const
{
  for (const auto & e : events) {
    if (e.name == event) return &e;
  }
  return nullptr;
}

void strip_sources(Machine & m)
{
  for (auto & i : m.invariants) i.source.clear();
  for (auto & e : m.events) {
    e.source.clear();
    for (auto & g : e.guards) g.source.clear();
  }
}

void strip_sources(Context & c)
{
  for (auto & a : c.axioms) a.source.clear();
}

// ---- element ids ----------------------------------------------------------------

std::string variable_id(const Specification & spec, VarId v)
{
  return "var:" + spec.qualified_name(v);
}

std::string case_id(const Specification & spec, std::size_t assign, std::size_t k)
{
  return "case:" + spec.qualified_name(spec.assigns[assign].target) + "#" + std::to_string(k + 1);
}

std::string transition_id(const Specification & spec, std::size_t machine, std::size_t t)
{
  const StateMachine & sm = spec.machines[machine];
  const Transition & tr = sm.transitions[t];
  std::string id = "transition:" + sm.name + "." + sm.states[tr.from] + "->" + sm.states[tr.to];
  std::size_t same = 0;
  for (std::size_t i = 0; i < t; ++i) {
    if (sm.transitions[i].from == tr.from && sm.transitions[i].to == tr.to) ++same;
  }
  if (same > 0) id += "#" + std::to_string(same + 1);
  return id;
}

std::string invariant_id(const Specification & spec, std::size_t i)
{
  return "invariant:" + spec.invariants[i].name;
}

// ---- translation ----------------------------------------------------------------

std::string context_name(const Specification & spec)
{
  return spec.name + "_ctx";
}

std::string state_variable(const StateMachine & m)
{
  return m.name + "_state";
}

std::string state_set(const StateMachine & m)
{
  return "T_" + m.name + "_States";
}

namespace
{

std::string term(const Specification & spec, const Operand & o)
{
  if (o.kind == Operand::Kind::constant) return o.spelling;
  const Slot & slot = spec.slots[o.slot];
  if (slot.kind == Slot::Kind::machine) return state_variable(spec.machines[slot.index]);
  return spec.variables[slot.index].name;
}

Pred atom(const Specification & spec, const Predicate & p)
{
  return Pred::relation(term(spec, p.lhs), p.op, term(spec, p.rhs));
}

/// Literals of one column; empty means the column is constantly true.
std::vector<Pred> column_literals(const Specification & spec, const Table & t, std::size_t col)
{
  std::vector<Pred> lits;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const Cell c = t.cells[r][col];
    if (c == Cell::dot) continue;
    Pred a = atom(spec, t.rows[r]);
    lits.push_back(c == Cell::t ? std::move(a) : negate(a));
  }
  return lits;
}

std::vector<Pred> split(Pred p)
{
  if (p.kind == Pred::Kind::truth) return {};
  if (p.kind == Pred::Kind::conjunction) return std::move(p.args);
  std::vector<Pred> out;
  out.push_back(std::move(p));
  return out;
}

std::string value_name(const TypeDef & t, Value v)
{
  std::string s = t.format(v);
  if (!s.empty() && s.front() == '-') s = "m" + s.substr(1);
  return s;
}

Pred typing(const Specification & spec, const Variable & v)
{
  const TypeDef & t = spec.types[v.type];
  switch (t.kind) {
    case TypeKind::boolean:
      return Pred::member(v.name, "BOOL");
    case TypeKind::enumeration:
      return Pred::member(v.name, t.name);
    case TypeKind::int_range:
      return Pred::in_range(v.name, t.lo, t.hi);
  }
  return Pred{};
}

Action choose_any(const Specification & spec, const Variable & v, std::string label)
{
  const TypeDef & t = spec.types[v.type];
  Action a;
  a.label = std::move(label);
  a.var = v.name;
  if (t.kind == TypeKind::int_range) {
    a.kind = Action::Kind::choose_range;
    a.lo = t.lo;
    a.hi = t.hi;
  } else {
    a.kind = Action::Kind::choose_set;
    a.value = t.kind == TypeKind::boolean ? "BOOL" : t.name;
  }
  return a;
}

std::vector<std::string> trace_comments(const std::vector<std::string> & trace)
{
  if (trace.empty()) return {};
  std::string s = "trace: ";
  for (std::size_t i = 0; i < trace.size(); ++i) s += (i ? ", " : "") + trace[i];
  return {s};
}

void label_guards(Event & e, std::vector<Pred> preds, const std::string & source)
{
  for (auto & p : preds) {
    e.guards.push_back({"grd" + std::to_string(e.guards.size() + 1), std::move(p), {}, source});
  }
}

/// Raises NameCollision when two generated identifiers coincide.
class NameTable
{
public:
  void add(const std::string & name, const std::string & what)
  {
    const auto [it, fresh] = names_.emplace(name, what);
    if (!fresh) {
      throw Error("NameCollision", "generated name '" + name + "' is used for both " +
                                     it->second + " and " + what);
    }
  }

private:
  std::map<std::string, std::string> names_;
};

void check_identifiers(const Specification & spec)
{
  NameTable names;
  names.add("BOOL", "the builtin BOOL set");
  names.add("TRUE", "the builtin TRUE");
  names.add("FALSE", "the builtin FALSE");
  for (TypeId t = 1; t < spec.types.size(); ++t) {
    const TypeDef & def = spec.types[t];
    if (def.kind != TypeKind::enumeration) continue;
    names.add(def.name, "type '" + def.name + "'");
    for (const auto & l : def.literals) names.add(l, "literal '" + l + "' of '" + def.name + "'");
  }
  for (const auto & sm : spec.machines) {
    names.add(state_set(sm), "the state set of '" + sm.name + "'");
    for (const auto & s : sm.states) names.add(s, "state '" + s + "' of '" + sm.name + "'");
  }
  for (VarId v = 0; v < spec.variables.size(); ++v) {
    if (spec.variables[v].producer) continue;
    names.add(spec.variables[v].name, "variable '" + spec.qualified_name(v) + "'");
  }
  for (const auto & sm : spec.machines) {
    names.add(state_variable(sm), "the state variable of '" + sm.name + "'");
  }
}

Event initialisation(const Specification & spec, const std::vector<SlotId> & slots)
{
  Event e;
  e.name = "INITIALISATION";
  for (const SlotId s : slots) {
    Action a;
    a.label = "act" + std::to_string(e.actions.size() + 1);
    const Slot & slot = spec.slots[s];
    if (slot.kind == Slot::Kind::machine) {
      const StateMachine & sm = spec.machines[slot.index];
      a.var = state_variable(sm);
      a.value = sm.states[sm.initial];
    } else {
      const Variable & v = spec.variables[slot.index];
      a.var = v.name;
      a.value = spec.types[v.type].format(v.init);
    }
    e.actions.push_back(std::move(a));
  }
  return e;
}

std::vector<Labeled> typing_invariants(const Specification & spec,
                                       const std::vector<SlotId> & slots)
{
  std::vector<Labeled> out;
  for (const SlotId s : slots) {
    const Slot & slot = spec.slots[s];
    Labeled l;
    l.label = "inv" + std::to_string(out.size() + 1);
    if (slot.kind == Slot::Kind::machine) {
      const StateMachine & sm = spec.machines[slot.index];
      l.pred = Pred::member(state_variable(sm), state_set(sm));
      l.source = "machine:" + sm.name;
    } else {
      l.pred = typing(spec, spec.variables[slot.index]);
      l.source = variable_id(spec, slot.index);
    }
    out.push_back(std::move(l));
  }
  return out;
}

void append_user_invariants(const Specification & spec, const std::vector<SlotId> & slots,
                            std::vector<Labeled> & out)
{
  for (std::size_t i = 0; i < spec.invariants.size(); ++i) {
    const InvariantDecl & inv = spec.invariants[i];
    std::vector<SlotId> reads;
    collect_slots(inv.body, reads);
    const bool visible = std::all_of(reads.begin(), reads.end(), [&](SlotId s) {
      return std::find(slots.begin(), slots.end(), s) != slots.end();
    });
    if (!visible) continue;
    Labeled l;
    l.label = "inv" + std::to_string(out.size() + 1);
    l.pred = translate_table(spec, inv.body);
    l.comments.push_back(inv.name);
    for (auto & c : trace_comments(inv.trace)) l.comments.push_back(std::move(c));
    l.source = invariant_id(spec, i);
    out.push_back(std::move(l));
  }
}

std::string set_event_name(const Specification & spec, VarId v)
{
  return "Set_" + spec.variables[v].name;
}

std::string env_event_name(const Specification & spec, VarId v)
{
  return "Env_Set_" + spec.variables[v].name;
}

/// Guarded events of one component: assignment cases, then transitions.
std::vector<Event> component_events(const Specification & spec, std::size_t comp)
{
  std::vector<Event> out;
  const Component & c = spec.components[comp];
  for (const std::size_t a : c.assigns) {
    const AssignmentSpec & as = spec.assigns[a];
    const Variable & target = spec.variables[as.target];
    const TypeDef & type = spec.types[target.type];
    std::vector<const Condition *> siblings;
    for (const auto & k : as.cases) siblings.push_back(&k.condition);
    for (std::size_t k = 0; k < as.cases.size(); ++k) {
      Event e;
      e.name = "Set_" + target.name + "_" + value_name(type, as.cases[k].value);
      e.source = case_id(spec, a, k);
      e.comments = trace_comments(as.cases[k].trace);
      label_guards(e, translate_condition(spec, as.cases[k].condition, siblings), e.source);
      e.actions.push_back({"act1", target.name, Action::Kind::assign,
                           type.format(as.cases[k].value), 0, 0});
      out.push_back(std::move(e));
    }
  }
  for (const std::size_t m : c.machines) {
    const StateMachine & sm = spec.machines[m];
    for (std::size_t s = 0; s < sm.states.size(); ++s) {
      const auto outgoing = sm.outgoing(s);
      std::vector<const Condition *> siblings;
      for (const std::size_t t : outgoing) siblings.push_back(&sm.transitions[t].guard);
      for (const std::size_t t : outgoing) {
        const Transition & tr = sm.transitions[t];
        Event e;
        e.name = sm.name + "_" + sm.states[tr.from] + "_to_" + sm.states[tr.to];
        e.source = transition_id(spec, m, t);
        e.comments = trace_comments(tr.trace);
        e.guards.push_back({"grd1",
                            Pred::relation(state_variable(sm), RelOp::eq, sm.states[tr.from]),
                            {},
                            e.source});
        label_guards(e, translate_condition(spec, tr.guard, siblings), e.source);
        e.actions.push_back(
          {"act1", state_variable(sm), Action::Kind::assign, sm.states[tr.to], 0, 0});
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

Event env_event(const Specification & spec, VarId v)
{
  Event e;
  e.name = env_event_name(spec, v);
  e.source = variable_id(spec, v);
  e.actions.push_back(choose_any(spec, spec.variables[v], "act1"));
  return e;
}

void check_event_names(const std::vector<Event> & events)
{
  NameTable names;
  for (const auto & e : events) {
    names.add(e.name, "event generated from '" + (e.source.empty() ? e.name : e.source) + "'");
  }
}

std::vector<SlotId> all_slots(const Specification & spec)
{
  std::vector<SlotId> out(spec.slot_count());
  for (SlotId s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

}  // namespace

Pred translate_table(const Specification & spec, const Table & t)
{
  std::vector<Pred> columns;
  for (std::size_t c = 0; c < t.columns(); ++c) {
    std::vector<Pred> lits = column_literals(spec, t, c);
    if (lits.empty()) return Pred{};
    columns.push_back(lits.size() == 1 ? std::move(lits.front()) : Pred::conjunction(std::move(lits)));
  }
  if (columns.size() == 1) return std::move(columns.front());
  return Pred::disjunction(std::move(columns));
}

std::vector<Pred> translate_condition(const Specification & spec, const Condition & c,
                                      const std::vector<const Condition *> & siblings)
{
  if (!c.is_else()) return split(translate_table(spec, c.table));

  std::vector<Pred> tables;
  bool literal_columns = true;
  for (const Condition * s : siblings) {
    if (s->is_else()) continue;
    Pred p = translate_table(spec, s->table);
    if (p.kind == Pred::Kind::truth) {
      Pred f;
      f.kind = Pred::Kind::falsity;
      return {f};
    }
    for (std::size_t col = 0; col < s->table.columns(); ++col) {
      if (column_literals(spec, s->table, col).size() != 1) literal_columns = false;
    }
    tables.push_back(std::move(p));
  }
  if (tables.empty()) return {};

  if (literal_columns) {
    // Every sibling is a disjunction of literals: negate each literal.
    std::vector<Pred> conjuncts;
    for (const Pred & t : tables) {
      const std::vector<Pred> lits =
        t.kind == Pred::Kind::disjunction ? t.args : std::vector<Pred>{t};
      for (const Pred & l : lits) {
        Pred n = negate(l);
        if (std::find(conjuncts.begin(), conjuncts.end(), n) == conjuncts.end()) {
          conjuncts.push_back(std::move(n));
        }
      }
    }
    return conjuncts;
  }
  Pred any = tables.size() == 1 ? std::move(tables.front()) : Pred::disjunction(std::move(tables));
  return {Pred::negation(std::move(any))};
}

Context gen_context(const Specification & spec)
{
  Context ctx;
  ctx.name = context_name(spec);
  auto add_set = [&](const std::string & name, const std::vector<std::string> & members,
                     const std::string & source) {
    ctx.sets.push_back({name, members});
    for (const auto & m : members) ctx.constants.push_back(m);
    ctx.axioms.push_back(
      {"axm" + std::to_string(ctx.axioms.size() + 1), Pred::partition(name, members), {}, source});
  };
  for (TypeId t = 1; t < spec.types.size(); ++t) {
    const TypeDef & def = spec.types[t];
    if (def.kind == TypeKind::enumeration) add_set(def.name, def.literals, "type:" + def.name);
  }
  for (const auto & sm : spec.machines) add_set(state_set(sm), sm.states, "machine:" + sm.name);
  return ctx;
}

Machine gen_flat(const Specification & spec, const GenOptions & opts)
{
  check_identifiers(spec);
  Machine m;
  m.name = spec.name + "_mch";
  m.sees = context_name(spec);
  const std::vector<SlotId> slots = all_slots(spec);
  for (const SlotId s : slots) {
    const Slot & slot = spec.slots[s];
    m.variables.push_back(slot.kind == Slot::Kind::machine
                            ? state_variable(spec.machines[slot.index])
                            : spec.variables[slot.index].name);
  }
  m.invariants = typing_invariants(spec, slots);
  append_user_invariants(spec, slots, m.invariants);

  m.events.push_back(initialisation(spec, slots));
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    for (auto & e : component_events(spec, c)) m.events.push_back(std::move(e));
  }
  if (!opts.closed) {
    for (const VarId v : spec.top_level_inputs()) m.events.push_back(env_event(spec, v));
  }
  check_event_names(m.events);
  return m;
}

std::vector<Machine> gen_chain(const Specification & spec, const GenOptions & opts)
{
  check_identifiers(spec);
  const bool any_output =
    std::any_of(spec.variables.begin(), spec.variables.end(),
                [](const Variable & v) { return v.direction == Direction::output; });
  if (!any_output) throw Error("NoOutputs", "no output variables");

  const ComponentGraph cg = build_component_graph(spec);
  if (!cg.order) {
    std::string path;
    for (const std::size_t c : cg.cycle) path += spec.components[c].name + " -> ";
    path += spec.components[cg.cycle.front()].name;
    throw Error("CyclicDependency", "cyclic component dependency: " + path);
  }

  // Which slots are read outside their owning component.
  std::vector<bool> read_elsewhere(spec.slot_count(), false);
  for (const auto & v : spec.variables) {
    if (v.producer) read_elsewhere[v.slot] = true;
  }
  auto note_reads = [&](std::size_t comp, const Condition & c) {
    if (c.is_else()) return;
    std::vector<SlotId> reads;
    collect_slots(c.table, reads);
    for (const SlotId s : reads) {
      if (spec.slots[s].kind != Slot::Kind::variable) continue;
      if (spec.variables[spec.slot_variable(s)].component != comp) read_elsewhere[s] = true;
    }
  };
  for (const auto & as : spec.assigns) {
    for (const auto & k : as.cases) note_reads(as.component, k.condition);
  }
  for (const auto & sm : spec.machines) {
    for (const auto & t : sm.transitions) note_reads(sm.component, t.guard);
  }

  std::vector<VarId> terminal;
  for (VarId v = 0; v < spec.variables.size(); ++v) {
    const Variable & var = spec.variables[v];
    if (var.direction == Direction::output && !read_elsewhere[var.slot]) terminal.push_back(v);
  }

  std::vector<Machine> chain;
  {
    Machine m0;
    m0.name = spec.name + "_m0";
    m0.sees = context_name(spec);
    std::vector<SlotId> slots;
    for (const VarId v : terminal) slots.push_back(spec.variables[v].slot);
    std::sort(slots.begin(), slots.end());
    for (const SlotId s : slots) m0.variables.push_back(spec.variables[spec.slot_variable(s)].name);
    m0.invariants = typing_invariants(spec, slots);
    append_user_invariants(spec, slots, m0.invariants);
    m0.events.push_back(initialisation(spec, slots));
    for (const SlotId s : slots) {
      const VarId v = spec.slot_variable(s);
      Event e;
      e.name = set_event_name(spec, v);
      e.source = variable_id(spec, v);
      e.actions.push_back(choose_any(spec, spec.variables[v], "act1"));
      m0.events.push_back(std::move(e));
    }
    check_event_names(m0.events);
    chain.push_back(std::move(m0));
  }

  const std::vector<std::size_t> producers_first = *cg.order;
  std::vector<bool> added(spec.components.size(), false);
  for (std::size_t step = 0; step < producers_first.size(); ++step) {
    const std::size_t comp = producers_first[producers_first.size() - 1 - step];
    added[comp] = true;
    const Machine & prev = chain.back();

    Machine m;
    m.name = spec.name + "_r" + std::to_string(step + 1);
    m.refines = prev.name;
    m.sees = context_name(spec);

    // Slots present at this level.
    std::vector<bool> present(spec.slot_count(), false);
    for (const VarId v : terminal) present[spec.variables[v].slot] = true;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      if (!added[c]) continue;
      for (const VarId v : spec.components[c].variables) present[spec.variables[v].slot] = true;
      for (const std::size_t sm : spec.components[c].machines) {
        present[spec.machines[sm].slot] = true;
      }
    }
    for (const auto & as : spec.assigns) {
      if (!added[as.component]) continue;
      for (const auto & k : as.cases) {
        if (k.condition.is_else()) continue;
        std::vector<SlotId> reads;
        collect_slots(k.condition.table, reads);
        for (const SlotId s : reads) present[s] = true;
      }
    }
    for (const auto & sm : spec.machines) {
      if (!added[sm.component]) continue;
      for (const auto & t : sm.transitions) {
        if (t.guard.is_else()) continue;
        std::vector<SlotId> reads;
        collect_slots(t.guard.table, reads);
        for (const SlotId s : reads) present[s] = true;
      }
    }
    std::vector<SlotId> slots;
    for (SlotId s = 0; s < spec.slot_count(); ++s) {
      if (!present[s]) continue;
      slots.push_back(s);
      const Slot & slot = spec.slots[s];
      m.variables.push_back(slot.kind == Slot::Kind::machine
                              ? state_variable(spec.machines[slot.index])
                              : spec.variables[slot.index].name);
    }
    m.invariants = typing_invariants(spec, slots);
    append_user_invariants(spec, slots, m.invariants);
    m.events.push_back(initialisation(spec, slots));

    // Abstract setters of terminal outputs whose writer is not added yet.
    std::vector<SlotId> terminal_slots;
    for (const VarId v : terminal) terminal_slots.push_back(spec.variables[v].slot);
    std::sort(terminal_slots.begin(), terminal_slots.end());
    for (const SlotId s : terminal_slots) {
      const VarId v = spec.slot_variable(s);
      if (added[spec.variables[v].component]) continue;
      Event e;
      e.name = set_event_name(spec, v);
      e.refines = e.name;
      e.source = variable_id(spec, v);
      e.actions.push_back(choose_any(spec, spec.variables[v], "act1"));
      m.events.push_back(std::move(e));
    }

    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      if (!added[c]) continue;
      for (auto & e : component_events(spec, c)) {
        if (prev.find_event(e.name)) {
          e.refines = e.name;
        } else if (c == comp && !e.actions.empty()) {
          // Newly added: refine whatever set this variable one level up.
          const std::string & var = e.actions.front().var;
          for (const auto & abstract : prev.events) {
            if (abstract.name == "Set_" + var || abstract.name == "Env_Set_" + var) {
              e.refines = abstract.name;
              break;
            }
          }
        }
        m.events.push_back(std::move(e));
      }
    }

    if (!opts.closed) {
      for (const SlotId s : slots) {
        if (spec.slots[s].kind != Slot::Kind::variable) continue;
        const VarId v = spec.slot_variable(s);
        const Variable & var = spec.variables[v];
        const bool env = spec.is_top_level_input(v) ||
                         (!added[var.component] && var.direction != Direction::input &&
                          std::find(terminal.begin(), terminal.end(), v) == terminal.end());
        if (!env) continue;
        Event e = env_event(spec, v);
        if (prev.find_event(e.name)) e.refines = e.name;
        m.events.push_back(std::move(e));
      }
    }
    check_event_names(m.events);
    chain.push_back(std::move(m));
  }
  return chain;
}

// ---- rendering ----------------------------------------------------------------------

namespace
{

struct Symbols
{
  const char * disj;
  const char * conj;
  const char * neg;
  const char * ne;
  const char * le;
  const char * ge;
  const char * in;
  const char * choose;
  const char * range;
  const char * top;
  const char * bottom;
};

const Symbols & symbols(const RenderOptions & opts)
{
  static const Symbols utf8{"∨", "∧", "¬", "≠", "≤", "≥", "∈", ":∈", "‥", "⊤", "⊥"};
  static const Symbols ascii{"or", "and", "not", "/=", "<=", ">=", ":", "::", "..", "true", "false"};
  return opts.ascii ? ascii : utf8;
}

const char * relop(RelOp op, const Symbols & sym)
{
  switch (op) {
    case RelOp::eq:
      return "=";
    case RelOp::ne:
      return sym.ne;
    case RelOp::lt:
      return "<";
    case RelOp::le:
      return sym.le;
    case RelOp::gt:
      return ">";
    case RelOp::ge:
      return sym.ge;
  }
  return "=";
}

bool is_nary(const Pred & p)
{
  return p.kind == Pred::Kind::conjunction || p.kind == Pred::Kind::disjunction;
}

void render_pred(std::ostream & os, const Pred & p, const Symbols & sym)
{
  switch (p.kind) {
    case Pred::Kind::relation:
      os << p.lhs << ' ' << relop(p.op, sym) << ' ' << p.rhs;
      return;
    case Pred::Kind::member:
      os << p.lhs << ' ' << sym.in << ' ' << p.set;
      return;
    case Pred::Kind::in_range:
      os << p.lhs << ' ' << sym.in << ' ' << p.lo << sym.range << p.hi;
      return;
    case Pred::Kind::partition:
      os << "partition(" << p.lhs;
      for (const auto & part : p.parts) os << ", {" << part << '}';
      os << ')';
      return;
    case Pred::Kind::negation:
      os << sym.neg << '(';
      render_pred(os, p.args.front(), sym);
      os << ')';
      return;
    case Pred::Kind::conjunction:
    case Pred::Kind::disjunction: {
      const char * op = p.kind == Pred::Kind::conjunction ? sym.conj : sym.disj;
      for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) os << ' ' << op << ' ';
        if (is_nary(p.args[i])) {
          os << '(';
          render_pred(os, p.args[i], sym);
          os << ')';
        } else {
          render_pred(os, p.args[i], sym);
        }
      }
      return;
    }
    case Pred::Kind::truth:
      os << sym.top;
      return;
    case Pred::Kind::falsity:
      os << sym.bottom;
      return;
  }
}

void render_labeled(std::ostream & os, const Labeled & l, const Symbols & sym, const char * indent)
{
  for (const auto & c : l.comments) os << indent << "// " << c << '\n';
  os << indent << '@' << l.label << ' ';
  render_pred(os, l.pred, sym);
  os << '\n';
}

void render_action(std::ostream & os, const Action & a, const Symbols & sym)
{
  os << "      @" << a.label << ' ' << a.var << ' ';
  switch (a.kind) {
    case Action::Kind::assign:
      os << ":= " << a.value;
      break;
    case Action::Kind::choose_set:
      os << sym.choose << ' ' << a.value;
      break;
    case Action::Kind::choose_range:
      os << sym.choose << ' ' << a.lo << sym.range << a.hi;
      break;
  }
  os << '\n';
}

}  // namespace

std::string render(const Pred & p, const RenderOptions & opts)
{
  std::ostringstream os;
  render_pred(os, p, symbols(opts));
  return os.str();
}

std::string render(const Context & c, const RenderOptions & opts)
{
  const Symbols & sym = symbols(opts);
  std::ostringstream os;
  os << "context " << c.name << '\n';
  if (!c.sets.empty()) {
    os << "\nsets\n";
    for (const auto & s : c.sets) os << "  " << s.name << '\n';
  }
  if (!c.constants.empty()) {
    os << "\nconstants\n";
    for (const auto & k : c.constants) os << "  " << k << '\n';
  }
  if (!c.axioms.empty()) {
    os << "\naxioms\n";
    for (const auto & a : c.axioms) render_labeled(os, a, sym, "  ");
  }
  os << "end\n";
  return os.str();
}

std::string render(const Machine & m, const RenderOptions & opts)
{
  const Symbols & sym = symbols(opts);
  std::ostringstream os;
  os << "machine " << m.name << '\n';
  if (m.refines) os << "refines " << *m.refines << '\n';
  os << "sees " << m.sees << '\n';
  if (!m.variables.empty()) {
    os << "\nvariables\n";
    for (const auto & v : m.variables) os << "  " << v << '\n';
  }
  if (!m.invariants.empty()) {
    os << "\ninvariants\n";
    for (const auto & i : m.invariants) render_labeled(os, i, sym, "  ");
  }
  if (!m.events.empty()) {
    os << "\nevents\n";
    for (std::size_t i = 0; i < m.events.size(); ++i) {
      const Event & e = m.events[i];
      if (i) os << '\n';
      os << "  event " << e.name << '\n';
      if (e.refines) os << "    refines " << *e.refines << '\n';
      for (const auto & c : e.comments) os << "    // " << c << '\n';
      if (!e.guards.empty()) {
        os << "    when\n";
        for (const auto & g : e.guards) render_labeled(os, g, sym, "      ");
      }
      if (!e.actions.empty()) {
        os << "    then\n";
        for (const auto & a : e.actions) render_action(os, a, sym);
      }
      os << "  end\n";
    }
  }
  os << "end\n";
  return os.str();
}

}  // namespace rsmlkit::eventb
