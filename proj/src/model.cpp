#include "rsmlkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace rsmlkit
{

// ---- TypeDef ----------------------------------------------------------------

std::size_t TypeDef::cardinality() const noexcept
{
  if (kind == TypeKind::int_range) return hi < lo ? 0 : static_cast<std::size_t>(hi - lo) + 1;
  return literals.size();
}

bool TypeDef::contains(Value v) const noexcept
{
  if (kind == TypeKind::int_range) return v >= lo && v <= hi;
  return v >= 0 && static_cast<std::size_t>(v) < literals.size();
}

std::string TypeDef::format(Value v) const
{
  if (kind == TypeKind::int_range) return std::to_string(v);
  if (!contains(v)) return "<invalid:" + std::to_string(v) + ">";
  return literals[static_cast<std::size_t>(v)];
}

std::vector<Value> domain_of(const TypeDef & t)
{
  std::vector<Value> out;
  out.reserve(t.cardinality());
  if (t.kind == TypeKind::int_range) {
    for (Value v = t.lo; v <= t.hi; ++v) {
      out.push_back(v);
      if (v == t.hi) break;  // guards against hi == INT64_MAX
    }
  } else {
    for (std::size_t i = 0; i < t.literals.size(); ++i) out.push_back(static_cast<Value>(i));
  }
  return out;
}

// ---- StateMachine / Specification queries -------------------------------------

std::vector<std::size_t> StateMachine::outgoing(std::size_t state) const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (transitions[i].from == state) out.push_back(i);
  }
  return out;
}

const TypeDef * Specification::slot_type(SlotId s) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) return nullptr;
  return &types.at(variables.at(slot.index).type);
}

std::vector<Value> Specification::slot_domain(SlotId s) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) {
    std::vector<Value> out(machines.at(slot.index).states.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Value>(i);
    return out;
  }
  return domain_of(*slot_type(s));
}

std::size_t Specification::slot_cardinality(SlotId s) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) return machines.at(slot.index).states.size();
  return slot_type(s)->cardinality();
}

std::string Specification::slot_name(SlotId s) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) return machines.at(slot.index).name;
  return qualified_name(slot.index);
}

std::string Specification::display_name(SlotId s) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) return machines.at(slot.index).name;
  const std::string & bare = variables.at(slot.index).name;
  const auto unique = find_variable(bare);
  return unique && variables[*unique].slot == s ? bare : qualified_name(slot.index);
}

std::string Specification::format_value(SlotId s, Value v) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) {
    const auto & states = machines.at(slot.index).states;
    if (v < 0 || static_cast<std::size_t>(v) >= states.size()) return "<invalid>";
    return states[static_cast<std::size_t>(v)];
  }
  return slot_type(s)->format(v);
}

std::optional<Value> Specification::parse_value(SlotId s, std::string_view text) const
{
  const Slot & slot = slots.at(s);
  if (slot.kind == Slot::Kind::machine) {
    const auto & states = machines.at(slot.index).states;
    const auto it = std::find(states.begin(), states.end(), text);
    if (it == states.end()) return std::nullopt;
    return static_cast<Value>(it - states.begin());
  }
  const TypeDef & t = *slot_type(s);
  if (t.kind == TypeKind::int_range) {
    Value v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !t.contains(v)) {
      return std::nullopt;
    }
    return v;
  }
  const auto it = std::find(t.literals.begin(), t.literals.end(), text);
  if (it == t.literals.end()) return std::nullopt;
  return static_cast<Value>(it - t.literals.begin());
}

std::string Specification::qualified_name(VarId v) const
{
  const Variable & var = variables.at(v);
  return components.at(var.component).name + "." + var.name;
}

std::optional<VarId> Specification::find_variable(std::string_view name) const
{
  if (const auto dot = name.find('.'); dot != std::string_view::npos) {
    const auto comp = name.substr(0, dot);
    const auto var = name.substr(dot + 1);
    for (VarId v = 0; v < variables.size(); ++v) {
      if (variables[v].name == var && components[variables[v].component].name == comp) return v;
    }
    return std::nullopt;
  }
  std::optional<VarId> found;
  for (VarId v = 0; v < variables.size(); ++v) {
    if (variables[v].name != name) continue;
    const VarId canonical = slot_variable(variables[v].slot);
    if (found && *found != canonical) return std::nullopt;  // ambiguous
    found = canonical;
  }
  return found;
}

std::optional<std::size_t> Specification::find_machine(std::string_view name) const
{
  for (std::size_t m = 0; m < machines.size(); ++m) {
    if (machines[m].name == name) return m;
  }
  return std::nullopt;
}

std::optional<std::size_t> Specification::assignment_for(VarId v) const
{
  for (std::size_t a = 0; a < assigns.size(); ++a) {
    if (assigns[a].target == v) return a;
  }
  return std::nullopt;
}

bool Specification::is_top_level_input(VarId v) const
{
  const Variable & var = variables.at(v);
  return var.direction == Direction::input && !var.producer;
}

std::vector<VarId> Specification::top_level_inputs() const
{
  std::vector<VarId> out;
  for (VarId v = 0; v < variables.size(); ++v) {
    if (is_top_level_input(v)) out.push_back(v);
  }
  return out;
}

// ---- resolution ---------------------------------------------------------------

namespace
{

struct Abort
{
};

/// Static type of an operand: a declared type, or an integer literal that is
/// compatible with any integer range.
struct OperandType
{
  bool int_literal = false;
  TypeId type = 0;
};

class Resolver
{
public:
  Resolver(const ast::SpecFile & f, std::string filename) : f_(f)
  {
    s_.name = f.name;
    s_.file = filename.empty() ? f.span.file : std::move(filename);
  }

  Parsed<Specification> run()
  {
    declare_types();
    declare_components();
    wire_inputs();
    assign_slots();
    for (std::size_t c = 0; c < f_.components.size(); ++c) {
      if (comp_index_[c]) resolve_behaviour(c, *comp_index_[c]);
    }
    resolve_invariants();

    Parsed<Specification> out;
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics)) out.value = std::move(s_);
    return out;
  }

private:
  void error(std::string code, std::string message, const SourceSpan & span)
  {
    diags_.push_back(make_error(std::move(code), std::move(message), span));
  }

  [[noreturn]] void abort(std::string code, std::string message, const SourceSpan & span)
  {
    error(std::move(code), std::move(message), span);
    throw Abort{};
  }

  // -- declarations --

  void declare_types()
  {
    TypeDef b;
    b.name = "bool";
    b.kind = TypeKind::boolean;
    b.literals = {"FALSE", "TRUE"};
    b.lo = 0;
    b.hi = 1;
    s_.types.push_back(b);
    type_by_name_["bool"] = Specification::bool_type;
    literal_["FALSE"] = {Specification::bool_type, 0};
    literal_["TRUE"] = {Specification::bool_type, 1};

    for (const auto & t : f_.types) {
      if (t.name == "bool" || t.name == "BOOL" || t.name == "TRUE" || t.name == "FALSE") {
        error("DuplicateName", "type name '" + t.name + "' collides with the builtin bool type",
              t.span);
        continue;
      }
      if (type_by_name_.count(t.name)) {
        error("DuplicateName", "type '" + t.name + "' is declared twice", t.span);
        continue;
      }
      TypeDef def;
      def.name = t.name;
      def.span = t.span;
      const TypeId id = s_.types.size();
      if (t.is_enum) {
        def.kind = TypeKind::enumeration;
        for (std::size_t i = 0; i < t.literals.size(); ++i) {
          const std::string & lit = t.literals[i];
          const SourceSpan & span = i < t.literal_spans.size() ? t.literal_spans[i] : t.span;
          if (const auto it = literal_.find(lit); it != literal_.end()) {
            error("DuplicateName",
                  "enumeration literal '" + lit + "' is already declared by type '" +
                    s_.types[it->second.first].name + "'",
                  span);
            continue;
          }
          literal_[lit] = {id, static_cast<Value>(def.literals.size())};
          def.literals.push_back(lit);
        }
        if (def.literals.empty()) {
          error("DuplicateName", "enumeration '" + t.name + "' has no usable literals", t.span);
        }
      } else {
        def.kind = TypeKind::int_range;
        def.lo = t.lo;
        def.hi = t.hi;
        if (t.lo > t.hi) {
          error("InvalidRange",
                "integer range [" + std::to_string(t.lo) + ".." + std::to_string(t.hi) +
                  "] of type '" + t.name + "' is empty",
                t.span);
        }
      }
      type_by_name_[t.name] = id;
      s_.types.push_back(std::move(def));
    }
  }

  void declare_components()
  {
    comp_index_.assign(f_.components.size(), std::nullopt);
    for (std::size_t ci = 0; ci < f_.components.size(); ++ci) {
      const auto & c = f_.components[ci];
      if (comp_by_name_.count(c.name)) {
        error("DuplicateName", "component '" + c.name + "' is declared twice", c.span);
        continue;
      }
      const std::size_t id = s_.components.size();
      comp_by_name_[c.name] = id;
      comp_index_[ci] = id;
      Component comp;
      comp.name = c.name;
      comp.span = c.span;
      s_.components.push_back(comp);
      vars_by_comp_.emplace_back();

      for (const auto & v : c.variables) declare_variable(id, v);
      for (const auto & m : c.machines) declare_machine(id, m);
    }
  }

  void declare_variable(std::size_t comp, const ast::VarDecl & v)
  {
    auto & scope = vars_by_comp_[comp];
    if (scope.count(v.name)) {
      error("DuplicateName",
            "variable '" + v.name + "' is declared twice in component '" +
              s_.components[comp].name + "'",
            v.span);
      return;
    }
    if (literal_.count(v.name)) {
      error("DuplicateName", "variable '" + v.name + "' collides with an enumeration literal",
            v.span);
      return;
    }
    const auto t = type_by_name_.find(v.type);
    if (t == type_by_name_.end()) {
      error("UnknownName", "unknown type '" + v.type + "'", v.span);
      return;
    }
    Variable var;
    var.name = v.name;
    var.component = comp;
    var.direction = v.direction;
    var.type = t->second;
    var.span = v.span;
    var.init = domain_of(s_.types[var.type]).empty() ? 0 : domain_of(s_.types[var.type]).front();
    if (v.init) {
      try {
        var.init = literal_value(*v.init, var.type);
        var.init_declared = true;
      } catch (const Abort &) {
        return;
      }
    }
    const VarId id = s_.variables.size();
    if (v.direction == Direction::output) {
      auto & writers = outputs_by_name_[v.name];
      if (!writers.empty()) {
        error("MultipleWriters",
              "shared variable '" + v.name + "' is an output of both '" +
                s_.components[s_.variables[writers.front()].component].name + "' and '" +
                s_.components[comp].name + "'",
              v.span);
      }
      writers.push_back(id);
    }
    scope[v.name] = id;
    s_.variables.push_back(std::move(var));
    s_.components[comp].variables.push_back(id);
  }

  void declare_machine(std::size_t comp, const ast::StateMachine & m)
  {
    if (machine_by_name_.count(m.name)) {
      error("DuplicateName", "state machine '" + m.name + "' is declared twice", m.span);
      return;
    }
    StateMachine sm;
    sm.name = m.name;
    sm.component = comp;
    sm.span = m.span;
    bool ok = true;
    for (const auto & st : m.states) {
      if (std::find(sm.states.begin(), sm.states.end(), st.name) != sm.states.end()) {
        error("DuplicateName", "state '" + st.name + "' is declared twice in '" + m.name + "'",
              st.span);
        ok = false;
        continue;
      }
      sm.states.push_back(st.name);
      sm.state_spans.push_back(st.span);
    }
    const auto init = std::find(sm.states.begin(), sm.states.end(), m.initial);
    if (init == sm.states.end()) {
      error("UnknownName",
            "initial state '" + m.initial + "' is not a state of '" + m.name + "'", m.span);
      ok = false;
    } else {
      sm.initial = static_cast<std::size_t>(init - sm.states.begin());
    }
    if (!ok) return;
    const std::size_t id = s_.machines.size();
    machine_by_name_[m.name] = id;
    machine_ast_.push_back(&m);
    s_.machines.push_back(std::move(sm));
    s_.components[comp].machines.push_back(id);
  }

  void wire_inputs()
  {
    for (VarId v = 0; v < s_.variables.size(); ++v) {
      Variable & var = s_.variables[v];
      if (var.direction != Direction::input) continue;
      const auto it = outputs_by_name_.find(var.name);
      if (it == outputs_by_name_.end() || it->second.empty()) continue;
      const VarId producer = it->second.front();
      const Variable & prod = s_.variables[producer];
      if (prod.type != var.type) {
        error("TypeMismatch",
              "input '" + s_.qualified_name(v) + "' has type '" + s_.types[var.type].name +
                "' but is fed by '" + s_.qualified_name(producer) + "' of type '" +
                s_.types[prod.type].name + "'",
              var.span);
        continue;
      }
      if (var.init_declared) {
        error("WiredInit",
              "input '" + s_.qualified_name(v) + "' is fed by '" + s_.qualified_name(producer) +
                "' and cannot declare its own init",
              var.span);
        continue;
      }
      var.producer = producer;
      var.init = prod.init;
    }
  }

  void assign_slots()
  {
    for (VarId v = 0; v < s_.variables.size(); ++v) {
      if (s_.variables[v].producer) continue;
      s_.variables[v].slot = s_.slots.size();
      s_.slots.push_back({Slot::Kind::variable, v});
    }
    for (auto & var : s_.variables) {
      if (var.producer) var.slot = s_.variables[*var.producer].slot;
    }
    for (std::size_t m = 0; m < s_.machines.size(); ++m) {
      s_.machines[m].slot = s_.slots.size();
      s_.slots.push_back({Slot::Kind::machine, m});
    }
  }

  // -- behaviour --

  void resolve_behaviour(std::size_t ast_comp, std::size_t comp)
  {
    const auto & c = f_.components[ast_comp];
    for (const auto & a : c.assigns) resolve_assign(comp, a);
    for (const auto & m : c.machines) {
      const auto it = machine_by_name_.find(m.name);
      if (it == machine_by_name_.end() || machine_ast_[it->second] != &m) continue;
      resolve_transitions(comp, it->second, m);
    }
  }

  void resolve_assign(std::size_t comp, const ast::Assign & a)
  {
    const auto & scope = vars_by_comp_[comp];
    const auto t = scope.find(a.target);
    if (t == scope.end()) {
      error("UnknownName",
            "assignment target '" + a.target + "' is not a variable of component '" +
              s_.components[comp].name + "'",
            a.span);
      return;
    }
    const Variable & target = s_.variables[t->second];
    if (target.direction == Direction::input) {
      error("InputAssigned", "'" + a.target + "' is an input and cannot be assigned", a.span);
      return;
    }
    if (const auto prev = s_.assignment_for(t->second)) {
      error("MultipleWriters", "'" + a.target + "' already has an assignment specification",
            a.span);
      return;
    }
    AssignmentSpec spec;
    spec.target = t->second;
    spec.component = comp;
    spec.span = a.span;
    bool ok = true;
    for (const auto & k : a.cases) {
      try {
        Case kase;
        kase.condition = condition(k.condition, comp);
        kase.value = literal_value(k.value, target.type);
        for (const auto & r : k.trace) kase.trace.push_back(r.id);
        kase.span = k.span;
        spec.cases.push_back(std::move(kase));
      } catch (const Abort &) {
        ok = false;
      }
    }
    if (!ok) return;
    s_.components[comp].assigns.push_back(s_.assigns.size());
    s_.assigns.push_back(std::move(spec));
  }

  void resolve_transitions(std::size_t comp, std::size_t machine, const ast::StateMachine & m)
  {
    StateMachine & sm = s_.machines[machine];
    for (std::size_t si = 0; si < m.states.size(); ++si) {
      const auto & st = m.states[si];
      const auto from = std::find(sm.states.begin(), sm.states.end(), st.name);
      for (const auto & t : st.transitions) {
        try {
          const auto to = std::find(sm.states.begin(), sm.states.end(), t.target);
          if (to == sm.states.end()) {
            abort("UnknownName", "'" + t.target + "' is not a state of '" + sm.name + "'",
                  t.span);
          }
          Transition tr;
          tr.from = static_cast<std::size_t>(from - sm.states.begin());
          tr.to = static_cast<std::size_t>(to - sm.states.begin());
          tr.guard = condition(t.condition, comp);
          for (const auto & r : t.trace) tr.trace.push_back(r.id);
          tr.span = t.span;
          sm.transitions.push_back(std::move(tr));
        } catch (const Abort &) {
        }
      }
    }
  }

  void resolve_invariants()
  {
    std::set<std::string> names;
    for (const auto & inv : f_.invariants) {
      if (!names.insert(inv.name).second) {
        error("DuplicateName", "invariant '" + inv.name + "' is declared twice", inv.span);
        continue;
      }
      try {
        InvariantDecl decl;
        decl.name = inv.name;
        decl.body = table(inv.table, std::nullopt);
        for (const auto & r : inv.trace) decl.trace.push_back(r.id);
        decl.span = inv.span;
        s_.invariants.push_back(std::move(decl));
      } catch (const Abort &) {
      }
    }
  }

  Condition condition(const ast::Condition & c, std::optional<std::size_t> comp)
  {
    Condition out;
    out.span = c.span;
    if (c.is_else) {
      out.form = Condition::Form::else_of;
      return out;
    }
    out.form = Condition::Form::table;
    out.table = table(c.table, comp);
    return out;
  }

  Table table(const ast::Table & t, std::optional<std::size_t> comp)
  {
    Table out;
    out.span = t.span;
    out.cells = t.cells;
    for (const auto & p : t.rows) out.rows.push_back(predicate(p, comp));
    return out;
  }

  // -- names and types --

  /// Variable visible under `name` from component `comp` (nullopt = global
  /// scope, used by invariants).
  std::optional<VarId> lookup_variable(const std::string & name, std::optional<std::size_t> comp,
                                       const SourceSpan & span)
  {
    if (const auto dot = name.find('.'); dot != std::string::npos) {
      const std::string cname = name.substr(0, dot);
      const std::string vname = name.substr(dot + 1);
      const auto c = comp_by_name_.find(cname);
      if (c == comp_by_name_.end()) abort("UnknownName", "unknown component '" + cname + "'", span);
      const auto & scope = vars_by_comp_[c->second];
      const auto v = scope.find(vname);
      if (v == scope.end()) {
        abort("UnknownName", "component '" + cname + "' has no variable '" + vname + "'", span);
      }
      if (comp && *comp != c->second && s_.variables[v->second].direction != Direction::output) {
        abort("UnknownName",
              "'" + name + "' is not an output of '" + cname + "' and cannot be read from '" +
                s_.components[*comp].name + "'",
              span);
      }
      return v->second;
    }
    if (comp) {
      const auto & scope = vars_by_comp_[*comp];
      if (const auto v = scope.find(name); v != scope.end()) return v->second;
      if (const auto o = outputs_by_name_.find(name);
          o != outputs_by_name_.end() && !o->second.empty()) {
        return o->second.front();
      }
      return std::nullopt;
    }
    std::optional<VarId> found;
    for (VarId v = 0; v < s_.variables.size(); ++v) {
      if (s_.variables[v].name != name) continue;
      const VarId canonical = s_.variables[v].producer.value_or(v);
      if (found && *found != canonical) {
        abort("UnknownName", "ambiguous name '" + name + "'; qualify it as Component." + name,
              span);
      }
      found = canonical;
    }
    return found;
  }

  std::pair<Operand, OperandType> operand(const ast::Operand & o, std::optional<std::size_t> comp,
                                          const SourceSpan & span)
  {
    Operand out;
    OperandType type;
    if (o.kind == ast::Operand::Kind::integer) {
      out.kind = Operand::Kind::constant;
      out.value = o.number;
      out.spelling = std::to_string(o.number);
      type.int_literal = true;
      return {out, type};
    }
    out.spelling = o.name;
    const SourceSpan & where = o.span.valid() ? o.span : span;
    if (const auto v = lookup_variable(o.name, comp, where)) {
      const Variable & var = s_.variables[*v];
      out.kind = Operand::Kind::slot;
      out.slot = var.slot;
      type.type = var.type;
      return {out, type};
    }
    if (const auto lit = literal_.find(o.name); lit != literal_.end()) {
      out.kind = Operand::Kind::constant;
      out.value = lit->second.second;
      type.type = lit->second.first;
      return {out, type};
    }
    abort("UnknownName", "unknown name '" + o.name + "'", where);
  }

  bool is_int(const OperandType & t) const
  {
    return t.int_literal || s_.types[t.type].kind == TypeKind::int_range;
  }

  std::string type_name(const OperandType & t) const
  {
    return t.int_literal ? "integer literal" : "'" + s_.types[t.type].name + "'";
  }

  Predicate predicate(const ast::Predicate & p, std::optional<std::size_t> comp)
  {
    Predicate out;
    out.span = p.span;
    if (p.state_test) {
      const auto m = machine_by_name_.find(p.machine);
      if (m == machine_by_name_.end()) {
        abort("UnknownName", "unknown state machine '" + p.machine + "'", p.span);
      }
      const StateMachine & sm = s_.machines[m->second];
      const auto st = std::find(sm.states.begin(), sm.states.end(), p.state);
      if (st == sm.states.end()) {
        abort("UnknownName", "'" + p.state + "' is not a state of '" + p.machine + "'", p.span);
      }
      out.state_test = true;
      out.lhs = {Operand::Kind::slot, sm.slot, 0, p.machine};
      out.op = RelOp::eq;
      out.rhs = {Operand::Kind::constant, 0, static_cast<Value>(st - sm.states.begin()), p.state};
      return out;
    }
    auto [lhs, lt] = operand(p.lhs, comp, p.span);
    auto [rhs, rt] = operand(p.rhs, comp, p.span);
    if (lhs.kind == Operand::Kind::constant && rhs.kind == Operand::Kind::constant) {
      abort("TypeMismatch", "predicate compares two literals", p.span);
    }
    if (p.op != RelOp::eq && p.op != RelOp::ne) {
      if (!is_int(lt) || !is_int(rt)) {
        abort("TypeMismatch",
              std::string("ordering operator '") + to_string(p.op) +
                "' needs integer operands, found " + type_name(lt) + " and " + type_name(rt),
              p.span);
      }
    } else {
      const bool compatible =
        (lt.int_literal && !rt.int_literal && s_.types[rt.type].kind == TypeKind::int_range) ||
        (rt.int_literal && !lt.int_literal && s_.types[lt.type].kind == TypeKind::int_range) ||
        (!lt.int_literal && !rt.int_literal && lt.type == rt.type);
      if (!compatible) {
        abort("TypeMismatch",
              "cannot compare " + type_name(lt) + " with " + type_name(rt), p.span);
      }
    }
    out.lhs = lhs;
    out.op = p.op;
    out.rhs = rhs;
    return out;
  }

  Value literal_value(const ast::Literal & l, TypeId type)
  {
    const TypeDef & t = s_.types[type];
    if (l.kind == ast::Operand::Kind::integer) {
      if (t.kind != TypeKind::int_range) {
        abort("TypeMismatch",
              "integer " + std::to_string(l.number) + " is not a value of '" + t.name + "'",
              l.span);
      }
      if (!t.contains(l.number)) {
        abort("TypeMismatch",
              std::to_string(l.number) + " is outside '" + t.name + "' [" +
                std::to_string(t.lo) + ".." + std::to_string(t.hi) + "]",
              l.span);
      }
      return l.number;
    }
    const auto lit = literal_.find(l.name);
    if (lit == literal_.end()) abort("UnknownName", "unknown literal '" + l.name + "'", l.span);
    if (lit->second.first != type) {
      abort("TypeMismatch", "'" + l.name + "' is not a value of '" + t.name + "'", l.span);
    }
    return lit->second.second;
  }

  const ast::SpecFile & f_;
  Specification s_;
  std::map<std::string, TypeId> type_by_name_;
  std::map<std::string, std::pair<TypeId, Value>> literal_;
  std::map<std::string, std::size_t> comp_by_name_;
  std::vector<std::optional<std::size_t>> comp_index_;
  std::vector<std::map<std::string, VarId>> vars_by_comp_;
  std::map<std::string, std::vector<VarId>> outputs_by_name_;
  std::map<std::string, std::size_t> machine_by_name_;
  std::vector<const ast::StateMachine *> machine_ast_;
  std::vector<Diagnostic> diags_;
};

ast::Operand to_ast_operand(const Operand & o)
{
  ast::Operand out;
  if (o.kind == Operand::Kind::constant && !o.spelling.empty() &&
      (std::isdigit(static_cast<unsigned char>(o.spelling.front())) || o.spelling.front() == '-')) {
    out.kind = ast::Operand::Kind::integer;
    out.number = o.value;
  } else {
    out.kind = ast::Operand::Kind::name;
    out.name = o.spelling;
  }
  return out;
}

ast::Table to_ast_table(const Table & t)
{
  ast::Table out;
  out.span = t.span;
  out.cells = t.cells;
  for (const auto & p : t.rows) {
    ast::Predicate q;
    q.span = p.span;
    if (p.state_test) {
      q.state_test = true;
      q.machine = p.lhs.spelling;
      q.state = p.rhs.spelling;
    } else {
      q.lhs = to_ast_operand(p.lhs);
      q.op = p.op;
      q.rhs = to_ast_operand(p.rhs);
    }
    out.rows.push_back(std::move(q));
  }
  return out;
}

ast::Condition to_ast_condition(const Condition & c)
{
  ast::Condition out;
  out.span = c.span;
  out.is_else = c.is_else();
  if (!out.is_else) out.table = to_ast_table(c.table);
  return out;
}

ast::Literal to_ast_literal(const TypeDef & t, Value v)
{
  ast::Literal l;
  if (t.kind == TypeKind::int_range) {
    l.kind = ast::Operand::Kind::integer;
    l.number = v;
  } else {
    l.kind = ast::Operand::Kind::name;
    l.name = t.format(v);
  }
  return l;
}

std::vector<ast::TraceRef> to_ast_trace(const std::vector<std::string> & ids)
{
  std::vector<ast::TraceRef> out;
  for (const auto & id : ids) out.push_back({id, {}});
  return out;
}

}  // namespace

Parsed<Specification> resolve(const ast::SpecFile & file, std::string filename)
{
  return Resolver(file, std::move(filename)).run();
}

ast::SpecFile to_ast(const Specification & spec)
{
  ast::SpecFile f;
  f.name = spec.name;
  for (TypeId t = 1; t < spec.types.size(); ++t) {
    const TypeDef & def = spec.types[t];
    ast::TypeDef out;
    out.name = def.name;
    out.span = def.span;
    out.is_enum = def.kind == TypeKind::enumeration;
    out.literals = def.literals;
    out.literal_spans.assign(def.literals.size(), SourceSpan{});
    out.lo = def.lo;
    out.hi = def.hi;
    f.types.push_back(std::move(out));
  }
  for (const auto & c : spec.components) {
    ast::Component out;
    out.name = c.name;
    out.span = c.span;
    for (const VarId v : c.variables) {
      const Variable & var = spec.variables[v];
      ast::VarDecl d;
      d.direction = var.direction;
      d.name = var.name;
      d.type = spec.types[var.type].name;
      d.span = var.span;
      if (var.init_declared) d.init = to_ast_literal(spec.types[var.type], var.init);
      out.variables.push_back(std::move(d));
    }
    for (const std::size_t a : c.assigns) {
      const AssignmentSpec & as = spec.assigns[a];
      const Variable & target = spec.variables[as.target];
      ast::Assign d;
      d.target = target.name;
      d.span = as.span;
      for (const auto & k : as.cases) {
        ast::Case kase;
        kase.condition = to_ast_condition(k.condition);
        kase.value = to_ast_literal(spec.types[target.type], k.value);
        kase.trace = to_ast_trace(k.trace);
        kase.span = k.span;
        d.cases.push_back(std::move(kase));
      }
      out.assigns.push_back(std::move(d));
    }
    for (const std::size_t m : c.machines) {
      const StateMachine & sm = spec.machines[m];
      ast::StateMachine d;
      d.name = sm.name;
      d.span = sm.span;
      d.initial = sm.states[sm.initial];
      for (std::size_t s = 0; s < sm.states.size(); ++s) {
        ast::State st;
        st.name = sm.states[s];
        st.span = s < sm.state_spans.size() ? sm.state_spans[s] : SourceSpan{};
        for (const std::size_t t : sm.outgoing(s)) {
          const Transition & tr = sm.transitions[t];
          ast::Transition at;
          at.target = sm.states[tr.to];
          at.condition = to_ast_condition(tr.guard);
          at.trace = to_ast_trace(tr.trace);
          at.span = tr.span;
          st.transitions.push_back(std::move(at));
        }
        d.states.push_back(std::move(st));
      }
      out.machines.push_back(std::move(d));
    }
    f.components.push_back(std::move(out));
  }
  for (const auto & inv : spec.invariants) {
    ast::Invariant out;
    out.name = inv.name;
    out.span = inv.span;
    out.table = to_ast_table(inv.body);
    out.trace = to_ast_trace(inv.trace);
    f.invariants.push_back(std::move(out));
  }
  return f;
}

}  // namespace rsmlkit
