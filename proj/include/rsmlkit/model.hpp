#pragma once

// Resolved specification model. Every name in the surface tree is bound to a
// type, a variable slot or a constant; the model is immutable once built.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsmlkit/ast.hpp"
#include "rsmlkit/diagnostic.hpp"

namespace rsmlkit
{

/// Runtime value of a slot. Enumerations and states use their declaration
/// index, booleans are 0 (FALSE) / 1 (TRUE), integer ranges hold the integer.
using Value = std::int64_t;

using TypeId = std::size_t;
using VarId = std::size_t;
using SlotId = std::size_t;

enum class TypeKind { boolean, enumeration, int_range };

struct TypeDef
{
  std::string name;
  TypeKind kind = TypeKind::enumeration;
  std::vector<std::string> literals;  // enumeration and boolean
  Value lo = 0;
  Value hi = 0;
  SourceSpan span;

  [[nodiscard]] std::size_t cardinality() const noexcept;
  [[nodiscard]] bool contains(Value v) const noexcept;
  [[nodiscard]] std::string format(Value v) const;

  bool operator==(const TypeDef &) const = default;
};

/// Enumeration order used everywhere values are enumerated: declaration order
/// for enums, FALSE before TRUE, ascending integers.
[[nodiscard]] std::vector<Value> domain_of(const TypeDef & t);

struct Variable
{
  std::string name;
  std::size_t component = 0;
  Direction direction = Direction::input;
  TypeId type = 0;
  Value init = 0;
  bool init_declared = false;
  SourceSpan span;
  /// Set for an input fed by another component's output of the same name;
  /// both then share one slot.
  std::optional<VarId> producer;
  SlotId slot = 0;

  bool operator==(const Variable &) const = default;
};

struct Operand
{
  enum class Kind { slot, constant };
  Kind kind = Kind::constant;
  SlotId slot = 0;
  Value value = 0;
  std::string spelling;  // as written in the source

  bool operator==(const Operand &) const = default;
};

/// Atomic predicate. A state test `in(M, S)` is stored as `slot(M) = S`.
struct Predicate
{
  Operand lhs;
  RelOp op = RelOp::eq;
  Operand rhs;
  bool state_test = false;
  SourceSpan span;

  bool operator==(const Predicate &) const = default;
};

struct Table
{
  std::vector<Predicate> rows;
  std::vector<std::vector<Cell>> cells;  // cells[row][column]
  SourceSpan span;

  [[nodiscard]] std::size_t columns() const noexcept
  {
    return cells.empty() ? 0 : cells.front().size();
  }

  bool operator==(const Table &) const = default;
};

struct Condition
{
  enum class Form { table, else_of };
  Form form = Form::table;
  Table table;  // empty for else_of
  SourceSpan span;

  [[nodiscard]] bool is_else() const noexcept { return form == Form::else_of; }

  bool operator==(const Condition &) const = default;
};

struct Case
{
  Condition condition;
  Value value = 0;
  std::vector<std::string> trace;
  SourceSpan span;

  bool operator==(const Case &) const = default;
};

struct AssignmentSpec
{
  VarId target = 0;
  std::size_t component = 0;
  std::vector<Case> cases;
  SourceSpan span;

  bool operator==(const AssignmentSpec &) const = default;
};

struct Transition
{
  std::size_t from = 0;
  std::size_t to = 0;
  Condition guard;
  std::vector<std::string> trace;
  SourceSpan span;

  bool operator==(const Transition &) const = default;
};

struct StateMachine
{
  std::string name;
  std::size_t component = 0;
  std::vector<std::string> states;
  std::vector<SourceSpan> state_spans;
  std::size_t initial = 0;
  std::vector<Transition> transitions;  // grouped by source state, in order
  SourceSpan span;
  SlotId slot = 0;

  /// Indices into `transitions` leaving `state`, in declaration order.
  [[nodiscard]] std::vector<std::size_t> outgoing(std::size_t state) const;

  bool operator==(const StateMachine &) const = default;
};

struct InvariantDecl
{
  std::string name;
  Table body;
  std::vector<std::string> trace;
  SourceSpan span;

  bool operator==(const InvariantDecl &) const = default;
};

struct Component
{
  std::string name;
  std::vector<VarId> variables;
  std::vector<std::size_t> assigns;
  std::vector<std::size_t> machines;
  SourceSpan span;

  bool operator==(const Component &) const = default;
};

struct Slot
{
  enum class Kind { variable, machine };
  Kind kind = Kind::variable;
  std::size_t index = 0;  // VarId of the storing variable, or machine index

  bool operator==(const Slot &) const = default;
};

struct Specification
{
  std::string name;
  std::string file;
  std::vector<TypeDef> types;  // types[0] is the builtin bool
  std::vector<Component> components;
  std::vector<Variable> variables;
  std::vector<AssignmentSpec> assigns;
  std::vector<StateMachine> machines;
  std::vector<InvariantDecl> invariants;
  std::vector<Slot> slots;

  static constexpr TypeId bool_type = 0;

  [[nodiscard]] std::size_t slot_count() const noexcept { return slots.size(); }
  [[nodiscard]] std::vector<Value> slot_domain(SlotId s) const;
  [[nodiscard]] std::size_t slot_cardinality(SlotId s) const;
  /// `Comp.var` for variables, the machine name for machines.
  [[nodiscard]] std::string slot_name(SlotId s) const;
  /// Bare variable name when no other slot shares it, else `slot_name`.
  [[nodiscard]] std::string display_name(SlotId s) const;
  [[nodiscard]] std::string format_value(SlotId s, Value v) const;
  /// Parses a literal spelling (enum literal, TRUE/FALSE, integer, state name).
  [[nodiscard]] std::optional<Value> parse_value(SlotId s, std::string_view text) const;
  [[nodiscard]] const TypeDef * slot_type(SlotId s) const;

  [[nodiscard]] std::string qualified_name(VarId v) const;
  /// Accepts `Comp.var` or a bare name that designates exactly one slot.
  [[nodiscard]] std::optional<VarId> find_variable(std::string_view name) const;
  [[nodiscard]] std::optional<std::size_t> find_machine(std::string_view name) const;
  [[nodiscard]] std::optional<std::size_t> assignment_for(VarId v) const;

  /// Input that no component produces; only these are set by the environment.
  [[nodiscard]] bool is_top_level_input(VarId v) const;
  [[nodiscard]] std::vector<VarId> top_level_inputs() const;
  /// The variable owning the storage of a slot.
  [[nodiscard]] VarId slot_variable(SlotId s) const { return slots.at(s).index; }

  bool operator==(const Specification &) const = default;
};

/// Binds names and enforces typing rules. Diagnostics carry the span of the
/// offending construct; the codes are UnknownName, DuplicateName,
/// TypeMismatch, InputAssigned, MultipleWriters, InvalidRange and WiredInit.
[[nodiscard]] Parsed<Specification> resolve(const ast::SpecFile & file,
                                            std::string filename = {});

/// Rebuilds a surface tree from a resolved model (inverse of resolve).
[[nodiscard]] ast::SpecFile to_ast(const Specification & spec);

}  // namespace rsmlkit
