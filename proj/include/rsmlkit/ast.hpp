#pragma once

// Surface syntax trees for the three input languages: `.rsml` specifications,
// `.req` requirement lists and `.pf` Problem Frames diagrams. Nodes keep the
// spelling of the source; name binding happens in model.hpp.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsmlkit/diagnostic.hpp"

namespace rsmlkit
{

enum class RelOp { eq, ne, lt, le, gt, ge };

[[nodiscard]] const char * to_string(RelOp op) noexcept;
[[nodiscard]] RelOp negate(RelOp op) noexcept;

enum class Direction { input, output, internal };

[[nodiscard]] const char * to_string(Direction d) noexcept;

/// One cell of an AND/OR table.
enum class Cell { t, f, dot };

namespace ast
{

/// Identifier (possibly qualified `Comp.name`) or integer literal.
struct Operand
{
  enum class Kind { name, integer };
  Kind kind = Kind::name;
  std::string name;
  std::int64_t number = 0;
  SourceSpan span;

  bool operator==(const Operand &) const = default;
};

struct Predicate
{
  bool state_test = false;
  // relational form
  Operand lhs;
  RelOp op = RelOp::eq;
  Operand rhs;
  // state-test form: in(machine, state)
  std::string machine;
  std::string state;
  SourceSpan span;

  bool operator==(const Predicate &) const = default;
};

struct Table
{
  std::vector<Predicate> rows;
  std::vector<std::vector<Cell>> cells;  // cells[row][column]
  SourceSpan span;

  bool operator==(const Table &) const = default;
};

struct Condition
{
  bool is_else = false;
  Table table;
  SourceSpan span;

  bool operator==(const Condition &) const = default;
};

using Literal = Operand;

struct TraceRef
{
  std::string id;
  SourceSpan span;

  bool operator==(const TraceRef &) const = default;
};

struct Case
{
  Condition condition;
  Literal value;
  std::vector<TraceRef> trace;
  SourceSpan span;

  bool operator==(const Case &) const = default;
};

struct Assign
{
  std::string target;
  std::vector<Case> cases;
  SourceSpan span;

  bool operator==(const Assign &) const = default;
};

struct VarDecl
{
  Direction direction = Direction::input;
  std::string name;
  std::string type;
  std::optional<Literal> init;
  SourceSpan span;

  bool operator==(const VarDecl &) const = default;
};

struct Transition
{
  std::string target;
  Condition condition;
  std::vector<TraceRef> trace;
  SourceSpan span;

  bool operator==(const Transition &) const = default;
};

struct State
{
  std::string name;
  std::vector<Transition> transitions;
  SourceSpan span;

  bool operator==(const State &) const = default;
};

struct StateMachine
{
  std::string name;
  std::string initial;
  std::vector<State> states;
  SourceSpan span;

  bool operator==(const StateMachine &) const = default;
};

struct Component
{
  std::string name;
  std::vector<VarDecl> variables;
  std::vector<Assign> assigns;
  std::vector<StateMachine> machines;
  SourceSpan span;

  bool operator==(const Component &) const = default;
};

struct TypeDef
{
  std::string name;
  bool is_enum = true;
  std::vector<std::string> literals;
  std::vector<SourceSpan> literal_spans;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  SourceSpan span;

  bool operator==(const TypeDef &) const = default;
};

struct Invariant
{
  std::string name;
  Table table;
  std::vector<TraceRef> trace;
  SourceSpan span;

  bool operator==(const Invariant &) const = default;
};

struct SpecFile
{
  std::string name;
  std::vector<TypeDef> types;
  std::vector<Component> components;
  std::vector<Invariant> invariants;
  SourceSpan span;

  bool operator==(const SpecFile &) const = default;
};

// ---- requirements file ----------------------------------------------------

struct Requirement
{
  std::string id;
  std::string prose;
  std::optional<std::string> phase;
  SourceSpan span;

  bool operator==(const Requirement &) const = default;
};

// ---- Problem Frames file ---------------------------------------------------

enum class DomainKind { given, designed, biddable, lexical };

struct Domain
{
  std::string name;
  DomainKind kind = DomainKind::given;
  SourceSpan span;

  bool operator==(const Domain &) const = default;
};

struct PfInterface
{
  std::string a;
  std::string b;
  std::vector<std::string> phenomena;
  SourceSpan span;

  bool operator==(const PfInterface &) const = default;
};

/// `constrains Domain { p, q }` or `refs Domain { p }`.
struct PhenomenonRef
{
  std::string domain;
  std::vector<std::string> phenomena;
  SourceSpan span;

  bool operator==(const PhenomenonRef &) const = default;
};

struct PfRequirement
{
  std::string name;
  std::string prose;
  std::vector<PhenomenonRef> constrains;
  std::vector<PhenomenonRef> refs;
  std::vector<TraceRef> trace;
  SourceSpan span;

  bool operator==(const PfRequirement &) const = default;
};

struct ProblemDiagram
{
  std::string name;
  std::vector<std::string> machines;  // well-formed diagrams have exactly one
  std::vector<SourceSpan> machine_spans;
  std::vector<Domain> domains;
  std::vector<PfInterface> interfaces;
  std::vector<PfRequirement> requirements;
  SourceSpan span;

  bool operator==(const ProblemDiagram &) const = default;
};

[[nodiscard]] const char * to_string(DomainKind k) noexcept;

/// Zeroes every span so trees parsed from different texts compare by shape.
void strip_spans(SpecFile & f);
void strip_spans(std::vector<Requirement> & reqs);
void strip_spans(std::vector<ProblemDiagram> & diagrams);

}  // namespace ast
}  // namespace rsmlkit
