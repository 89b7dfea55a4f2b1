#pragma once

// Event-B contexts and machines: data model, generation from a resolved
// specification, and textual rendering.

#include <optional>
#include <string>
#include <vector>

#include "rsmlkit/model.hpp"

namespace rsmlkit::eventb
{

struct Pred
{
  enum class Kind {
    relation,     // lhs op rhs
    member,       // lhs ∈ set
    in_range,     // lhs ∈ lo‥hi
    partition,    // partition(lhs, {p1}, ..., {pn})
    negation,
    conjunction,
    disjunction,
    truth,
    falsity,
  };
  Kind kind = Kind::truth;
  std::string lhs;
  RelOp op = RelOp::eq;
  std::string rhs;
  std::string set;
  Value lo = 0;
  Value hi = 0;
  std::vector<std::string> parts;
  std::vector<Pred> args;

  [[nodiscard]] static Pred relation(std::string lhs, RelOp op, std::string rhs);
  [[nodiscard]] static Pred member(std::string lhs, std::string set);
  [[nodiscard]] static Pred in_range(std::string lhs, Value lo, Value hi);
  [[nodiscard]] static Pred partition(std::string set, std::vector<std::string> parts);
  [[nodiscard]] static Pred negation(Pred p);
  [[nodiscard]] static Pred conjunction(std::vector<Pred> args);
  [[nodiscard]] static Pred disjunction(std::vector<Pred> args);

  bool operator==(const Pred &) const = default;
};

/// Logical negation; relations flip their operator, double negation cancels.
[[nodiscard]] Pred negate(const Pred & p);

struct Labeled
{
  std::string label;
  Pred pred;
  std::vector<std::string> comments;  // rendered as `// ...` above the label
  std::string source;                 // element id of the origin; not rendered

  bool operator==(const Labeled &) const = default;
};

struct Action
{
  enum class Kind { assign, choose_set, choose_range };
  std::string label;
  std::string var;
  Kind kind = Kind::assign;
  std::string value;  // assign: the new value; choose_set: the set name
  Value lo = 0;
  Value hi = 0;

  bool operator==(const Action &) const = default;
};

struct Event
{
  std::string name;
  std::optional<std::string> refines;
  std::vector<std::string> comments;
  std::vector<Labeled> guards;
  std::vector<Action> actions;
  std::string source;  // element id of the origin; not rendered

  bool operator==(const Event &) const = default;
};

struct Machine
{
  std::string name;
  std::optional<std::string> refines;
  std::string sees;
  std::vector<std::string> variables;
  std::vector<Labeled> invariants;
  std::vector<Event> events;  // INITIALISATION first

  [[nodiscard]] const Event * find_event(const std::string & name) const;
  bool operator==(const Machine &) const = default;
};

struct CarrierSet
{
  std::string name;
  std::vector<std::string> members;

  bool operator==(const CarrierSet &) const = default;
};

struct Context
{
  std::string name;
  std::vector<CarrierSet> sets;
  std::vector<std::string> constants;
  std::vector<Labeled> axioms;

  bool operator==(const Context &) const = default;
};

/// Clears the fields that have no textual form, so a generated unit can be
/// compared with one read back from text.
void strip_sources(Machine & m);
void strip_sources(Context & c);

// ---- element ids shared with the trace graph ----

[[nodiscard]] std::string variable_id(const Specification & spec, VarId v);
[[nodiscard]] std::string case_id(const Specification & spec, std::size_t assign, std::size_t k);
[[nodiscard]] std::string transition_id(const Specification & spec, std::size_t machine,
                                        std::size_t t);
[[nodiscard]] std::string invariant_id(const Specification & spec, std::size_t i);

// ---- generation ----

struct GenOptions
{
  bool closed = false;  // omit environment events
};

[[nodiscard]] std::string context_name(const Specification & spec);
[[nodiscard]] std::string state_variable(const StateMachine & m);
[[nodiscard]] std::string state_set(const StateMachine & m);

[[nodiscard]] Context gen_context(const Specification & spec);

/// Disjunction of column conjunctions.
[[nodiscard]] Pred translate_table(const Specification & spec, const Table & t);

/// Guards for one condition. `siblings` holds the case list or transition
/// set of `c`. Pure conjunctions are split into one guard per conjunct.
[[nodiscard]] std::vector<Pred> translate_condition(const Specification & spec,
                                                    const Condition & c,
                                                    const std::vector<const Condition *> & siblings);

/// Raises Error(NameCollision) when two generated identifiers coincide.
[[nodiscard]] Machine gen_flat(const Specification & spec, const GenOptions & opts = {});

/// Raises Error(NoOutputs) for a specification without output variables and
/// Error(CyclicDependency) when components depend on each other cyclically.
[[nodiscard]] std::vector<Machine> gen_chain(const Specification & spec,
                                             const GenOptions & opts = {});

// ---- rendering ----

struct RenderOptions
{
  bool ascii = false;
};

[[nodiscard]] std::string render(const Pred & p, const RenderOptions & opts = {});
[[nodiscard]] std::string render(const Context & c, const RenderOptions & opts = {});
[[nodiscard]] std::string render(const Machine & m, const RenderOptions & opts = {});

}  // namespace rsmlkit::eventb
