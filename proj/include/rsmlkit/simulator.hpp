#pragma once

// Synchronous step semantics, scripted runs and breadth-first exploration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsmlkit/analysis.hpp"
#include "rsmlkit/model.hpp"
#include "rsmlkit/table_logic.hpp"

namespace rsmlkit
{

struct SystemState
{
  Valuation values;
  std::size_t step = 0;

  bool operator==(const SystemState &) const = default;
};

/// Values for top-level inputs, applied in order.
using InputAssignment = std::vector<std::pair<SlotId, Value>>;

/// What fired during one step: the case index per assignment spec and the
/// transition index per machine (nullopt when nothing fired).
struct Firing
{
  std::vector<std::optional<std::size_t>> cases;
  std::vector<std::optional<std::size_t>> transitions;

  bool operator==(const Firing &) const = default;
};

struct StepOutcome
{
  SystemState state;
  Firing fired;
  std::vector<std::size_t> violated;  // invariant indices, in declaration order
};

/// Precomputed evaluation order; build once per specification.
class Simulator
{
public:
  /// Raises Error(CyclicDependency) when no evaluation order exists.
  explicit Simulator(const Specification & spec);

  [[nodiscard]] const Specification & spec() const noexcept { return *spec_; }

  [[nodiscard]] SystemState initial_state() const;
  [[nodiscard]] std::vector<std::size_t> violated_invariants(const Valuation & v) const;

  /// Raises Error(NondeterministicFiring) when two enabled entries of one
  /// guard set disagree on the action, and Error(NotAnInput) for inputs that
  /// are not top-level inputs.
  [[nodiscard]] StepOutcome step(const SystemState & cur, const InputAssignment & inputs) const;

  /// Top-level input slots in declaration order.
  [[nodiscard]] const std::vector<SlotId> & input_slots() const noexcept { return inputs_; }

private:
  const Specification * spec_;
  std::vector<SlotId> order_;
  std::vector<SlotId> inputs_;
  std::vector<std::optional<std::size_t>> assign_of_slot_;
  std::vector<std::vector<const Condition *>> case_conds_;
  std::vector<std::vector<std::vector<std::size_t>>> outgoing_;  // [machine][state]
  std::vector<std::vector<std::vector<const Condition *>>> transition_conds_;
};

[[nodiscard]] SystemState initial_state(const Specification & spec);
[[nodiscard]] StepOutcome step(const Specification & spec, const SystemState & cur,
                               const InputAssignment & inputs);

struct TraceStep
{
  InputAssignment inputs;
  SystemState state;
  Firing fired;
};

struct Violation
{
  std::size_t invariant = 0;
  std::size_t step = 0;
};

struct Trace
{
  SystemState initial;
  std::vector<TraceStep> steps;
  std::vector<Violation> violations;
};

/// One row of a script: `name=value` pairs. Parsing reports
/// ScriptSyntax / NotAnInput / UnknownName / TypeMismatch.
[[nodiscard]] Parsed<std::vector<InputAssignment>> parse_script(const Specification & spec,
                                                                std::string_view text,
                                                                const std::string & file);

/// Folds step over the script. Stops after the first step with a violation
/// unless `keep_going`; a violation in the initial state is recorded at step 0.
[[nodiscard]] Trace run_script(const Simulator & sim, const std::vector<InputAssignment> & script,
                               bool keep_going = false);

struct ExploreLimits
{
  std::uint64_t max_states = 1'000'000;
  std::optional<std::size_t> max_depth;
};

struct Counterexample
{
  std::size_t invariant = 0;
  Trace trace;  // shortest path from the initial state to a violating state
};

struct ExplorationReport
{
  std::uint64_t states = 0;
  std::uint64_t transitions = 0;  // successor computations
  std::size_t depth = 0;          // largest BFS depth of a discovered state
  std::vector<Counterexample> counterexamples;  // by invariant index
  enum class Limit { none, states, depth };
  Limit limit = Limit::none;

  [[nodiscard]] bool violated() const noexcept { return !counterexamples.empty(); }
};

/// Every combination of top-level input values, first input most significant.
[[nodiscard]] std::vector<InputAssignment> input_combinations(const Simulator & sim);

[[nodiscard]] ExplorationReport explore(const Simulator & sim, const ExploreLimits & limits = {});

/// `name=value` pairs of every variable and machine for display.
[[nodiscard]] std::string format_state(const Specification & spec, const Valuation & v);
[[nodiscard]] std::string format_inputs(const Specification & spec, const InputAssignment & in);

}  // namespace rsmlkit
