#pragma once

// Static checks over a resolved specification: completeness and consistency
// of guard sets by finite enumeration, and the data dependency graph.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsmlkit/diagnostic.hpp"
#include "rsmlkit/model.hpp"
#include "rsmlkit/table_logic.hpp"

namespace rsmlkit
{

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

struct GuardEntry
{
  const Condition * condition = nullptr;
  /// Two entries with equal descriptors do the same thing when they fire.
  std::string action;
  std::size_t index = 0;  // case or transition index inside its owner
  SourceSpan span;
};

struct GuardSet
{
  enum class Kind { assignment, state };
  Kind kind = Kind::assignment;
  std::size_t owner = 0;  // assignment index, or machine index
  std::size_t state = 0;  // Kind::state only
  std::string name;       // `Comp.var` or `Machine.State`
  std::vector<GuardEntry> entries;
  SourceSpan span;

  [[nodiscard]] bool has_else() const noexcept;
  [[nodiscard]] std::vector<const Condition *> conditions() const;
};

/// Assignment specifications and machine states, ordered by source position.
[[nodiscard]] std::vector<GuardSet> guard_sets(const Specification & spec);

/// Partial valuation, slot by slot, in the order the slots were enumerated.
using Witness = std::vector<std::pair<SlotId, Value>>;

struct ReferencedDomain
{
  std::vector<SlotId> slots;               // first-occurrence order
  std::vector<std::vector<Value>> values;  // domain of each slot
  std::uint64_t product = 1;               // saturates at UINT64_MAX
};

[[nodiscard]] ReferencedDomain referenced_domain(const Specification & spec, const GuardSet & g);

/// Raises Error(DomainTooLarge) when the domain exceeds `cap` valuations.
void require_within_cap(const Specification & spec, const GuardSet & g,
                        const ReferencedDomain & d, std::uint64_t cap);

/// Calls `f(valuation, witness)` for every valuation of `d` in lexicographic
/// order (first slot most significant). Slots outside `d` hold `base` values.
/// Stops early when `f` returns false.
template <typename F>
void for_each_valuation(const ReferencedDomain & d, Valuation base, F && f);

struct Completeness
{
  bool complete = true;
  bool enumerated = false;  // false when an `else` made enumeration unnecessary
  std::optional<Witness> witness;
};

struct Overlap
{
  std::size_t first = 0;   // entry positions inside the guard set
  std::size_t second = 0;
  bool conflict = false;   // false: both entries have the same action
  Witness witness;         // smallest valuation enabling both
};

struct Consistency
{
  std::vector<Overlap> overlaps;  // ordered by (first, second)

  [[nodiscard]] bool consistent() const noexcept;
};

[[nodiscard]] Completeness check_completeness(const Specification & spec, const GuardSet & g,
                                              std::uint64_t cap = default_enumeration_cap);
[[nodiscard]] Consistency check_consistency(const Specification & spec, const GuardSet & g,
                                            std::uint64_t cap = default_enumeration_cap);

/// Data dependencies between slots. `reads[v]` lists the slots whose
/// current-step value is needed to compute `v`. Machine slots are never read
/// within a step (state tests see the prior state), and a variable reading
/// itself sees its prior value, so neither produces an edge.
struct DependencyGraph
{
  std::vector<std::vector<SlotId>> reads;
  std::optional<std::vector<SlotId>> order;  // topological, when acyclic
  std::vector<SlotId> cycle;                 // shortest cycle otherwise

  [[nodiscard]] bool acyclic() const noexcept { return order.has_value(); }
};

[[nodiscard]] DependencyGraph build_dependency_graph(const Specification & spec);

/// Component-level graph: `reads[a]` lists components whose outputs `a` reads.
struct ComponentGraph
{
  std::vector<std::vector<std::size_t>> reads;
  std::optional<std::vector<std::size_t>> order;  // producers before consumers
  std::vector<std::size_t> cycle;
};

[[nodiscard]] ComponentGraph build_component_graph(const Specification & spec);

struct GuardSetReport
{
  std::string name;
  GuardSet::Kind kind = GuardSet::Kind::assignment;
  std::size_t entries = 0;
  std::uint64_t domain_size = 1;
  bool too_large = false;
  Completeness completeness;
  Consistency consistency;
};

struct AnalysisReport
{
  std::vector<GuardSetReport> guard_sets;
  DependencyGraph dependencies;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] std::size_t complete_count() const noexcept;
  [[nodiscard]] std::size_t consistent_count() const noexcept;
  /// "N guard sets: a complete, b consistent".
  [[nodiscard]] std::string summary() const;
};

/// Runs every check and turns the verdicts into diagnostics: InconsistentGuards
/// (error), IncompleteAssignment (warning), IncompleteTransitions (info),
/// AbsorbingState (info), OverlappingEquivalentCases (warning),
/// CyclicDependency (error), DomainTooLarge (error).
[[nodiscard]] AnalysisReport analyze(const Specification & spec,
                                     std::uint64_t cap = default_enumeration_cap);

[[nodiscard]] std::string format_witness(const Specification & spec, const Witness & w);

// ---- template implementation ----

template <typename F>
void for_each_valuation(const ReferencedDomain & d, Valuation base, F && f)
{
  const std::size_t n = d.slots.size();
  for (const auto & vals : d.values) {
    if (vals.empty()) return;
  }
  std::vector<std::size_t> digit(n, 0);
  Witness w(n);
  for (std::size_t i = 0; i < n; ++i) {
    base[d.slots[i]] = d.values[i][0];
    w[i] = {d.slots[i], d.values[i][0]};
  }
  for (;;) {
    if (!f(static_cast<const Valuation &>(base), static_cast<const Witness &>(w))) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < d.values[i].size()) break;
      digit[i] = 0;
      base[d.slots[i]] = d.values[i][0];
      w[i].second = d.values[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
    base[d.slots[i]] = d.values[i][digit[i]];
    w[i].second = d.values[i][digit[i]];
  }
}

}  // namespace rsmlkit
