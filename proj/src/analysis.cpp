#include "rsmlkit/analysis.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

namespace rsmlkit
{

// ---- guard sets ---------------------------------------------------------------

bool GuardSet::has_else() const noexcept
{
  return std::any_of(entries.begin(), entries.end(),
                     [](const GuardEntry & e) { return e.condition->is_else(); });
}

std::vector<const Condition *> GuardSet::conditions() const
{
  std::vector<const Condition *> out;
  out.reserve(entries.size());
  for (const auto & e : entries) out.push_back(e.condition);
  return out;
}

std::vector<GuardSet> guard_sets(const Specification & spec)
{
  std::vector<GuardSet> out;
  for (std::size_t a = 0; a < spec.assigns.size(); ++a) {
    const AssignmentSpec & as = spec.assigns[a];
    GuardSet g;
    g.kind = GuardSet::Kind::assignment;
    g.owner = a;
    g.name = spec.qualified_name(as.target);
    g.span = as.span;
    for (std::size_t k = 0; k < as.cases.size(); ++k) {
      g.entries.push_back({&as.cases[k].condition, "value:" + std::to_string(as.cases[k].value), k,
                           as.cases[k].span});
    }
    out.push_back(std::move(g));
  }
  for (std::size_t m = 0; m < spec.machines.size(); ++m) {
    const StateMachine & sm = spec.machines[m];
    for (std::size_t s = 0; s < sm.states.size(); ++s) {
      GuardSet g;
      g.kind = GuardSet::Kind::state;
      g.owner = m;
      g.state = s;
      g.name = sm.name + "." + sm.states[s];
      g.span = s < sm.state_spans.size() ? sm.state_spans[s] : sm.span;
      for (const std::size_t t : sm.outgoing(s)) {
        const Transition & tr = sm.transitions[t];
        g.entries.push_back({&tr.guard, "goto:" + std::to_string(tr.to), t, tr.span});
      }
      out.push_back(std::move(g));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const GuardSet & a, const GuardSet & b) {
    return std::tie(a.span.file, a.span.line, a.span.column) <
           std::tie(b.span.file, b.span.line, b.span.column);
  });
  return out;
}

ReferencedDomain referenced_domain(const Specification & spec, const GuardSet & g)
{
  ReferencedDomain d;
  for (const auto & e : g.entries) {
    if (!e.condition->is_else()) collect_slots(e.condition->table, d.slots);
  }
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  for (const SlotId s : d.slots) {
    d.values.push_back(spec.slot_domain(s));
    const std::uint64_t n = d.values.back().size();
    if (n == 0) {
      d.product = 0;
    } else if (d.product > max / n) {
      d.product = max;
    } else {
      d.product *= n;
    }
  }
  return d;
}

void require_within_cap(const Specification & spec, const GuardSet & g,
                        const ReferencedDomain & d, std::uint64_t cap)
{
  (void)spec;
  if (d.product <= cap) return;
  std::ostringstream msg;
  msg << "guard set '" << g.name << "' ranges over " << d.product
      << " valuations, above the enumeration cap of " << cap;
  throw Error("DomainTooLarge", msg.str(), g.span);
}

// ---- completeness / consistency -------------------------------------------------

bool Consistency::consistent() const noexcept
{
  return std::none_of(overlaps.begin(), overlaps.end(),
                      [](const Overlap & o) { return o.conflict; });
}

Completeness check_completeness(const Specification & spec, const GuardSet & g,
                                std::uint64_t cap)
{
  Completeness out;
  if (g.has_else()) return out;
  if (g.entries.empty()) return out;  // absorbing state, reported separately
  const ReferencedDomain d = referenced_domain(spec, g);
  require_within_cap(spec, g, d, cap);
  out.enumerated = true;
  for_each_valuation(d, initial_valuation(spec), [&](const Valuation & v, const Witness & w) {
    for (const auto & e : g.entries) {
      if (eval_table(e.condition->table, v)) return true;
    }
    out.complete = false;
    out.witness = w;
    return false;
  });
  return out;
}

Consistency check_consistency(const Specification & spec, const GuardSet & g, std::uint64_t cap)
{
  Consistency out;
  std::vector<std::size_t> tables;
  for (std::size_t i = 0; i < g.entries.size(); ++i) {
    if (!g.entries[i].condition->is_else()) tables.push_back(i);
  }
  if (tables.size() < 2) return out;
  const ReferencedDomain d = referenced_domain(spec, g);
  require_within_cap(spec, g, d, cap);

  std::set<std::pair<std::size_t, std::size_t>> seen;
  const std::size_t pairs = tables.size() * (tables.size() - 1) / 2;
  std::vector<bool> truth(tables.size());
  for_each_valuation(d, initial_valuation(spec), [&](const Valuation & v, const Witness & w) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      truth[i] = eval_table(g.entries[tables[i]].condition->table, v);
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (!truth[i]) continue;
      for (std::size_t j = i + 1; j < tables.size(); ++j) {
        if (!truth[j] || !seen.insert({i, j}).second) continue;
        const auto & a = g.entries[tables[i]];
        const auto & b = g.entries[tables[j]];
        out.overlaps.push_back({tables[i], tables[j], a.action != b.action, w});
      }
    }
    return seen.size() < pairs;
  });
  std::sort(out.overlaps.begin(), out.overlaps.end(), [](const Overlap & a, const Overlap & b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  return out;
}

// ---- dependency graphs ----------------------------------------------------------

namespace
{

struct TopoResult
{
  std::optional<std::vector<std::size_t>> order;
  std::vector<std::size_t> cycle;
};

/// Kahn's algorithm where a node becomes ready once everything it reads is
/// placed; ties go to the lowest index.
TopoResult topo_sort(const std::vector<std::vector<std::size_t>> & reads)
{
  const std::size_t n = reads.size();
  std::vector<std::vector<std::size_t>> readers(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = reads[v].size();
    for (const std::size_t u : reads[v]) readers[u].push_back(v);
  }
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.insert(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (const std::size_t w : readers[v]) {
      if (--pending[w] == 0) ready.insert(w);
    }
  }
  TopoResult out;
  if (order.size() == n) {
    out.order = std::move(order);
    return out;
  }

  // Shortest cycle through the unplaced nodes, following read edges.
  std::vector<bool> placed(n, false);
  for (const std::size_t v : order) placed[v] = true;
  for (std::size_t s = 0; s < n; ++s) {
    if (placed[s]) continue;
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> frontier{s};
    std::vector<bool> visited(n, false);
    bool found = false;
    std::size_t last = n;
    while (!frontier.empty() && !found) {
      std::vector<std::size_t> next;
      for (const std::size_t v : frontier) {
        for (const std::size_t u : reads[v]) {
          if (placed[u]) continue;
          if (u == s) {
            found = true;
            last = v;
            break;
          }
          if (visited[u]) continue;
          visited[u] = true;
          parent[u] = v;
          next.push_back(u);
        }
        if (found) break;
      }
      frontier = std::move(next);
    }
    if (!found) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t v = last; v != s; v = parent[v]) cycle.push_back(v);
    cycle.push_back(s);
    std::reverse(cycle.begin(), cycle.end());
    if (out.cycle.empty() || cycle.size() < out.cycle.size()) out.cycle = std::move(cycle);
  }
  return out;
}

void add_unique(std::vector<std::size_t> & out, std::size_t v)
{
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::vector<SlotId> condition_slots(const Condition & c)
{
  std::vector<SlotId> out;
  if (!c.is_else()) collect_slots(c.table, out);
  return out;
}

}  // namespace

DependencyGraph build_dependency_graph(const Specification & spec)
{
  DependencyGraph g;
  g.reads.assign(spec.slot_count(), {});
  auto add_reads = [&](SlotId target, const Condition & c) {
    for (const SlotId s : condition_slots(c)) {
      if (s == target || spec.slots[s].kind == Slot::Kind::machine) continue;
      add_unique(g.reads[target], s);
    }
  };
  for (const auto & as : spec.assigns) {
    const SlotId target = spec.variables[as.target].slot;
    for (const auto & k : as.cases) add_reads(target, k.condition);
  }
  for (const auto & sm : spec.machines) {
    for (const auto & t : sm.transitions) add_reads(sm.slot, t.guard);
  }
  TopoResult r = topo_sort(g.reads);
  g.order = std::move(r.order);
  g.cycle = std::move(r.cycle);
  return g;
}

ComponentGraph build_component_graph(const Specification & spec)
{
  ComponentGraph g;
  g.reads.assign(spec.components.size(), {});
  auto note = [&](std::size_t comp, SlotId s) {
    if (spec.slots[s].kind != Slot::Kind::variable) return;
    const std::size_t owner = spec.variables[spec.slot_variable(s)].component;
    if (owner != comp) add_unique(g.reads[comp], owner);
  };
  for (const auto & v : spec.variables) {
    if (v.producer) note(v.component, v.slot);
  }
  for (const auto & as : spec.assigns) {
    for (const auto & k : as.cases) {
      for (const SlotId s : condition_slots(k.condition)) note(as.component, s);
    }
  }
  for (const auto & sm : spec.machines) {
    for (const auto & t : sm.transitions) {
      for (const SlotId s : condition_slots(t.guard)) note(sm.component, s);
    }
  }
  TopoResult r = topo_sort(g.reads);
  g.order = std::move(r.order);
  g.cycle = std::move(r.cycle);
  return g;
}

// ---- report ---------------------------------------------------------------------

std::size_t AnalysisReport::complete_count() const noexcept
{
  return static_cast<std::size_t>(
    std::count_if(guard_sets.begin(), guard_sets.end(), [](const GuardSetReport & r) {
      return !r.too_large && r.completeness.complete;
    }));
}

std::size_t AnalysisReport::consistent_count() const noexcept
{
  return static_cast<std::size_t>(
    std::count_if(guard_sets.begin(), guard_sets.end(), [](const GuardSetReport & r) {
      return !r.too_large && r.consistency.consistent();
    }));
}

std::string AnalysisReport::summary() const
{
  std::ostringstream os;
  os << guard_sets.size() << (guard_sets.size() == 1 ? " guard set: " : " guard sets: ")
     << complete_count() << " complete, " << consistent_count() << " consistent";
  return os.str();
}

std::string format_witness(const Specification & spec, const Witness & w)
{
  if (w.empty()) return "any valuation";
  std::string out;
  for (const auto & [slot, value] : w) {
    if (!out.empty()) out += ", ";
    out += spec.display_name(slot) + "=" + spec.format_value(slot, value);
  }
  return out;
}

namespace
{

std::string entry_label(const Specification & spec, const GuardSet & g, const GuardEntry & e)
{
  if (g.kind == GuardSet::Kind::assignment) return "case " + std::to_string(e.index + 1);
  const StateMachine & sm = spec.machines[g.owner];
  return "transition to " + sm.states[sm.transitions[e.index].to];
}

}  // namespace

AnalysisReport analyze(const Specification & spec, std::uint64_t cap)
{
  AnalysisReport report;
  for (const GuardSet & g : guard_sets(spec)) {
    GuardSetReport r;
    r.name = g.name;
    r.kind = g.kind;
    r.entries = g.entries.size();
    const ReferencedDomain d = referenced_domain(spec, g);
    r.domain_size = d.product;
    try {
      r.completeness = check_completeness(spec, g, cap);
      r.consistency = check_consistency(spec, g, cap);
    } catch (const Error & e) {
      r.too_large = true;
      report.diagnostics.push_back(e.diagnostic());
      report.guard_sets.push_back(std::move(r));
      continue;
    }

    if (g.kind == GuardSet::Kind::state && g.entries.empty()) {
      report.diagnostics.push_back(
        make_info("AbsorbingState",
                  "'" + g.name + "' is complete (no transitions; the state is absorbing)",
                  g.span));
    } else if (!r.completeness.complete) {
      const std::string at = format_witness(spec, *r.completeness.witness);
      if (g.kind == GuardSet::Kind::assignment) {
        report.diagnostics.push_back(make_warning(
          "IncompleteAssignment",
          "no case of '" + g.name + "' holds at " + at + "; the previous value is kept", g.span));
      } else {
        report.diagnostics.push_back(make_info(
          "IncompleteTransitions",
          "no transition out of '" + g.name + "' is enabled at " + at + "; the machine stays",
          g.span));
      }
    }
    for (const Overlap & o : r.consistency.overlaps) {
      const GuardEntry & a = g.entries[o.first];
      const GuardEntry & b = g.entries[o.second];
      const std::string what = entry_label(spec, g, a) + " and " + entry_label(spec, g, b) +
                               " of '" + g.name + "' both hold at " +
                               format_witness(spec, o.witness);
      if (o.conflict) {
        report.diagnostics.push_back(make_error("InconsistentGuards", what, b.span));
      } else {
        report.diagnostics.push_back(
          make_warning("OverlappingEquivalentCases", what + " with the same action", b.span));
      }
    }
    report.guard_sets.push_back(std::move(r));
  }

  report.dependencies = build_dependency_graph(spec);
  if (!report.dependencies.acyclic()) {
    std::string path;
    for (const SlotId s : report.dependencies.cycle) path += spec.slot_name(s) + " -> ";
    path += spec.slot_name(report.dependencies.cycle.front());
    const SlotId head = report.dependencies.cycle.front();
    SourceSpan span;
    if (spec.slots[head].kind == Slot::Kind::variable) {
      const VarId v = spec.slot_variable(head);
      const auto a = spec.assignment_for(v);
      span = a ? spec.assigns[*a].span : spec.variables[v].span;
    }
    report.diagnostics.push_back(make_error("CyclicDependency", "cyclic dependency: " + path, span));
  }
  return report;
}

}  // namespace rsmlkit
