#include "rsmlkit/report.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rsmlkit
{

using nlohmann::json;

namespace
{

json diag_json(const Diagnostic & d)
{
  json j = {{"severity", to_string(d.severity)}, {"code", d.code}, {"message", d.message}};
  if (d.span.valid()) {
    j["file"] = d.span.file;
    j["line"] = d.span.line;
    j["column"] = d.span.column;
  }
  return j;
}

json valuation_json(const Specification & spec, const Valuation & v)
{
  json j = json::object();
  for (SlotId s = 0; s < spec.slot_count() && s < v.size(); ++s) {
    j[spec.display_name(s)] = spec.format_value(s, v[s]);
  }
  return j;
}

json inputs_json(const Specification & spec, const InputAssignment & in)
{
  json j = json::object();
  for (const auto & [s, v] : in) j[spec.display_name(s)] = spec.format_value(s, v);
  return j;
}

json trace_obj(const Specification & spec, const Trace & t)
{
  json steps = json::array();
  for (const auto & st : t.steps) {
    steps.push_back({{"step", st.state.step},
                     {"inputs", inputs_json(spec, st.inputs)},
                     {"state", valuation_json(spec, st.state.values)}});
  }
  json violations = json::array();
  for (const auto & v : t.violations) {
    violations.push_back({{"invariant", spec.invariants[v.invariant].name}, {"step", v.step}});
  }
  return {{"specification", spec.name},
          {"initial", valuation_json(spec, t.initial.values)},
          {"steps", steps},
          {"violations", violations}};
}

std::string changed(const Specification & spec, const Valuation & before, const Valuation & after,
                    const InputAssignment & in)
{
  std::string out;
  for (SlotId s = 0; s < spec.slot_count(); ++s) {
    if (spec.slots[s].kind != Slot::Kind::variable || before[s] == after[s]) continue;
    const bool is_input = std::any_of(in.begin(), in.end(), [&](const auto & p) {
      return p.first == s;
    });
    if (is_input) continue;
    if (!out.empty()) out += ", ";
    out += spec.display_name(s) + "=" + spec.format_value(s, after[s]);
  }
  return out.empty() ? "-" : out;
}

std::string machines(const Specification & spec, const Valuation & v)
{
  std::string out;
  for (SlotId s = 0; s < spec.slot_count(); ++s) {
    if (spec.slots[s].kind != Slot::Kind::machine) continue;
    if (!out.empty()) out += ", ";
    out += spec.display_name(s) + "=" + spec.format_value(s, v[s]);
  }
  return out.empty() ? "-" : out;
}

std::string table(const std::vector<std::vector<std::string>> & rows)
{
  std::vector<std::size_t> width;
  for (const auto & r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream os;
  for (const auto & r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << line << '\n';
  }
  return os.str();
}

std::string trace_rows(const Specification & spec, const Trace & t, const std::string & indent)
{
  std::vector<std::vector<std::string>> rows{{indent + "step", "inputs", "changed", "machines"}};
  rows.push_back({indent + "0", "-", "-", machines(spec, t.initial.values)});
  const Valuation * prev = &t.initial.values;
  for (const auto & st : t.steps) {
    const std::string in = format_inputs(spec, st.inputs);
    rows.push_back({indent + std::to_string(st.state.step), in.empty() ? "-" : in,
                    changed(spec, *prev, st.state.values, st.inputs),
                    machines(spec, st.state.values)});
    prev = &st.state.values;
  }
  return table(rows);
}

}  // namespace

std::string diagnostics_json(const std::vector<Diagnostic> & diags)
{
  json j = json::array();
  for (const auto & d : diags) j.push_back(diag_json(d));
  return j.dump(2) + "\n";
}

std::string trace_text(const Specification & spec, const Trace & t)
{
  std::string out = trace_rows(spec, t, "");
  for (const auto & v : t.violations) {
    out += "violation: invariant " + spec.invariants[v.invariant].name + " at step " +
           std::to_string(v.step) + "\n";
  }
  return out;
}

std::string trace_json(const Specification & spec, const Trace & t)
{
  return trace_obj(spec, t).dump(2) + "\n";
}

std::string exploration_text(const Specification & spec, const ExplorationReport & r)
{
  std::ostringstream os;
  os << "reachable states: " << r.states << '\n'
     << "transitions: " << r.transitions << '\n'
     << "depth: " << r.depth << '\n';
  for (const auto & c : r.counterexamples) {
    os << "invariant " << spec.invariants[c.invariant].name
       << " violated; shortest counterexample has " << c.trace.steps.size() << " step(s):\n"
       << trace_rows(spec, c.trace, "  ");
    const Valuation & last = c.trace.steps.empty() ? c.trace.initial.values
                                                   : c.trace.steps.back().state.values;
    os << "  final state: " << format_state(spec, last) << '\n';
  }
  if (r.limit == ExplorationReport::Limit::states) os << "limit exceeded: state budget\n";
  if (r.limit == ExplorationReport::Limit::depth) os << "limit exceeded: depth bound\n";
  return os.str();
}

std::string exploration_json(const Specification & spec, const ExplorationReport & r)
{
  json ces = json::array();
  for (const auto & c : r.counterexamples) {
    ces.push_back({{"invariant", spec.invariants[c.invariant].name},
                   {"length", c.trace.steps.size()},
                   {"trace", trace_obj(spec, c.trace)}});
  }
  const char * limit = r.limit == ExplorationReport::Limit::states  ? "states"
                       : r.limit == ExplorationReport::Limit::depth ? "depth"
                                                                    : "none";
  json j = {{"specification", spec.name}, {"states", r.states},
            {"transitions", r.transitions}, {"depth", r.depth},
            {"limit", limit},             {"counterexamples", ces}};
  return j.dump(2) + "\n";
}

std::string analysis_json(const Specification & spec, const AnalysisReport & r)
{
  json sets = json::array();
  for (const auto & g : r.guard_sets) {
    json s = {{"name", g.name},
              {"kind", g.kind == GuardSet::Kind::assignment ? "assignment" : "state"},
              {"entries", g.entries},
              {"domain_size", g.domain_size},
              {"complete", g.completeness.complete},
              {"consistent", g.consistency.consistent()}};
    if (g.completeness.witness) s["incomplete_witness"] = format_witness(spec, *g.completeness.witness);
    json overlaps = json::array();
    for (const auto & o : g.consistency.overlaps) {
      overlaps.push_back({{"first", o.first},
                          {"second", o.second},
                          {"conflict", o.conflict},
                          {"witness", format_witness(spec, o.witness)}});
    }
    s["overlaps"] = overlaps;
    sets.push_back(s);
  }
  json deps = json::object();
  if (r.dependencies.order) {
    json order = json::array();
    for (SlotId s : *r.dependencies.order) order.push_back(spec.display_name(s));
    deps["order"] = order;
  } else {
    json cycle = json::array();
    for (SlotId s : r.dependencies.cycle) cycle.push_back(spec.display_name(s));
    deps["cycle"] = cycle;
  }
  json diags = json::array();
  for (const auto & d : r.diagnostics) diags.push_back(diag_json(d));
  json j = {{"specification", spec.name}, {"summary", r.summary()}, {"guard_sets", sets},
            {"dependencies", deps},       {"diagnostics", diags}};
  return j.dump(2) + "\n";
}

std::string matrix_json(const trace::Report & r, const trace::Graph & g)
{
  json rows = json::array();
  for (const auto & row : r.rows) {
    rows.push_back({{"requirement", row.requirement},
                    {"prose", row.prose},
                    {"pf_blocks", row.pf_blocks},
                    {"rsml", row.rsml},
                    {"eventb", row.eventb},
                    {"name_matches", row.name_matches}});
  }
  json edges = json::array();
  for (const auto & e : g.edges) {
    edges.push_back({{"kind", trace::to_string(e.kind)}, {"from", e.from}, {"to", e.to}});
  }
  json diags = json::array();
  for (const auto & d : g.diagnostics) diags.push_back(diag_json(d));
  for (const auto & d : r.diagnostics) diags.push_back(diag_json(d));
  json j = {{"rows", rows}, {"edges", edges}, {"diagnostics", diags}};
  return j.dump(2) + "\n";
}

}  // namespace rsmlkit
