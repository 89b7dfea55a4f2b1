#include "rsmlkit/trace.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

namespace rsmlkit::trace
{

// ---- problem frames checks ------------------------------------------------------

std::vector<Diagnostic> check_pf(const ast::ProblemDiagram & d)
{
  std::vector<Diagnostic> out;
  if (d.machines.empty()) {
    out.push_back(make_error("MissingMachine", "problem '" + d.name + "' declares no machine",
                             d.span));
  }
  for (std::size_t i = 1; i < d.machines.size(); ++i) {
    out.push_back(make_error("MultipleMachines",
                             "problem '" + d.name + "' declares a second machine '" +
                               d.machines[i] + "'; exactly one is allowed",
                             i < d.machine_spans.size() ? d.machine_spans[i] : d.span));
  }

  std::set<std::string> machines(d.machines.begin(), d.machines.end());
  std::set<std::string> domains;
  for (const auto & dom : d.domains) {
    if (machines.count(dom.name) || !domains.insert(dom.name).second) {
      out.push_back(make_error("DuplicateName", "domain '" + dom.name + "' is declared twice",
                               dom.span));
    }
  }
  auto known = [&](const std::string & n) { return machines.count(n) || domains.count(n); };

  for (const auto & i : d.interfaces) {
    for (const std::string * end : {&i.a, &i.b}) {
      if (!known(*end)) {
        out.push_back(make_error("UnknownDomain", "interface endpoint '" + *end +
                                                    "' is neither the machine nor a domain",
                                 i.span));
      }
    }
  }

  auto on_interface = [&](const std::string & domain, const std::string & phenomenon) {
    for (const auto & i : d.interfaces) {
      if (i.a != domain && i.b != domain) continue;
      if (std::find(i.phenomena.begin(), i.phenomena.end(), phenomenon) != i.phenomena.end()) {
        return true;
      }
    }
    return false;
  };

  for (const auto & r : d.requirements) {
    for (const auto * list : {&r.constrains, &r.refs}) {
      for (const auto & ref : *list) {
        if (machines.count(ref.domain)) {
          out.push_back(make_error("MachineInRequirement",
                                   "requirement '" + r.name + "' refers to the machine '" +
                                     ref.domain + "'; refer to problem domains instead",
                                   ref.span));
          continue;
        }
        if (!domains.count(ref.domain)) {
          out.push_back(make_error("UnknownDomain", "unknown domain '" + ref.domain + "'",
                                   ref.span));
          continue;
        }
        for (const auto & p : ref.phenomena) {
          if (!on_interface(ref.domain, p)) {
            out.push_back(make_error("UnknownPhenomenon",
                                     "phenomenon '" + p + "' is not on any interface of '" +
                                       ref.domain + "'",
                                     ref.span));
          }
        }
      }
    }
  }
  if (d.requirements.empty()) {
    out.push_back(make_warning("NoRequirement",
                               "sub-problem '" + d.name + "' declares no requirement", d.span));
  }
  return out;
}

// ---- graph ----------------------------------------------------------------------

const char * to_string(NodeKind k) noexcept
{
  switch (k) {
    case NodeKind::requirement:
      return "requirement";
    case NodeKind::pf_block:
      return "pf_block";
    case NodeKind::phenomenon:
      return "phenomenon";
    case NodeKind::rsml_case:
      return "case";
    case NodeKind::rsml_transition:
      return "transition";
    case NodeKind::rsml_invariant:
      return "invariant";
    case NodeKind::rsml_variable:
      return "variable";
    case NodeKind::eventb_event:
      return "event";
    case NodeKind::eventb_invariant:
      return "eventb_invariant";
  }
  return "node";
}

const char * to_string(EdgeKind k) noexcept
{
  switch (k) {
    case EdgeKind::declared:
      return "declared";
    case EdgeKind::name_match:
      return "name_match";
    case EdgeKind::provenance:
      return "provenance";
  }
  return "edge";
}

bool Edge::operator<(const Edge & o) const
{
  return std::make_tuple(static_cast<int>(kind), from, to) <
         std::make_tuple(static_cast<int>(o.kind), o.from, o.to);
}

const Node * Graph::find(const std::string & id) const
{
  const auto it = index.find(id);
  return it == index.end() ? nullptr : &nodes[it->second];
}

namespace
{

class Builder
{
public:
  explicit Builder(const LinkInput & in) : in_(in) {}

  Graph run()
  {
    for (const auto & r : in_.requirements) {
      add({"req:" + r.id, NodeKind::requirement, r.id, r.prose, {}, r.span});
    }
    std::set<std::string> phenomena;
    for (const auto & d : in_.diagrams) {
      for (const auto & i : d.interfaces) phenomena.insert(i.phenomena.begin(), i.phenomena.end());
      for (const auto & r : d.requirements) {
        Node n{"pf:" + d.name + "/" + r.name, NodeKind::pf_block, d.name + "/" + r.name, r.prose,
               {}, r.span};
        for (const auto * list : {&r.constrains, &r.refs}) {
          for (const auto & ref : *list) {
            for (const auto & p : ref.phenomena) {
              phenomena.insert(p);
              if (std::find(n.phenomena.begin(), n.phenomena.end(), p) == n.phenomena.end()) {
                n.phenomena.push_back(p);
              }
            }
          }
        }
        const std::string id = n.id;
        add(std::move(n));
        for (const auto & t : r.trace) declared(id, t.id, t.span);
      }
    }
    for (const auto & p : phenomena) add({"phen:" + p, NodeKind::phenomenon, p, {}, {}, {}});

    if (in_.spec) rsml(*in_.spec, phenomena);
    for (const auto & m : in_.machines) eventb(m);

    std::sort(g_.edges.begin(), g_.edges.end());
    g_.edges.erase(std::unique(g_.edges.begin(), g_.edges.end()), g_.edges.end());
    return std::move(g_);
  }

private:
  void add(Node n)
  {
    if (g_.index.count(n.id)) return;
    g_.index[n.id] = g_.nodes.size();
    g_.nodes.push_back(std::move(n));
  }

  void declared(const std::string & from, const std::string & req, const SourceSpan & span)
  {
    if (!g_.index.count("req:" + req)) {
      g_.diagnostics.push_back(make_error(
        "UnknownRequirementId", "trace tag " + req + " names no declared requirement", span));
      return;
    }
    g_.edges.push_back({from, "req:" + req, EdgeKind::declared});
  }

  void rsml(const Specification & spec, const std::set<std::string> & phenomena)
  {
    for (VarId v = 0; v < spec.variables.size(); ++v) {
      const Variable & var = spec.variables[v];
      const std::string id = eventb::variable_id(spec, v);
      add({id, NodeKind::rsml_variable, spec.qualified_name(v), {}, {}, var.span});
      if (phenomena.count(var.name)) {
        g_.edges.push_back({"phen:" + var.name, id, EdgeKind::name_match});
      }
    }
    for (std::size_t a = 0; a < spec.assigns.size(); ++a) {
      const auto & as = spec.assigns[a];
      for (std::size_t k = 0; k < as.cases.size(); ++k) {
        const std::string id = eventb::case_id(spec, a, k);
        add({id, NodeKind::rsml_case, id.substr(5), {}, {}, as.cases[k].span});
        for (const auto & t : as.cases[k].trace) declared(id, t, as.cases[k].span);
      }
    }
    for (std::size_t m = 0; m < spec.machines.size(); ++m) {
      const auto & sm = spec.machines[m];
      for (std::size_t t = 0; t < sm.transitions.size(); ++t) {
        const std::string id = eventb::transition_id(spec, m, t);
        add({id, NodeKind::rsml_transition, id.substr(11), {}, {}, sm.transitions[t].span});
        for (const auto & tag : sm.transitions[t].trace) declared(id, tag, sm.transitions[t].span);
      }
    }
    for (std::size_t i = 0; i < spec.invariants.size(); ++i) {
      const std::string id = eventb::invariant_id(spec, i);
      add({id, NodeKind::rsml_invariant, spec.invariants[i].name, {}, {}, spec.invariants[i].span});
      for (const auto & t : spec.invariants[i].trace) declared(id, t, spec.invariants[i].span);
    }
  }

  void eventb(const eventb::Machine & m)
  {
    for (const auto & e : m.events) {
      const std::string id = "event:" + m.name + "/" + e.name;
      add({id, NodeKind::eventb_event, m.name + "/" + e.name, {}, {}, {}});
      if (!e.source.empty() && g_.index.count(e.source)) {
        g_.edges.push_back({e.source, id, EdgeKind::provenance});
      }
    }
    for (const auto & i : m.invariants) {
      const std::string id = "evinv:" + m.name + "/" + i.label;
      add({id, NodeKind::eventb_invariant, m.name + "/@" + i.label, {}, {}, {}});
      if (!i.source.empty() && g_.index.count(i.source)) {
        g_.edges.push_back({i.source, id, EdgeKind::provenance});
      }
    }
  }

  const LinkInput & in_;
  Graph g_;
};

void add_unique(std::vector<std::string> & v, const std::string & s)
{
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

bool is_rsml(NodeKind k)
{
  return k == NodeKind::rsml_case || k == NodeKind::rsml_transition ||
         k == NodeKind::rsml_invariant || k == NodeKind::rsml_variable;
}

}  // namespace

Graph link(const LinkInput & in)
{
  return Builder(in).run();
}

Report trace_report(const Graph & g, bool require_trace)
{
  Report r;
  std::vector<const Node *> reqs;
  for (const auto & n : g.nodes) {
    if (n.kind == NodeKind::requirement) reqs.push_back(&n);
  }
  std::sort(reqs.begin(), reqs.end(),
            [](const Node * a, const Node * b) { return a->name < b->name; });

  for (const Node * req : reqs) {
    MatrixRow row;
    row.requirement = req->name;
    row.prose = req->prose;
    for (const auto & e : g.edges) {
      if (e.kind != EdgeKind::declared || e.to != req->id) continue;
      const Node * src = g.find(e.from);
      if (!src) continue;
      if (src->kind == NodeKind::pf_block) add_unique(row.pf_blocks, src->id);
      if (is_rsml(src->kind)) add_unique(row.rsml, src->id);
    }
    for (const auto & e : g.edges) {
      if (e.kind != EdgeKind::provenance) continue;
      if (std::find(row.rsml.begin(), row.rsml.end(), e.from) != row.rsml.end()) {
        add_unique(row.eventb, e.to);
      }
    }
    for (const auto & block : row.pf_blocks) {
      for (const auto & p : g.find(block)->phenomena) {
        for (const auto & e : g.edges) {
          if (e.kind == EdgeKind::name_match && e.from == "phen:" + p) {
            add_unique(row.name_matches, e.to);
          }
        }
      }
    }
    if (row.rsml.empty()) {
      r.diagnostics.push_back(make_warning(
        "OrphanRequirement", "requirement " + req->name + " is not traced by any RSML element",
        req->span));
    }
    r.rows.push_back(std::move(row));
  }

  if (require_trace) {
    for (const auto & n : g.nodes) {
      if (n.kind != NodeKind::rsml_case && n.kind != NodeKind::rsml_transition) continue;
      const bool traced = std::any_of(g.edges.begin(), g.edges.end(), [&](const Edge & e) {
        return e.kind == EdgeKind::declared && e.from == n.id;
      });
      if (!traced) {
        r.diagnostics.push_back(make_warning(
          "UntracedElement", std::string(to_string(n.kind)) + " " + n.name +
                               " is not traced to any requirement",
          n.span));
      }
    }
  }
  return r;
}

std::string render_text(const Report & r)
{
  std::ostringstream os;
  std::size_t width = std::string("requirement").size();
  for (const auto & row : r.rows) width = std::max(width, row.requirement.size());
  os << std::left << std::setw(static_cast<int>(width)) << "requirement" << std::right
     << "  pf  rsml  event-b  names\n";
  for (const auto & row : r.rows) {
    os << std::left << std::setw(static_cast<int>(width)) << row.requirement << std::right
       << std::setw(4) << row.pf_blocks.size() << std::setw(6) << row.rsml.size() << std::setw(9)
       << row.eventb.size() << std::setw(7) << row.name_matches.size() << '\n';
  }
  auto list = [&](const char * head, const std::vector<std::string> & items) {
    if (items.empty()) return;
    os << "  " << head;
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : " ") << items[i];
    os << '\n';
  };
  for (const auto & row : r.rows) {
    os << '\n' << row.requirement;
    if (!row.prose.empty()) os << "  \"" << row.prose << '"';
    os << '\n';
    list("pf:     ", row.pf_blocks);
    list("rsml:   ", row.rsml);
    list("event-b:", row.eventb);
    list("names:  ", row.name_matches);
  }
  os << "\nnote: recombination and prioritisation of sub-problems are not analysed\n";
  return os.str();
}

}  // namespace rsmlkit::trace
