#pragma once

// Problem Frames checks and the requirement traceability graph.

#include <map>
#include <string>
#include <vector>

#include "rsmlkit/ast.hpp"
#include "rsmlkit/diagnostic.hpp"
#include "rsmlkit/eventb.hpp"
#include "rsmlkit/model.hpp"

namespace rsmlkit::trace
{

/// MissingMachine, MultipleMachines, UnknownDomain, MachineInRequirement,
/// UnknownPhenomenon (errors) and NoRequirement (warning).
[[nodiscard]] std::vector<Diagnostic> check_pf(const ast::ProblemDiagram & d);

enum class NodeKind {
  requirement,
  pf_block,
  phenomenon,
  rsml_case,
  rsml_transition,
  rsml_invariant,
  rsml_variable,
  eventb_event,
  eventb_invariant,
};

[[nodiscard]] const char * to_string(NodeKind k) noexcept;

struct Node
{
  std::string id;
  NodeKind kind = NodeKind::requirement;
  std::string name;                     // display name
  std::string prose;                    // requirements and PF blocks
  std::vector<std::string> phenomena;   // PF blocks: constrained and referenced
  SourceSpan span;
};

enum class EdgeKind { declared, name_match, provenance };

[[nodiscard]] const char * to_string(EdgeKind k) noexcept;

/// declared: element -> requirement; name_match: phenomenon -> variable;
/// provenance: RSML element -> Event-B element.
struct Edge
{
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::declared;

  bool operator==(const Edge &) const = default;
  bool operator<(const Edge & o) const;
};

struct Graph
{
  std::vector<Node> nodes;
  std::vector<Edge> edges;  // sorted, duplicate-free
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] const Node * find(const std::string & id) const;

  std::map<std::string, std::size_t> index;
};

struct LinkInput
{
  std::vector<ast::Requirement> requirements;
  std::vector<ast::ProblemDiagram> diagrams;
  const Specification * spec = nullptr;
  std::vector<eventb::Machine> machines;
};

/// Builds the graph; unknown ids in trace tags yield UnknownRequirementId.
[[nodiscard]] Graph link(const LinkInput & in);

struct MatrixRow
{
  std::string requirement;
  std::string prose;
  std::vector<std::string> pf_blocks;
  std::vector<std::string> rsml;
  std::vector<std::string> eventb;
  std::vector<std::string> name_matches;
};

struct Report
{
  std::vector<MatrixRow> rows;  // by requirement id
  std::vector<Diagnostic> diagnostics;
};

/// OrphanRequirement warnings always; UntracedElement warnings for cases and
/// transitions without a requirement only when `require_trace` is set.
[[nodiscard]] Report trace_report(const Graph & g, bool require_trace = false);

[[nodiscard]] std::string render_text(const Report & r);

}  // namespace rsmlkit::trace
