#pragma once

// Text and JSON renderings of diagnostics, traces, exploration results and
// the traceability matrix.

#include <string>
#include <vector>

#include "rsmlkit/analysis.hpp"
#include "rsmlkit/diagnostic.hpp"
#include "rsmlkit/simulator.hpp"
#include "rsmlkit/trace.hpp"

namespace rsmlkit
{

/// Array of {severity, code, message, file, line, column}.
[[nodiscard]] std::string diagnostics_json(const std::vector<Diagnostic> & diags);

/// One line per step: step number, inputs set, variables that changed, and
/// the machine states after the step.
[[nodiscard]] std::string trace_text(const Specification & spec, const Trace & t);
[[nodiscard]] std::string trace_json(const Specification & spec, const Trace & t);

[[nodiscard]] std::string exploration_text(const Specification & spec,
                                           const ExplorationReport & r);
[[nodiscard]] std::string exploration_json(const Specification & spec,
                                           const ExplorationReport & r);

[[nodiscard]] std::string analysis_json(const Specification & spec, const AnalysisReport & r);

[[nodiscard]] std::string matrix_json(const trace::Report & r, const trace::Graph & g);

}  // namespace rsmlkit
