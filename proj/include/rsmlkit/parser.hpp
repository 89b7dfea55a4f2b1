#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsmlkit/ast.hpp"
#include "rsmlkit/diagnostic.hpp"

namespace rsmlkit
{

/// Parses a `.rsml` specification. Parsing stops at the first syntax error;
/// that error names the earliest offending token and the tokens that would
/// have been accepted there.
[[nodiscard]] Parsed<ast::SpecFile> parse_spec(std::string_view source,
                                               std::string file = "<input>");

/// Parses a `.req` file: `requirement REQ-001 "prose" [phase NAME]`* .
[[nodiscard]] Parsed<std::vector<ast::Requirement>> parse_requirements(
  std::string_view source, std::string file = "<input>");

/// Parses a `.pf` file holding one or more `problem` blocks. A problem
/// without any requirement block yields a warning.
[[nodiscard]] Parsed<std::vector<ast::ProblemDiagram>> parse_pf(std::string_view source,
                                                                std::string file = "<input>");

// Canonical pretty-printers; re-parsing their output yields the same tree
// (modulo spans).
[[nodiscard]] std::string print_spec(const ast::SpecFile & f);
[[nodiscard]] std::string print_requirements(const std::vector<ast::Requirement> & reqs);
[[nodiscard]] std::string print_pf(const std::vector<ast::ProblemDiagram> & diagrams);

}  // namespace rsmlkit
