#pragma once

// Shared helpers for the test binaries.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rsmlkit/model.hpp"
#include "rsmlkit/parser.hpp"

namespace rsmlkit::test
{

inline std::string corpus(const std::string & rel)
{
  return std::string(RSMLKIT_CORPUS_DIR) + "/" + rel;
}

inline std::string slurp(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string describe(const std::vector<Diagnostic> & diags)
{
  std::string out;
  for (const auto & d : diags) out += format_diagnostic(d) + "\n";
  return out;
}

/// Parses and resolves; throws with the diagnostics on any error.
inline Specification spec_from(const std::string & text, const std::string & file = "<test>")
{
  auto p = parse_spec(text, file);
  if (!p.value || has_errors(p.diagnostics)) throw std::runtime_error(describe(p.diagnostics));
  auto r = resolve(*p.value, file);
  if (!r.value || has_errors(r.diagnostics)) throw std::runtime_error(describe(r.diagnostics));
  return std::move(*r.value);
}

inline Specification corpus_spec(const std::string & rel)
{
  return spec_from(slurp(corpus(rel)), corpus(rel));
}

inline std::vector<std::string> resolve_codes(const std::string & text)
{
  std::vector<std::string> codes;
  auto p = parse_spec(text, "<test>");
  for (const auto & d : p.diagnostics) codes.push_back(d.code);
  if (!p.value || has_errors(p.diagnostics)) return codes;
  auto r = resolve(*p.value, "<test>");
  for (const auto & d : r.diagnostics) codes.push_back(d.code);
  return codes;
}

}  // namespace rsmlkit::test
