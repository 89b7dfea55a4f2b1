#include "rsmlkit/diagnostic.hpp"

#include <algorithm>
#include <sstream>

namespace rsmlkit
{

const char * to_string(Severity s) noexcept
{
  switch (s) {
    case Severity::error:
      return "error";
    case Severity::warning:
      return "warning";
    case Severity::info:
      return "info";
  }
  return "error";
}

Diagnostic make_error(std::string code, std::string message, SourceSpan span)
{
  return {Severity::error, std::move(code), std::move(message), std::move(span)};
}

Diagnostic make_warning(std::string code, std::string message, SourceSpan span)
{
  return {Severity::warning, std::move(code), std::move(message), std::move(span)};
}

Diagnostic make_info(std::string code, std::string message, SourceSpan span)
{
  return {Severity::info, std::move(code), std::move(message), std::move(span)};
}

std::string format_diagnostic(const Diagnostic & d, bool color)
{
  std::ostringstream os;
  if (!d.span.file.empty()) {
    os << d.span.file;
    if (d.span.valid()) os << ':' << d.span.line << ':' << d.span.column;
    os << ": ";
  } else if (d.span.valid()) {
    os << d.span.line << ':' << d.span.column << ": ";
  }
  const char * sev = to_string(d.severity);
  if (color) {
    const char * esc = d.severity == Severity::error     ? "\x1b[31m"
                       : d.severity == Severity::warning ? "\x1b[33m"
                                                         : "\x1b[36m";
    os << esc << sev << "\x1b[0m";
  } else {
    os << sev;
  }
  os << '[' << d.code << "]: " << d.message;
  return os.str();
}

bool has_errors(const std::vector<Diagnostic> & diags) noexcept
{
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic & d) {
    return d.severity == Severity::error;
  });
}

Error::Error(Diagnostic d) : std::runtime_error(format_diagnostic(d)), diag_(std::move(d)) {}

Error::Error(std::string code, std::string message, SourceSpan span)
    : Error(make_error(std::move(code), std::move(message), std::move(span)))
{
}

}  // namespace rsmlkit
