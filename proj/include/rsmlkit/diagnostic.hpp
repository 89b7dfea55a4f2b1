#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsmlkit
{

/// Location of a construct in a source file. Lines and columns are 1-based;
/// a zero line means "no location".
struct SourceSpan
{
  std::string file;
  int line = 0;
  int column = 0;
  int length = 0;

  [[nodiscard]] bool valid() const noexcept { return line > 0; }
  bool operator==(const SourceSpan &) const = default;
};

enum class Severity { error, warning, info };

[[nodiscard]] const char * to_string(Severity s) noexcept;

struct Diagnostic
{
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceSpan span;

  bool operator==(const Diagnostic &) const = default;
};

[[nodiscard]] Diagnostic make_error(std::string code, std::string message, SourceSpan span = {});
[[nodiscard]] Diagnostic make_warning(std::string code, std::string message, SourceSpan span = {});
[[nodiscard]] Diagnostic make_info(std::string code, std::string message, SourceSpan span = {});

/// Renders `file:line:col: severity[code]: message`. Spans without a location
/// print only the file name (or nothing when that is empty too).
[[nodiscard]] std::string format_diagnostic(const Diagnostic & d, bool color = false);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic> & diags) noexcept;

/// Exception used by operations whose contract is "result or one error".
class Error : public std::runtime_error
{
public:
  explicit Error(Diagnostic d);
  Error(std::string code, std::string message, SourceSpan span = {});

  [[nodiscard]] const Diagnostic & diagnostic() const noexcept { return diag_; }
  [[nodiscard]] const std::string & code() const noexcept { return diag_.code; }

private:
  Diagnostic diag_;
};

/// Outcome of a front-end pass: a value when no error was reported, plus every
/// diagnostic the pass produced (warnings may accompany a value).
template <typename T>
struct Parsed
{
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return value.has_value() && !has_errors(diagnostics); }
};

}  // namespace rsmlkit
