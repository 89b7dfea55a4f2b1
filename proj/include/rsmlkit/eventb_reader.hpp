#pragma once

// Reads rendered Event-B text back (UTF-8 or ASCII spellings) and executes
// machines over finite carrier sets.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsmlkit/diagnostic.hpp"
#include "rsmlkit/eventb.hpp"

namespace rsmlkit::eventb
{

/// Raises Error(EventBSyntax) with the position of the offending token.
[[nodiscard]] Context read_context(std::string_view text, const std::string & file = "<input>");
[[nodiscard]] Machine read_machine(std::string_view text, const std::string & file = "<input>");
[[nodiscard]] Pred read_predicate(std::string_view text);

/// Variable name to value spelling.
using State = std::map<std::string, std::string>;

class Interpreter
{
public:
  Interpreter(Context ctx, Machine m);

  [[nodiscard]] const Machine & machine() const noexcept { return machine_; }

  /// Members of BOOL, a carrier set, or nullopt.
  [[nodiscard]] std::optional<std::vector<std::string>> members(const std::string & set) const;

  [[nodiscard]] bool eval(const Pred & p, const State & s) const;

  /// Executes INITIALISATION; raises Error(Nondeterministic) for `:∈`.
  [[nodiscard]] State initial() const;

  /// Names of the enabled events (INITIALISATION excluded), in machine order.
  [[nodiscard]] std::vector<std::string> enabled(const State & s) const;

  /// Applies the deterministic actions of an event; `:∈` actions take their
  /// value from `choices`, and raise Error(Nondeterministic) when absent.
  [[nodiscard]] State apply(const std::string & event, const State & s,
                            const State & choices = {}) const;

  /// Labels of invariants false in `s`.
  [[nodiscard]] std::vector<std::string> violated(const State & s) const;

private:
  [[nodiscard]] std::string value_of(const std::string & term, const State & s) const;

  Context context_;
  Machine machine_;
};

}  // namespace rsmlkit::eventb
