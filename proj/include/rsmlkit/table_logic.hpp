#pragma once

#include <cstddef>
#include <vector>

#include "rsmlkit/model.hpp"

namespace rsmlkit
{

/// Total valuation indexed by slot: one value per variable slot followed by
/// one state index per state machine.
using Valuation = std::vector<Value>;

/// Every slot at its initial value (declared init, domain default, initial
/// state).
[[nodiscard]] Valuation initial_valuation(const Specification & spec);

[[nodiscard]] bool eval_relation(Value lhs, RelOp op, Value rhs) noexcept;
[[nodiscard]] bool eval_predicate(const Predicate & p, const Valuation & v);
[[nodiscard]] bool eval_column(const Table & t, std::size_t col, const Valuation & v);
[[nodiscard]] bool eval_table(const Table & t, const Valuation & v);

/// `siblings` is the whole case list or transition set `c` belongs to; an
/// `else` is true exactly when none of the table conditions among them is.
[[nodiscard]] bool eval_condition(const Condition & c,
                                  const std::vector<const Condition *> & siblings,
                                  const Valuation & v);

/// Truth of every condition of a guard set, in order.
[[nodiscard]] std::vector<bool> eval_conditions(const std::vector<const Condition *> & conds,
                                                const Valuation & v);

/// Slots read by a table, in first-occurrence order; all-dot rows read nothing.
void collect_slots(const Table & t, std::vector<SlotId> & out);

}  // namespace rsmlkit
