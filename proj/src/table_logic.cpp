#include "rsmlkit/table_logic.hpp"

#include <algorithm>

namespace rsmlkit
{
namespace
{

Value operand_value(const Operand & o, const Valuation & v)
{
  return o.kind == Operand::Kind::slot ? v[o.slot] : o.value;
}

void add_unique(std::vector<SlotId> & out, SlotId s)
{
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

}  // namespace

Valuation initial_valuation(const Specification & spec)
{
  Valuation v(spec.slot_count(), 0);
  for (SlotId s = 0; s < spec.slot_count(); ++s) {
    const Slot & slot = spec.slots[s];
    if (slot.kind == Slot::Kind::variable) {
      v[s] = spec.variables[slot.index].init;
    } else {
      v[s] = static_cast<Value>(spec.machines[slot.index].initial);
    }
  }
  return v;
}

bool eval_relation(Value lhs, RelOp op, Value rhs) noexcept
{
  switch (op) {
    case RelOp::eq:
      return lhs == rhs;
    case RelOp::ne:
      return lhs != rhs;
    case RelOp::lt:
      return lhs < rhs;
    case RelOp::le:
      return lhs <= rhs;
    case RelOp::gt:
      return lhs > rhs;
    case RelOp::ge:
      return lhs >= rhs;
  }
  return false;
}

bool eval_predicate(const Predicate & p, const Valuation & v)
{
  return eval_relation(operand_value(p.lhs, v), p.op, operand_value(p.rhs, v));
}

bool eval_column(const Table & t, std::size_t col, const Valuation & v)
{
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const Cell c = t.cells[r][col];
    if (c == Cell::dot) continue;
    if (eval_predicate(t.rows[r], v) != (c == Cell::t)) return false;
  }
  return true;
}

bool eval_table(const Table & t, const Valuation & v)
{
  for (std::size_t c = 0; c < t.columns(); ++c) {
    if (eval_column(t, c, v)) return true;
  }
  return false;
}

bool eval_condition(const Condition & c, const std::vector<const Condition *> & siblings,
                    const Valuation & v)
{
  if (!c.is_else()) return eval_table(c.table, v);
  for (const Condition * s : siblings) {
    if (!s->is_else() && eval_table(s->table, v)) return false;
  }
  return true;
}

std::vector<bool> eval_conditions(const std::vector<const Condition *> & conds,
                                  const Valuation & v)
{
  std::vector<bool> out(conds.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (conds[i]->is_else()) continue;
    out[i] = eval_table(conds[i]->table, v);
    any = any || out[i];
  }
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (conds[i]->is_else()) out[i] = !any;
  }
  return out;
}

void collect_slots(const Table & t, std::vector<SlotId> & out)
{
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto & cells = t.cells[r];
    if (std::all_of(cells.begin(), cells.end(), [](Cell c) { return c == Cell::dot; })) continue;
    const Predicate & p = t.rows[r];
    if (p.lhs.kind == Operand::Kind::slot) add_unique(out, p.lhs.slot);
    if (p.rhs.kind == Operand::Kind::slot) add_unique(out, p.rhs.slot);
  }
}

}  // namespace rsmlkit
