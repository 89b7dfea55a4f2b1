#pragma once

// Random single-assignment specifications and a brute-force oracle for their
// completeness and consistency. The oracle has its own evaluator and
// enumerates every input valuation, not only the referenced ones.

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsmlkit/analysis.hpp"
#include "rsmlkit/table_logic.hpp"
#include "support.hpp"

namespace rsmlkit::test
{

struct GeneratedSpec
{
  std::string text;
};

// At most 4 inputs with domains of size 1..4, 1..4 cases of at most 4 rows and
// 4 columns, an optional trailing else.
inline GeneratedSpec random_guard_spec(std::mt19937 & rng)
{
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::ostringstream ts, cs;
  const int nvars = pick(1, 4);
  struct Var
  {
    std::string name;
    int size;
    int kind;  // 0 enum, 1 range, 2 bool
  };
  std::vector<Var> vars;
  for (int i = 0; i < nvars; ++i) {
    Var v{"v" + std::to_string(i), pick(1, 4), pick(0, 2)};
    if (v.kind == 2) v.size = 2;
    if (v.kind == 0) {
      ts << "type T_" << v.name << " = {";
      for (int k = 0; k < v.size; ++k) ts << (k ? ", " : " ") << "L" << i << "_" << k;
      ts << " }\n";
    } else if (v.kind == 1) {
      ts << "type T_" << v.name << " = int [0.." << v.size - 1 << "]\n";
    }
    vars.push_back(v);
  }
  ts << "type T_Out = { OUT0, OUT1, OUT2 }\n";

  auto literal = [&](const Var & v, int k) {
    if (v.kind == 0) return "L" + v.name.substr(1) + "_" + std::to_string(k);
    if (v.kind == 1) return std::to_string(k);
    return std::string(k ? "TRUE" : "FALSE");
  };
  auto predicate = [&]() {
    const Var & v = vars[pick(0, nvars - 1)];
    const int k = pick(0, v.size - 1);
    if (v.kind == 1) {
      static const char * ops[] = {"=", "!=", "<", "<=", ">", ">="};
      return v.name + " " + ops[pick(0, 5)] + " " + literal(v, k);
    }
    return v.name + (pick(0, 1) ? " = " : " != ") + literal(v, k);
  };

  cs << "component G {\n";
  for (const auto & v : vars) {
    cs << "  input " << v.name << " : " << (v.kind == 2 ? "bool" : "T_" + v.name) << "\n";
  }
  cs << "  output o : T_Out\n  assign o {\n";
  const int ncases = pick(1, 4);
  const bool with_else = ncases > 1 && pick(0, 2) == 0;
  for (int c = 0; c < ncases; ++c) {
    const std::string value = "OUT" + std::to_string(pick(0, 2));
    if (with_else && c == ncases - 1) {
      cs << "    when else then " << value << "\n";
      continue;
    }
    const int rows = pick(1, 4), cols = pick(1, 4);
    std::vector<std::vector<char>> cells(rows, std::vector<char>(cols));
    const bool constant_true = rows == 1 && cols == 1 && pick(0, 19) == 0;
    for (int col = 0; col < cols; ++col) {
      bool any = false;
      for (int r = 0; r < rows; ++r) {
        const int x = pick(0, 2);
        cells[r][col] = x == 0 ? 'T' : x == 1 ? 'F' : '.';
        any = any || cells[r][col] != '.';
      }
      if (constant_true) cells[0][0] = '.';
      else if (!any) cells[pick(0, rows - 1)][col] = pick(0, 1) ? 'T' : 'F';
    }
    cs << "    when table {\n";
    for (int r = 0; r < rows; ++r) {
      cs << "      " << predicate() << " :";
      for (int col = 0; col < cols; ++col) cs << ' ' << cells[r][col];
      cs << "\n";
    }
    cs << "    } then " << value << "\n";
  }
  cs << "  }\n}\n";
  return {"specification g\n" + ts.str() + cs.str()};
}

inline Value oracle_operand(const Operand & o, const Valuation & v)
{
  return o.kind == Operand::Kind::slot ? v[o.slot] : o.value;
}

inline bool oracle_predicate(const Predicate & p, const Valuation & v)
{
  const Value l = oracle_operand(p.lhs, v), r = oracle_operand(p.rhs, v);
  switch (p.op) {
    case RelOp::eq:
      return l == r;
    case RelOp::ne:
      return l != r;
    case RelOp::lt:
      return l < r;
    case RelOp::le:
      return l <= r;
    case RelOp::gt:
      return l > r;
    case RelOp::ge:
      return l >= r;
  }
  return false;
}

inline bool oracle_table(const Table & t, const Valuation & v)
{
  const std::size_t cols = t.cells.empty() ? 0 : t.cells[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    bool all = true;
    for (std::size_t r = 0; r < t.rows.size() && all; ++r) {
      const Cell cell = t.cells[r][c];
      if (cell == Cell::t) all = oracle_predicate(t.rows[r], v);
      if (cell == Cell::f) all = !oracle_predicate(t.rows[r], v);
    }
    if (all) return true;
  }
  return false;
}

inline std::vector<bool> oracle_conditions(const AssignmentSpec & a, const Valuation & v)
{
  std::vector<bool> out;
  bool any = false;
  for (const auto & c : a.cases) {
    const bool b = !c.condition.is_else() && oracle_table(c.condition.table, v);
    any = any || b;
    out.push_back(b);
  }
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    if (a.cases[i].condition.is_else()) out[i] = !any;
  }
  return out;
}

struct OracleVerdict
{
  bool complete = true;
  std::set<std::pair<std::size_t, std::size_t>> overlaps;
  std::set<std::pair<std::size_t, std::size_t>> conflicts;
};

/// Enumerates the full product of every variable slot of the specification.
inline OracleVerdict oracle_verdict(const Specification & s, const AssignmentSpec & a)
{
  OracleVerdict out;
  Valuation v = initial_valuation(s);
  std::vector<std::vector<Value>> doms;
  std::vector<SlotId> slots;
  for (SlotId sl = 0; sl < s.slot_count(); ++sl) {
    slots.push_back(sl);
    doms.push_back(s.slot_domain(sl));
  }
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i) v[slots[i]] = doms[i][idx[i]];
    const auto truth = oracle_conditions(a, v);
    if (std::none_of(truth.begin(), truth.end(), [](bool b) { return b; })) out.complete = false;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      for (std::size_t j = i + 1; j < truth.size(); ++j) {
        if (!truth[i] || !truth[j]) continue;
        out.overlaps.insert({i, j});
        if (a.cases[i].value != a.cases[j].value) out.conflicts.insert({i, j});
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == doms[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

inline Valuation apply_witness(const Specification & s, const Witness & w)
{
  Valuation v = initial_valuation(s);
  for (const auto & [slot, value] : w) v[slot] = value;
  return v;
}

struct OracleComparison
{
  int checked = 0;
  int verdict_mismatches = 0;
  int witness_failures = 0;
  std::string first_failure;
};

/// Runs `n` random guard sets through the checker and the oracle.
inline OracleComparison compare_with_oracle(int n, unsigned seed)
{
  std::mt19937 rng(seed);
  OracleComparison r;
  auto fail = [&](int & counter, const std::string & text, const std::string & why) {
    ++counter;
    if (r.first_failure.empty()) r.first_failure = why + "\n" + text;
  };
  for (int i = 0; i < n; ++i) {
    const GeneratedSpec g = random_guard_spec(rng);
    const Specification s = spec_from(g.text, "<random>");
    const GuardSet set = guard_sets(s).at(0);
    const AssignmentSpec & a = s.assigns.at(0);
    const Completeness comp = check_completeness(s, set);
    const Consistency cons = check_consistency(s, set);
    const OracleVerdict o = oracle_verdict(s, a);
    ++r.checked;

    std::set<std::pair<std::size_t, std::size_t>> pairs, conflicts;
    for (const auto & ov : cons.overlaps) {
      pairs.insert({ov.first, ov.second});
      if (ov.conflict) conflicts.insert({ov.first, ov.second});
    }
    if (comp.complete != o.complete || pairs != o.overlaps || conflicts != o.conflicts ||
        cons.consistent() != o.conflicts.empty()) {
      fail(r.verdict_mismatches, g.text, "verdict mismatch");
      continue;
    }

    if (!comp.complete) {
      const auto truth = oracle_conditions(a, apply_witness(s, comp.witness.value_or(Witness{})));
      if (!comp.witness || std::any_of(truth.begin(), truth.end(), [](bool b) { return b; })) {
        fail(r.witness_failures, g.text, "completeness witness does not replay");
      }
    }
    for (const auto & ov : cons.overlaps) {
      const auto truth = oracle_conditions(a, apply_witness(s, ov.witness));
      const bool differ = a.cases[ov.first].value != a.cases[ov.second].value;
      if (!truth[ov.first] || !truth[ov.second] || differ != ov.conflict) {
        fail(r.witness_failures, g.text, "overlap witness does not replay");
      }
    }
  }
  return r;
}

}  // namespace rsmlkit::test
