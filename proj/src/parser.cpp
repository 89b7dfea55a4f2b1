#include "rsmlkit/parser.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"

namespace rsmlkit
{
namespace
{

using detail::Token;
using detail::TokenKind;

struct ParseFailure
{
  Diagnostic diag;
};

constexpr std::array<std::string_view, 22> k_spec_keywords = {
  "specification", "type", "int", "component", "input", "output", "internal", "init",
  "assign", "when", "then", "else", "table", "in", "statemachine", "initial",
  "state", "goto", "invariant", "trace", "T", "F"};

constexpr std::array<std::string_view, 9> k_pf_keywords = {
  "problem", "machine", "domain", "kind", "interface", "requirement", "constrains", "refs",
  "trace"};

std::string join_expected(const std::vector<std::string> & what)
{
  if (what.size() == 1) return what.front();
  std::string s = "one of ";
  for (std::size_t i = 0; i < what.size(); ++i) {
    if (i > 0) s += ", ";
    s += what[i];
  }
  return s;
}

std::string where(const SourceSpan & s)
{
  return std::to_string(s.line) + ":" + std::to_string(s.column);
}

class ParserBase
{
public:
  ParserBase(std::string_view source, std::string file, bool spec_keywords)
      : toks_(detail::tokenize(source, file)), file_(std::move(file)), spec_(spec_keywords)
  {
  }

protected:
  const Token & cur(std::size_t la = 0) const
  {
    const std::size_t i = idx_ + la;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  bool at(TokenKind k) const { return cur().kind == k; }

  bool at_kw(std::string_view kw, std::size_t la = 0) const
  {
    return cur(la).kind == TokenKind::ident && cur(la).text == kw;
  }

  const Token & advance()
  {
    const Token & t = cur();
    if (t.kind != TokenKind::eof) ++idx_;
    return t;
  }

  bool reserved(std::string_view word) const
  {
    if (spec_) {
      return std::find(k_spec_keywords.begin(), k_spec_keywords.end(), word) !=
             k_spec_keywords.end();
    }
    return std::find(k_pf_keywords.begin(), k_pf_keywords.end(), word) != k_pf_keywords.end();
  }

  [[noreturn]] void fail(const Token & t, std::string code, std::string message) const
  {
    throw ParseFailure{make_error(std::move(code), std::move(message), t.span)};
  }

  [[noreturn]] void expected(std::vector<std::string> what) const
  {
    fail(cur(), "syntax", "expected " + join_expected(what) + ", found " + detail::quote(cur()));
  }

  const Token & expect(TokenKind k)
  {
    if (!at(k)) expected({detail::describe(k)});
    return advance();
  }

  const Token & expect_kw(std::string_view kw)
  {
    if (!at_kw(kw)) expected({"'" + std::string(kw) + "'"});
    return advance();
  }

  const Token & expect_name(std::string_view role)
  {
    if (at(TokenKind::ident) && reserved(cur().text)) {
      fail(cur(), "syntax",
           "expected " + std::string(role) + ", found reserved keyword '" + cur().text + "'");
    }
    if (!at(TokenKind::ident)) expected({std::string(role)});
    return advance();
  }

  /// True while the block opened by `open` has more items; consumes the
  /// closing brace when reached.
  bool block_continues(const Token & open, std::string_view what)
  {
    if (at(TokenKind::rbrace)) {
      advance();
      return false;
    }
    if (at(TokenKind::eof)) {
      throw ParseFailure{make_error("Unterminated",
                                    "unterminated " + std::string(what) + ": '{' opened at " +
                                      where(open.span) + " is never closed",
                                    open.span)};
    }
    return true;
  }

  std::vector<ast::TraceRef> opt_trace()
  {
    std::vector<ast::TraceRef> out;
    if (!at_kw("trace")) return out;
    advance();
    do {
      const Token & t = expect(TokenKind::req_id);
      out.push_back({t.text, t.span});
    } while (at(TokenKind::comma) && (advance(), true));
    return out;
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  std::string file_;
  bool spec_;
  std::vector<Diagnostic> diags_;
};

// ---------------------------------------------------------------------------
// .rsml

class SpecParser : public ParserBase
{
public:
  SpecParser(std::string_view source, std::string file)
      : ParserBase(source, std::move(file), true)
  {
  }

  Parsed<ast::SpecFile> run()
  {
    Parsed<ast::SpecFile> out;
    try {
      out.value = file();
    } catch (const ParseFailure & f) {
      out.diagnostics.push_back(f.diag);
    }
    return out;
  }

private:
  ast::SpecFile file()
  {
    ast::SpecFile f;
    f.span = expect_kw("specification").span;
    f.name = expect_name("specification name").text;
    while (!at(TokenKind::eof)) {
      if (at_kw("type")) {
        f.types.push_back(typedef_());
      } else if (at_kw("component")) {
        f.components.push_back(component());
      } else if (at_kw("invariant")) {
        f.invariants.push_back(invariant());
      } else {
        expected({"'type'", "'component'", "'invariant'", "end of file"});
      }
    }
    return f;
  }

  ast::TypeDef typedef_()
  {
    ast::TypeDef t;
    t.span = advance().span;
    t.name = expect_name("type name").text;
    if (!(at(TokenKind::relop) && cur().op == RelOp::eq)) expected({"'='"});
    advance();
    if (at(TokenKind::lbrace)) {
      advance();
      t.is_enum = true;
      do {
        const Token & lit = expect_name("enumeration literal");
        t.literals.push_back(lit.text);
        t.literal_spans.push_back(lit.span);
      } while (at(TokenKind::comma) && (advance(), true));
      expect(TokenKind::rbrace);
    } else if (at_kw("int")) {
      advance();
      t.is_enum = false;
      expect(TokenKind::lbracket);
      t.lo = expect(TokenKind::integer).number;
      expect(TokenKind::dotdot);
      t.hi = expect(TokenKind::integer).number;
      expect(TokenKind::rbracket);
    } else {
      expected({"'{'", "'int'"});
    }
    return t;
  }

  ast::Component component()
  {
    ast::Component c;
    c.span = advance().span;
    c.name = expect_name("component name").text;
    const Token open = expect(TokenKind::lbrace);
    while (block_continues(open, "component block")) {
      if (at_kw("input") || at_kw("output") || at_kw("internal")) {
        c.variables.push_back(vardecl());
      } else if (at_kw("assign")) {
        c.assigns.push_back(assign());
      } else if (at_kw("statemachine")) {
        c.machines.push_back(statemachine());
      } else {
        expected({"'input'", "'output'", "'internal'", "'assign'", "'statemachine'", "'}'"});
      }
    }
    return c;
  }

  ast::VarDecl vardecl()
  {
    ast::VarDecl v;
    const Token & dir = advance();
    v.span = dir.span;
    v.direction = dir.text == "input"    ? Direction::input
                  : dir.text == "output" ? Direction::output
                                         : Direction::internal;
    const Token & name = expect_name("variable name");
    v.name = name.text;
    v.span = name.span;
    expect(TokenKind::colon);
    v.type = expect_name("type name").text;
    if (at_kw("init")) {
      advance();
      v.init = literal();
    }
    return v;
  }

  ast::Literal literal()
  {
    ast::Literal l;
    if (at(TokenKind::integer)) {
      const Token & t = advance();
      l.kind = ast::Operand::Kind::integer;
      l.number = t.number;
      l.span = t.span;
      return l;
    }
    if (at(TokenKind::ident) && !reserved(cur().text)) {
      const Token & t = advance();
      l.kind = ast::Operand::Kind::name;
      l.name = t.text;
      l.span = t.span;
      return l;
    }
    expected({"literal"});
  }

  void check_else_usage(const std::vector<const ast::Condition *> & conds, const Token & owner,
                        std::string_view what)
  {
    const ast::Condition * first_else = nullptr;
    int elses = 0;
    for (const ast::Condition * c : conds) {
      if (!c->is_else) continue;
      if (++elses == 2) {
        throw ParseFailure{make_error("ElseMisuse",
                                      "more than one 'else' in " + std::string(what), c->span)};
      }
      first_else = c;
    }
    if (first_else != nullptr && conds.size() == 1) {
      throw ParseFailure{make_error("ElseMisuse",
                                    "'else' in " + std::string(what) +
                                      " needs at least one table sibling",
                                    first_else->span)};
    }
    (void)owner;
  }

  ast::Assign assign()
  {
    ast::Assign a;
    const Token kw = advance();
    const Token & target = expect_name("assignment target");
    a.target = target.text;
    a.span = target.span;
    const Token open = expect(TokenKind::lbrace);
    while (block_continues(open, "assign block")) {
      if (!at_kw("when")) expected({"'when'", "'}'"});
      a.cases.push_back(case_());
    }
    if (a.cases.empty()) fail(kw, "syntax", "assign block for '" + a.target + "' has no cases");
    std::vector<const ast::Condition *> conds;
    for (const auto & c : a.cases) conds.push_back(&c.condition);
    check_else_usage(conds, kw, "assign block for '" + a.target + "'");
    return a;
  }

  ast::Case case_()
  {
    ast::Case c;
    c.span = advance().span;  // when
    c.condition = condition();
    expect_kw("then");
    c.value = literal();
    c.trace = opt_trace();
    return c;
  }

  ast::Condition condition()
  {
    ast::Condition c;
    c.span = cur().span;
    if (at_kw("else")) {
      advance();
      c.is_else = true;
      return c;
    }
    if (!at_kw("table")) expected({"'table'", "'else'"});
    c.table = table();
    return c;
  }

  ast::Table table()
  {
    ast::Table t;
    const Token kw = advance();
    t.span = kw.span;
    const Token open = expect(TokenKind::lbrace);
    if (at(TokenKind::rbrace)) fail(kw, "EmptyTable", "empty table");
    std::vector<SourceSpan> row_spans;
    while (block_continues(open, "table")) {
      row_spans.push_back(cur().span);
      t.rows.push_back(predicate());
      expect(TokenKind::colon);
      std::vector<Cell> cells;
      for (;;) {
        if (at_kw("T")) {
          cells.push_back(Cell::t);
        } else if (at_kw("F")) {
          cells.push_back(Cell::f);
        } else if (at(TokenKind::dot)) {
          cells.push_back(Cell::dot);
        } else {
          break;
        }
        advance();
      }
      if (cells.empty()) expected({"'T'", "'F'", "'.'"});
      t.cells.push_back(std::move(cells));
    }
    const std::size_t width = t.cells.front().size();
    for (std::size_t r = 1; r < t.cells.size(); ++r) {
      if (t.cells[r].size() != width) {
        throw ParseFailure{make_error(
          "RaggedTable",
          "ragged table: row 1 has " + std::to_string(width) + " cells, row " +
            std::to_string(r + 1) + " has " + std::to_string(t.cells[r].size()),
          row_spans[r])};
      }
    }
    if (width > 1) {
      for (std::size_t col = 0; col < width; ++col) {
        const bool all_dot = std::all_of(t.cells.begin(), t.cells.end(),
                                         [&](const auto & row) { return row[col] == Cell::dot; });
        if (all_dot) {
          throw ParseFailure{make_error(
            "AllDotColumn",
            "table column " + std::to_string(col + 1) +
              " has only don't-care cells; only a single-column table may be constantly true",
            kw.span)};
        }
      }
    }
    return t;
  }

  ast::Operand operand()
  {
    ast::Operand o;
    o.span = cur().span;
    if (at(TokenKind::integer)) {
      o.kind = ast::Operand::Kind::integer;
      o.number = advance().number;
      return o;
    }
    o.kind = ast::Operand::Kind::name;
    if (!at(TokenKind::ident) || reserved(cur().text)) expected({"operand"});
    o.name = advance().text;
    if (at(TokenKind::dot) && cur(1).kind == TokenKind::ident && !reserved(cur(1).text)) {
      advance();
      o.name += "." + advance().text;
    }
    o.span.length = static_cast<int>(o.name.size());
    return o;
  }

  ast::Predicate predicate()
  {
    ast::Predicate p;
    p.span = cur().span;
    if (at_kw("in")) {
      advance();
      p.state_test = true;
      expect(TokenKind::lparen);
      p.machine = expect_name("state machine name").text;
      expect(TokenKind::comma);
      p.state = expect_name("state name").text;
      expect(TokenKind::rparen);
      return p;
    }
    p.lhs = operand();
    if (!at(TokenKind::relop)) expected({"relational operator"});
    p.op = advance().op;
    p.rhs = operand();
    return p;
  }

  ast::StateMachine statemachine()
  {
    ast::StateMachine m;
    advance();
    const Token & name = expect_name("state machine name");
    m.name = name.text;
    m.span = name.span;
    const Token open = expect(TokenKind::lbrace);
    expect_kw("initial");
    m.initial = expect_name("initial state").text;
    expect(TokenKind::semicolon);
    while (block_continues(open, "statemachine block")) {
      if (!at_kw("state")) expected({"'state'", "'}'"});
      m.states.push_back(state());
    }
    return m;
  }

  ast::State state()
  {
    ast::State s;
    const Token kw = advance();
    const Token & name = expect_name("state name");
    s.name = name.text;
    s.span = name.span;
    const Token open = expect(TokenKind::lbrace);
    while (block_continues(open, "state block")) {
      if (!at_kw("goto")) expected({"'goto'", "'}'"});
      ast::Transition t;
      t.span = advance().span;
      t.target = expect_name("target state").text;
      expect_kw("when");
      t.condition = condition();
      t.trace = opt_trace();
      s.transitions.push_back(std::move(t));
    }
    std::vector<const ast::Condition *> conds;
    for (const auto & t : s.transitions) conds.push_back(&t.condition);
    check_else_usage(conds, kw, "transitions of state '" + s.name + "'");
    return s;
  }

  ast::Invariant invariant()
  {
    ast::Invariant inv;
    advance();
    const Token & name = expect_name("invariant name");
    inv.name = name.text;
    inv.span = name.span;
    expect(TokenKind::colon);
    if (!at_kw("table")) expected({"'table'"});
    inv.table = table();
    inv.trace = opt_trace();
    return inv;
  }
};

// ---------------------------------------------------------------------------
// .req

class RequirementsParser : public ParserBase
{
public:
  RequirementsParser(std::string_view source, std::string file)
      : ParserBase(source, std::move(file), false)
  {
  }

  Parsed<std::vector<ast::Requirement>> run()
  {
    Parsed<std::vector<ast::Requirement>> out;
    try {
      std::vector<ast::Requirement> reqs;
      std::map<std::string, SourceSpan> seen;
      while (!at(TokenKind::eof)) {
        expect_kw("requirement");
        ast::Requirement r;
        const Token & id = expect(TokenKind::req_id);
        r.id = id.text;
        r.span = id.span;
        r.prose = expect(TokenKind::string).text;
        if (at_kw("phase")) {
          advance();
          r.phase = expect_name("phase name").text;
        }
        if (auto [it, fresh] = seen.emplace(r.id, r.span); !fresh) {
          fail(id, "DuplicateRequirement",
               "duplicate requirement id " + r.id + " (first declared at " +
                 where(it->second) + ")");
        }
        reqs.push_back(std::move(r));
      }
      out.value = std::move(reqs);
    } catch (const ParseFailure & f) {
      out.diagnostics.push_back(f.diag);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// .pf

class PfParser : public ParserBase
{
public:
  PfParser(std::string_view source, std::string file) : ParserBase(source, std::move(file), false)
  {
  }

  Parsed<std::vector<ast::ProblemDiagram>> run()
  {
    Parsed<std::vector<ast::ProblemDiagram>> out;
    try {
      std::vector<ast::ProblemDiagram> diagrams;
      while (!at(TokenKind::eof)) {
        if (!at_kw("problem")) expected({"'problem'", "end of file"});
        diagrams.push_back(problem());
        if (diagrams.back().requirements.empty()) {
          diags_.push_back(make_warning("NoRequirement",
                                        "sub-problem '" + diagrams.back().name +
                                          "' declares no requirement",
                                        diagrams.back().span));
        }
      }
      out.value = std::move(diagrams);
    } catch (const ParseFailure & f) {
      diags_.push_back(f.diag);
    }
    out.diagnostics = std::move(diags_);
    return out;
  }

private:
  ast::ProblemDiagram problem()
  {
    ast::ProblemDiagram d;
    advance();
    const Token & name = expect_name("problem name");
    d.name = name.text;
    d.span = name.span;
    const Token open = expect(TokenKind::lbrace);
    while (block_continues(open, "problem block")) {
      if (at_kw("machine")) {
        advance();
        const Token & m = expect_name("machine name");
        d.machines.push_back(m.text);
        d.machine_spans.push_back(m.span);
      } else if (at_kw("domain")) {
        d.domains.push_back(domain());
      } else if (at_kw("interface")) {
        d.interfaces.push_back(interface());
      } else if (at_kw("requirement")) {
        d.requirements.push_back(requirement());
      } else {
        expected({"'machine'", "'domain'", "'interface'", "'requirement'", "'}'"});
      }
    }
    return d;
  }

  ast::Domain domain()
  {
    ast::Domain dom;
    advance();
    const Token & name = expect_name("domain name");
    dom.name = name.text;
    dom.span = name.span;
    expect_kw("kind");
    const Token & kind = expect(TokenKind::ident);
    if (kind.text == "given") {
      dom.kind = ast::DomainKind::given;
    } else if (kind.text == "designed") {
      dom.kind = ast::DomainKind::designed;
    } else if (kind.text == "biddable") {
      dom.kind = ast::DomainKind::biddable;
    } else if (kind.text == "lexical") {
      dom.kind = ast::DomainKind::lexical;
    } else {
      fail(kind, "UnknownDomainKind",
           "unknown domain kind '" + kind.text +
             "' (expected one of given, designed, biddable, lexical)");
    }
    return dom;
  }

  std::vector<std::string> phenomenon_list()
  {
    std::vector<std::string> out;
    expect(TokenKind::lbrace);
    do {
      out.push_back(expect_name("phenomenon name").text);
    } while (at(TokenKind::comma) && (advance(), true));
    expect(TokenKind::rbrace);
    return out;
  }

  ast::PfInterface interface()
  {
    ast::PfInterface i;
    i.span = advance().span;
    i.a = expect_name("domain name").text;
    expect(TokenKind::arrow);
    i.b = expect_name("domain name").text;
    i.phenomena = phenomenon_list();
    return i;
  }

  ast::PfRequirement requirement()
  {
    ast::PfRequirement r;
    advance();
    const Token & name = expect_name("requirement name");
    r.name = name.text;
    r.span = name.span;
    if (at(TokenKind::string)) r.prose = advance().text;
    const Token open = expect(TokenKind::lbrace);
    while (block_continues(open, "requirement block")) {
      if (!at_kw("constrains") && !at_kw("refs")) expected({"'constrains'", "'refs'", "'}'"});
      const bool constrains = at_kw("constrains");
      ast::PhenomenonRef ref;
      ref.span = advance().span;
      ref.domain = expect_name("domain name").text;
      ref.phenomena = phenomenon_list();
      (constrains ? r.constrains : r.refs).push_back(std::move(ref));
    }
    r.trace = opt_trace();
    return r;
  }
};

// ---------------------------------------------------------------------------
// printers

std::string escape(const std::string & s)
{
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string print_operand(const ast::Operand & o)
{
  return o.kind == ast::Operand::Kind::integer ? std::to_string(o.number) : o.name;
}

void print_trace(std::ostream & os, const std::vector<ast::TraceRef> & trace)
{
  if (trace.empty()) return;
  os << " trace ";
  for (std::size_t i = 0; i < trace.size(); ++i) os << (i ? ", " : "") << trace[i].id;
}

void print_table(std::ostream & os, const ast::Table & t, const std::string & indent)
{
  os << "table {\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto & p = t.rows[r];
    os << indent << "  ";
    if (p.state_test) {
      os << "in(" << p.machine << ", " << p.state << ")";
    } else {
      os << print_operand(p.lhs) << ' ' << to_string(p.op) << ' ' << print_operand(p.rhs);
    }
    os << " :";
    for (const Cell c : t.cells[r]) os << ' ' << (c == Cell::t ? 'T' : c == Cell::f ? 'F' : '.');
    os << '\n';
  }
  os << indent << '}';
}

void print_condition(std::ostream & os, const ast::Condition & c, const std::string & indent)
{
  if (c.is_else) {
    os << "else";
  } else {
    print_table(os, c.table, indent);
  }
}

}  // namespace

const char * to_string(RelOp op) noexcept
{
  switch (op) {
    case RelOp::eq:
      return "=";
    case RelOp::ne:
      return "!=";
    case RelOp::lt:
      return "<";
    case RelOp::le:
      return "<=";
    case RelOp::gt:
      return ">";
    case RelOp::ge:
      return ">=";
  }
  return "=";
}

RelOp negate(RelOp op) noexcept
{
  switch (op) {
    case RelOp::eq:
      return RelOp::ne;
    case RelOp::ne:
      return RelOp::eq;
    case RelOp::lt:
      return RelOp::ge;
    case RelOp::le:
      return RelOp::gt;
    case RelOp::gt:
      return RelOp::le;
    case RelOp::ge:
      return RelOp::lt;
  }
  return RelOp::ne;
}

const char * to_string(Direction d) noexcept
{
  switch (d) {
    case Direction::input:
      return "input";
    case Direction::output:
      return "output";
    case Direction::internal:
      return "internal";
  }
  return "input";
}

namespace ast
{

const char * to_string(DomainKind k) noexcept
{
  switch (k) {
    case DomainKind::given:
      return "given";
    case DomainKind::designed:
      return "designed";
    case DomainKind::biddable:
      return "biddable";
    case DomainKind::lexical:
      return "lexical";
  }
  return "given";
}

namespace
{
void strip(Table & t)
{
  t.span = {};
  for (auto & p : t.rows) {
    p.span = {};
    p.lhs.span = {};
    p.rhs.span = {};
  }
}
void strip(Condition & c)
{
  c.span = {};
  strip(c.table);
}
void strip(std::vector<TraceRef> & trace)
{
  for (auto & t : trace) t.span = {};
}
}  // namespace

void strip_spans(SpecFile & f)
{
  f.span = {};
  for (auto & t : f.types) {
    t.span = {};
    for (auto & s : t.literal_spans) s = {};
  }
  for (auto & c : f.components) {
    c.span = {};
    for (auto & v : c.variables) {
      v.span = {};
      if (v.init) v.init->span = {};
    }
    for (auto & a : c.assigns) {
      a.span = {};
      for (auto & k : a.cases) {
        k.span = {};
        k.value.span = {};
        strip(k.condition);
        strip(k.trace);
      }
    }
    for (auto & m : c.machines) {
      m.span = {};
      for (auto & s : m.states) {
        s.span = {};
        for (auto & t : s.transitions) {
          t.span = {};
          strip(t.condition);
          strip(t.trace);
        }
      }
    }
  }
  for (auto & inv : f.invariants) {
    inv.span = {};
    strip(inv.table);
    strip(inv.trace);
  }
}

void strip_spans(std::vector<Requirement> & reqs)
{
  for (auto & r : reqs) r.span = {};
}

void strip_spans(std::vector<ProblemDiagram> & diagrams)
{
  for (auto & d : diagrams) {
    d.span = {};
    for (auto & s : d.machine_spans) s = {};
    for (auto & dom : d.domains) dom.span = {};
    for (auto & i : d.interfaces) i.span = {};
    for (auto & r : d.requirements) {
      r.span = {};
      for (auto & c : r.constrains) c.span = {};
      for (auto & c : r.refs) c.span = {};
      strip(r.trace);
    }
  }
}

}  // namespace ast

Parsed<ast::SpecFile> parse_spec(std::string_view source, std::string file)
{
  return SpecParser(source, std::move(file)).run();
}

Parsed<std::vector<ast::Requirement>> parse_requirements(std::string_view source, std::string file)
{
  return RequirementsParser(source, std::move(file)).run();
}

Parsed<std::vector<ast::ProblemDiagram>> parse_pf(std::string_view source, std::string file)
{
  return PfParser(source, std::move(file)).run();
}

std::string print_spec(const ast::SpecFile & f)
{
  std::ostringstream os;
  os << "specification " << f.name << "\n";
  for (const auto & t : f.types) {
    os << "\ntype " << t.name << " = ";
    if (t.is_enum) {
      os << "{ ";
      for (std::size_t i = 0; i < t.literals.size(); ++i) os << (i ? ", " : "") << t.literals[i];
      os << " }";
    } else {
      os << "int [" << t.lo << " .. " << t.hi << "]";
    }
  }
  if (!f.types.empty()) os << '\n';
  for (const auto & c : f.components) {
    os << "\ncomponent " << c.name << " {\n";
    for (const auto & v : c.variables) {
      os << "  " << to_string(v.direction) << ' ' << v.name << " : " << v.type;
      if (v.init) os << " init " << print_operand(*v.init);
      os << '\n';
    }
    for (const auto & a : c.assigns) {
      os << "  assign " << a.target << " {\n";
      for (const auto & k : a.cases) {
        os << "    when ";
        print_condition(os, k.condition, "    ");
        os << " then " << print_operand(k.value);
        print_trace(os, k.trace);
        os << '\n';
      }
      os << "  }\n";
    }
    for (const auto & m : c.machines) {
      os << "  statemachine " << m.name << " {\n    initial " << m.initial << ";\n";
      for (const auto & s : m.states) {
        os << "    state " << s.name << " {\n";
        for (const auto & t : s.transitions) {
          os << "      goto " << t.target << " when ";
          print_condition(os, t.condition, "      ");
          print_trace(os, t.trace);
          os << '\n';
        }
        os << "    }\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  for (const auto & inv : f.invariants) {
    os << "\ninvariant " << inv.name << " : ";
    print_table(os, inv.table, "");
    print_trace(os, inv.trace);
    os << '\n';
  }
  return os.str();
}

std::string print_requirements(const std::vector<ast::Requirement> & reqs)
{
  std::ostringstream os;
  for (const auto & r : reqs) {
    os << "requirement " << r.id << " \"" << escape(r.prose) << '"';
    if (r.phase) os << " phase " << *r.phase;
    os << '\n';
  }
  return os.str();
}

std::string print_pf(const std::vector<ast::ProblemDiagram> & diagrams)
{
  std::ostringstream os;
  for (std::size_t n = 0; n < diagrams.size(); ++n) {
    const auto & d = diagrams[n];
    if (n > 0) os << '\n';
    os << "problem " << d.name << " {\n";
    for (const auto & m : d.machines) os << "  machine " << m << '\n';
    for (const auto & dom : d.domains) {
      os << "  domain " << dom.name << " kind " << ast::to_string(dom.kind) << '\n';
    }
    auto list = [&](const std::vector<std::string> & ps) {
      os << "{ ";
      for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << ps[i];
      os << " }";
    };
    for (const auto & i : d.interfaces) {
      os << "  interface " << i.a << " <-> " << i.b << ' ';
      list(i.phenomena);
      os << '\n';
    }
    for (const auto & r : d.requirements) {
      os << "  requirement " << r.name;
      if (!r.prose.empty()) os << " \"" << escape(r.prose) << '"';
      os << " {\n";
      for (const auto & c : r.constrains) {
        os << "    constrains " << c.domain << ' ';
        list(c.phenomena);
        os << '\n';
      }
      for (const auto & c : r.refs) {
        os << "    refs " << c.domain << ' ';
        list(c.phenomena);
        os << '\n';
      }
      os << "  }";
      print_trace(os, r.trace);
      os << '\n';
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace rsmlkit
