#include "rsmlkit/eventb_reader.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "rsmlkit/table_logic.hpp"

namespace rsmlkit::eventb
{
namespace
{

enum class Kind { word, integer, label, symbol, comment, eof };

struct Tok
{
  Kind kind = Kind::eof;
  std::string text;  // symbols are normalised to their UTF-8 spelling
  SourceSpan span;
};

bool ident_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Tok> lex(std::string_view src, const std::string & file)
{
  // Longest spellings first; each maps to its canonical form.
  static const std::vector<std::pair<std::string_view, std::string_view>> symbols = {
    {":∈", ":∈"}, {"::", ":∈"}, {":=", ":="}, {"∈", "∈"},  {":", "∈"},  {"≠", "≠"},
    {"/=", "≠"},  {"≤", "≤"},   {"<=", "≤"},  {"≥", "≥"},  {">=", "≥"}, {"<", "<"},
    {">", ">"},   {"=", "="},   {"∧", "∧"},   {"∨", "∨"},  {"¬", "¬"},  {"(", "("},
    {")", ")"},   {"{", "{"},   {"}", "}"},   {",", ","},  {"‥", "‥"},  {"..", "‥"},
    {"⊤", "⊤"},   {"⊥", "⊥"},
  };
  std::vector<Tok> out;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      const char c = src[pos];
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (pos < src.size()) {
    const char c = src[pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    Tok t;
    t.span = {file, line, col, 1};
    if (src.substr(pos, 2) == "//") {
      std::size_t end = src.find('\n', pos);
      if (end == std::string_view::npos) end = src.size();
      std::string_view body = src.substr(pos + 2, end - pos - 2);
      while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
      while (!body.empty() && (body.back() == ' ' || body.back() == '\r')) body.remove_suffix(1);
      t.kind = Kind::comment;
      t.text = std::string(body);
      advance(end - pos);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '@') {
      std::size_t n = 1;
      while (pos + n < src.size() && ident_char(src[pos + n])) ++n;
      t.kind = Kind::label;
      t.text = std::string(src.substr(pos + 1, n - 1));
      advance(n);
      out.push_back(std::move(t));
      continue;
    }
    const bool negative = c == '-' && pos + 1 < src.size() &&
                          std::isdigit(static_cast<unsigned char>(src[pos + 1]));
    if (std::isdigit(static_cast<unsigned char>(c)) || negative) {
      std::size_t n = negative ? 1 : 0;
      while (pos + n < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + n]))) ++n;
      t.kind = Kind::integer;
      t.text = std::string(src.substr(pos, n));
      advance(n);
      out.push_back(std::move(t));
      continue;
    }
    if (ident_char(c)) {
      std::size_t n = 0;
      while (pos + n < src.size() && ident_char(src[pos + n])) ++n;
      t.text = std::string(src.substr(pos, n));
      t.kind = Kind::word;
      if (t.text == "or") t = {Kind::symbol, "∨", t.span};
      else if (t.text == "and") t = {Kind::symbol, "∧", t.span};
      else if (t.text == "not") t = {Kind::symbol, "¬", t.span};
      else if (t.text == "true") t = {Kind::symbol, "⊤", t.span};
      else if (t.text == "false") t = {Kind::symbol, "⊥", t.span};
      advance(n);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const auto & [spelling, canonical] : symbols) {
      if (src.substr(pos, spelling.size()) == spelling) {
        t.kind = Kind::symbol;
        t.text = std::string(canonical);
        advance(spelling.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error("EventBSyntax", "unexpected character '" + std::string(1, c) + "'", t.span);
    }
  }
  Tok eof;
  eof.span = {file, line, col, 0};
  out.push_back(std::move(eof));
  return out;
}

class Reader
{
public:
  Reader(std::string_view text, const std::string & file) : toks_(lex(text, file)) {}

  Machine machine()
  {
    Machine m;
    keyword("machine");
    m.name = word();
    if (at_word("refines")) {
      ++pos_;
      m.refines = word();
    }
    keyword("sees");
    m.sees = word();
    if (at_word("variables")) {
      ++pos_;
      while (cur().kind == Kind::word && !is_section(cur().text)) m.variables.push_back(word());
    }
    if (at_word("invariants")) {
      ++pos_;
      m.invariants = labeled_list();
    }
    if (at_word("events")) {
      ++pos_;
      while (at_word("event")) m.events.push_back(event());
    }
    keyword("end");
    expect_eof();
    return m;
  }

  Context context()
  {
    Context c;
    keyword("context");
    c.name = word();
    if (at_word("sets")) {
      ++pos_;
      while (cur().kind == Kind::word && !is_section(cur().text)) {
        c.sets.push_back({word(), {}});
      }
    }
    if (at_word("constants")) {
      ++pos_;
      while (cur().kind == Kind::word && !is_section(cur().text)) c.constants.push_back(word());
    }
    if (at_word("axioms")) {
      ++pos_;
      c.axioms = labeled_list();
    }
    keyword("end");
    expect_eof();
    for (auto & s : c.sets) {
      for (const auto & a : c.axioms) {
        if (a.pred.kind == Pred::Kind::partition && a.pred.lhs == s.name) s.members = a.pred.parts;
      }
    }
    return c;
  }

  Pred predicate_only()
  {
    Pred p = disjunction();
    expect_eof();
    return p;
  }

private:
  static bool is_section(const std::string & w)
  {
    static const std::set<std::string> k = {"variables", "invariants", "events", "event",
                                            "end",       "sets",       "constants", "axioms",
                                            "when",      "then",       "refines",   "sees"};
    return k.count(w) > 0;
  }

  const Tok & cur() const { return toks_[pos_]; }

  bool at_word(const char * w) const
  {
    return cur().kind == Kind::word && cur().text == w;
  }

  bool at_symbol(const char * s) const
  {
    return cur().kind == Kind::symbol && cur().text == s;
  }

  [[noreturn]] void fail(const std::string & expected) const
  {
    const Tok & t = cur();
    const std::string found = t.kind == Kind::eof ? "end of input" : "'" + t.text + "'";
    throw Error("EventBSyntax", "expected " + expected + ", found " + found, t.span);
  }

  void keyword(const char * w)
  {
    if (!at_word(w)) fail(std::string("'") + w + "'");
    ++pos_;
  }

  void symbol(const char * s)
  {
    if (!at_symbol(s)) fail(std::string("'") + s + "'");
    ++pos_;
  }

  std::string word()
  {
    if (cur().kind != Kind::word || is_section(cur().text)) fail("identifier");
    return toks_[pos_++].text;
  }

  std::string term()
  {
    if (cur().kind == Kind::integer) return toks_[pos_++].text;
    return word();
  }

  Value integer()
  {
    if (cur().kind != Kind::integer) fail("integer");
    Value v = 0;
    const std::string & s = cur().text;
    std::from_chars(s.data(), s.data() + s.size(), v);
    ++pos_;
    return v;
  }

  void expect_eof() const
  {
    if (cur().kind != Kind::eof) fail("end of input");
  }

  std::vector<std::string> comments()
  {
    std::vector<std::string> out;
    while (cur().kind == Kind::comment) out.push_back(toks_[pos_++].text);
    return out;
  }

  std::vector<Labeled> labeled_list()
  {
    std::vector<Labeled> out;
    for (;;) {
      const std::size_t mark = pos_;
      std::vector<std::string> notes = comments();
      if (cur().kind != Kind::label) {
        pos_ = mark;
        return out;
      }
      Labeled l;
      l.comments = std::move(notes);
      l.label = toks_[pos_++].text;
      l.pred = disjunction();
      out.push_back(std::move(l));
    }
  }

  Event event()
  {
    Event e;
    keyword("event");
    e.name = word();
    if (at_word("refines")) {
      ++pos_;
      e.refines = word();
    }
    e.comments = comments();
    if (at_word("when")) {
      ++pos_;
      e.guards = labeled_list();
    }
    if (at_word("then")) {
      ++pos_;
      while (cur().kind == Kind::label) e.actions.push_back(action());
    }
    keyword("end");
    return e;
  }

  Action action()
  {
    Action a;
    a.label = toks_[pos_++].text;
    a.var = word();
    if (at_symbol(":=")) {
      ++pos_;
      a.kind = Action::Kind::assign;
      a.value = term();
    } else if (at_symbol(":∈")) {
      ++pos_;
      if (cur().kind == Kind::integer) {
        a.kind = Action::Kind::choose_range;
        a.lo = integer();
        symbol("‥");
        a.hi = integer();
      } else {
        a.kind = Action::Kind::choose_set;
        a.value = word();
      }
    } else {
      fail("':=' or ':∈'");
    }
    return a;
  }

  Pred disjunction()
  {
    std::vector<Pred> args{conjunction()};
    while (at_symbol("∨")) {
      ++pos_;
      args.push_back(conjunction());
    }
    return args.size() == 1 ? std::move(args.front()) : Pred::disjunction(std::move(args));
  }

  Pred conjunction()
  {
    std::vector<Pred> args{unary()};
    while (at_symbol("∧")) {
      ++pos_;
      args.push_back(unary());
    }
    return args.size() == 1 ? std::move(args.front()) : Pred::conjunction(std::move(args));
  }

  Pred unary()
  {
    if (at_symbol("¬")) {
      ++pos_;
      return Pred::negation(unary());
    }
    if (at_symbol("(")) {
      ++pos_;
      Pred p = disjunction();
      symbol(")");
      return p;
    }
    if (at_symbol("⊤")) {
      ++pos_;
      return Pred{};
    }
    if (at_symbol("⊥")) {
      ++pos_;
      Pred p;
      p.kind = Pred::Kind::falsity;
      return p;
    }
    if (at_word("partition")) {
      ++pos_;
      symbol("(");
      const std::string set = word();
      std::vector<std::string> parts;
      while (at_symbol(",")) {
        ++pos_;
        symbol("{");
        parts.push_back(word());
        symbol("}");
      }
      symbol(")");
      return Pred::partition(set, std::move(parts));
    }
    std::string lhs = term();
    if (at_symbol("∈")) {
      ++pos_;
      if (cur().kind == Kind::integer) {
        const Value lo = integer();
        symbol("‥");
        const Value hi = integer();
        return Pred::in_range(std::move(lhs), lo, hi);
      }
      return Pred::member(std::move(lhs), word());
    }
    static const std::vector<std::pair<const char *, RelOp>> ops = {
      {"=", RelOp::eq}, {"≠", RelOp::ne}, {"<", RelOp::lt},
      {"≤", RelOp::le}, {">", RelOp::gt}, {"≥", RelOp::ge},
    };
    for (const auto & [s, op] : ops) {
      if (at_symbol(s)) {
        ++pos_;
        return Pred::relation(std::move(lhs), op, term());
      }
    }
    fail("relational operator or '∈'");
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

std::optional<Value> as_int(const std::string & s)
{
  Value v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

Context read_context(std::string_view text, const std::string & file)
{
  return Reader(text, file).context();
}

Machine read_machine(std::string_view text, const std::string & file)
{
  return Reader(text, file).machine();
}

Pred read_predicate(std::string_view text)
{
  return Reader(text, "<predicate>").predicate_only();
}

// ---- interpreter ----------------------------------------------------------------

Interpreter::Interpreter(Context ctx, Machine m) : context_(std::move(ctx)), machine_(std::move(m))
{
}

std::optional<std::vector<std::string>> Interpreter::members(const std::string & set) const
{
  if (set == "BOOL") return std::vector<std::string>{"FALSE", "TRUE"};
  for (const auto & s : context_.sets) {
    if (s.name == set) return s.members;
  }
  return std::nullopt;
}

std::string Interpreter::value_of(const std::string & term, const State & s) const
{
  const auto it = s.find(term);
  return it == s.end() ? term : it->second;
}

bool Interpreter::eval(const Pred & p, const State & s) const
{
  switch (p.kind) {
    case Pred::Kind::relation: {
      const std::string l = value_of(p.lhs, s);
      const std::string r = value_of(p.rhs, s);
      if (p.op == RelOp::eq) return l == r;
      if (p.op == RelOp::ne) return l != r;
      const auto li = as_int(l);
      const auto ri = as_int(r);
      if (!li || !ri) {
        throw Error("EventBType", "ordering between non-integers '" + l + "' and '" + r + "'");
      }
      return eval_relation(*li, p.op, *ri);
    }
    case Pred::Kind::member: {
      const auto m = members(p.set);
      if (!m) throw Error("EventBType", "unknown set '" + p.set + "'");
      const std::string v = value_of(p.lhs, s);
      return std::find(m->begin(), m->end(), v) != m->end();
    }
    case Pred::Kind::in_range: {
      const auto v = as_int(value_of(p.lhs, s));
      return v && *v >= p.lo && *v <= p.hi;
    }
    case Pred::Kind::partition: {
      const auto m = members(p.lhs);
      if (!m) return false;
      std::vector<std::string> a = *m;
      std::vector<std::string> b = p.parts;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b && std::adjacent_find(b.begin(), b.end()) == b.end();
    }
    case Pred::Kind::negation:
      return !eval(p.args.front(), s);
    case Pred::Kind::conjunction:
      return std::all_of(p.args.begin(), p.args.end(), [&](const Pred & a) { return eval(a, s); });
    case Pred::Kind::disjunction:
      return std::any_of(p.args.begin(), p.args.end(), [&](const Pred & a) { return eval(a, s); });
    case Pred::Kind::truth:
      return true;
    case Pred::Kind::falsity:
      return false;
  }
  return false;
}

State Interpreter::initial() const
{
  const Event * init = machine_.find_event("INITIALISATION");
  if (!init) throw Error("EventBSyntax", "machine has no INITIALISATION event");
  return apply("INITIALISATION", State{});
}

std::vector<std::string> Interpreter::enabled(const State & s) const
{
  std::vector<std::string> out;
  for (const auto & e : machine_.events) {
    if (e.name == "INITIALISATION") continue;
    const bool on = std::all_of(e.guards.begin(), e.guards.end(),
                                [&](const Labeled & g) { return eval(g.pred, s); });
    if (on) out.push_back(e.name);
  }
  return out;
}

State Interpreter::apply(const std::string & event, const State & s, const State & choices) const
{
  const Event * e = machine_.find_event(event);
  if (!e) throw Error("EventBSyntax", "no event named '" + event + "'");
  State next = s;
  for (const auto & a : e->actions) {
    if (a.kind == Action::Kind::assign) {
      next[a.var] = value_of(a.value, s);
      continue;
    }
    const auto c = choices.find(a.var);
    if (c == choices.end()) {
      throw Error("Nondeterministic", "event '" + event + "' needs a value for '" + a.var + "'");
    }
    const bool ok = a.kind == Action::Kind::choose_set
                      ? eval(Pred::member(c->second, a.value), {})
                      : eval(Pred::in_range(c->second, a.lo, a.hi), {});
    if (!ok) throw Error("EventBType", "'" + c->second + "' is not a possible value of " + a.var);
    next[a.var] = c->second;
  }
  return next;
}

std::vector<std::string> Interpreter::violated(const State & s) const
{
  std::vector<std::string> out;
  for (const auto & i : machine_.invariants) {
    if (!eval(i.pred, s)) out.push_back(i.label);
  }
  return out;
}

}  // namespace rsmlkit::eventb
