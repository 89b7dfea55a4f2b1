#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rsmlkit/analysis.hpp"
#include "rsmlkit/eventb.hpp"
#include "rsmlkit/parser.hpp"
#include "rsmlkit/report.hpp"
#include "rsmlkit/simulator.hpp"
#include "rsmlkit/trace.hpp"

namespace rsmlkit::cli
{

namespace fs = std::filesystem;

namespace
{

constexpr int exit_clean = 0;
constexpr int exit_findings = 1;
constexpr int exit_usage = 2;
constexpr int exit_limits = 3;

struct Flags
{
  std::vector<std::string> files;
  std::string spec;
  std::string script;
  std::string outdir = ".";
  std::uint64_t cap = default_enumeration_cap;
  std::uint64_t max_states = ExploreLimits{}.max_states;
  std::optional<std::size_t> max_depth;
  std::string mode = "flat";
  std::string format = "text";
  bool ascii = false;
  bool warnings_as_errors = false;
  bool require_trace = false;
  bool force = false;
  bool closed = false;
  bool keep_going = false;
};

struct UsageError
{
  std::string message;
};

bool use_color(bool tty)
{
  const char * env = std::getenv("RSMLKIT_COLOR");
  const std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return tty;
}

std::optional<std::string> read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parsed project inputs, grouped by file extension.
struct Project
{
  std::vector<std::pair<std::string, ast::SpecFile>> specs;
  std::vector<ast::Requirement> requirements;
  std::vector<ast::ProblemDiagram> diagrams;
  std::vector<Diagnostic> diagnostics;
  bool has_req = false;
  bool has_pf = false;
};

Project load(const std::vector<std::string> & files)
{
  Project p;
  for (const auto & f : files) {
    const std::string ext = fs::path(f).extension().string();
    if (ext != ".rsml" && ext != ".pf" && ext != ".req") {
      throw UsageError{"unrecognised file type: " + f + " (expected .rsml, .pf or .req)"};
    }
    const auto text = read_file(f);
    if (!text) throw UsageError{"cannot read " + f};
    if (ext == ".rsml") {
      auto r = parse_spec(*text, f);
      p.diagnostics.insert(p.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
      if (r.value) p.specs.emplace_back(f, std::move(*r.value));
    } else if (ext == ".pf") {
      p.has_pf = true;
      auto r = parse_pf(*text, f);
      p.diagnostics.insert(p.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
      if (r.value) p.diagrams.insert(p.diagrams.end(), r.value->begin(), r.value->end());
    } else {
      p.has_req = true;
      auto r = parse_requirements(*text, f);
      p.diagnostics.insert(p.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
      if (r.value) {
        p.requirements.insert(p.requirements.end(), r.value->begin(), r.value->end());
      }
    }
  }
  return p;
}

void append(std::vector<Diagnostic> & to, const std::vector<Diagnostic> & from)
{
  for (const auto & d : from) {
    if (std::find(to.begin(), to.end(), d) == to.end()) to.push_back(d);
  }
}

class Runner
{
public:
  Runner(const Flags & flags, std::ostream & out, std::ostream & err, bool color)
    : f_(flags), out_(out), err_(err), color_(color)
  {
  }

  int check();
  int simulate();
  int explore();
  int gen();
  int trace();

private:
  bool json() const { return f_.format == "json"; }

  void print(const std::vector<Diagnostic> & diags)
  {
    if (json()) return;
    for (const auto & d : diags) err_ << format_diagnostic(d, color_) << '\n';
  }

  bool failing(const std::vector<Diagnostic> & diags) const
  {
    if (has_errors(diags)) return true;
    return f_.warnings_as_errors &&
           std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic & d) { return d.severity == Severity::warning; });
  }

  // Parses and resolves the single specification of a spec-only command;
  // nullopt after printing diagnostics when it cannot be used.
  std::optional<Specification> single_spec(std::vector<Diagnostic> & diags, bool need_clean);

  const Flags & f_;
  std::ostream & out_;
  std::ostream & err_;
  bool color_;
};

std::optional<Specification> Runner::single_spec(std::vector<Diagnostic> & diags, bool need_clean)
{
  if (f_.files.size() != 1 || fs::path(f_.files[0]).extension() != ".rsml") {
    throw UsageError{"expected exactly one .rsml file"};
  }
  Project p = load(f_.files);
  append(diags, p.diagnostics);
  if (p.specs.empty() || has_errors(diags)) return std::nullopt;
  auto r = resolve(p.specs[0].second, p.specs[0].first);
  append(diags, r.diagnostics);
  if (!r.value || has_errors(diags)) return std::nullopt;
  if (need_clean && !f_.force) {
    const AnalysisReport a = analyze(*r.value, f_.cap);
    append(diags, a.diagnostics);
    if (has_errors(a.diagnostics)) return std::nullopt;
  }
  return std::move(r.value);
}

int Runner::check()
{
  if (f_.files.empty()) throw UsageError{"check needs at least one file"};
  Project p = load(f_.files);
  std::vector<Diagnostic> diags;
  append(diags, p.diagnostics);
  for (const auto & d : p.diagrams) append(diags, trace::check_pf(d));

  nlohmann::json analyses = nlohmann::json::array();
  std::vector<std::string> summaries;
  std::vector<Specification> resolved;
  bool too_large = false;
  for (const auto & [file, ast] : p.specs) {
    auto r = resolve(ast, file);
    append(diags, r.diagnostics);
    if (!r.value || has_errors(r.diagnostics)) continue;
    const AnalysisReport a = analyze(*r.value, f_.cap);
    append(diags, a.diagnostics);
    too_large = too_large || std::any_of(a.guard_sets.begin(), a.guard_sets.end(),
                                         [](const GuardSetReport & g) { return g.too_large; });
    summaries.push_back(a.summary());
    if (json()) analyses.push_back(nlohmann::json::parse(analysis_json(*r.value, a)));
    resolved.push_back(std::move(*r.value));
  }
  if (p.has_req) {
    trace::LinkInput in{p.requirements, p.diagrams, resolved.empty() ? nullptr : &resolved[0], {}};
    append(diags, trace::link(in).diagnostics);
  }

  print(diags);
  if (json()) {
    nlohmann::json j = {{"analyses", analyses},
                        {"diagnostics", nlohmann::json::parse(diagnostics_json(diags))}};
    out_ << j.dump(2) << '\n';
  } else {
    for (const auto & s : summaries) out_ << s << '\n';
    const auto errors = std::count_if(diags.begin(), diags.end(),
                                      [](const Diagnostic & d) { return d.severity == Severity::error; });
    const auto warnings = std::count_if(diags.begin(), diags.end(), [](const Diagnostic & d) {
      return d.severity == Severity::warning;
    });
    out_ << errors << " error(s), " << warnings << " warning(s)\n";
  }
  if (too_large) return exit_limits;
  return failing(diags) ? exit_findings : exit_clean;
}

int Runner::simulate()
{
  std::vector<Diagnostic> diags;
  auto spec = single_spec(diags, true);
  if (!spec) {
    print(diags);
    if (json()) out_ << diagnostics_json(diags);
    return exit_findings;
  }
  const auto text = read_file(f_.script);
  if (!text) throw UsageError{"cannot read " + f_.script};
  auto script = parse_script(*spec, *text, f_.script);
  append(diags, script.diagnostics);
  if (!script.value || has_errors(script.diagnostics)) {
    print(diags);
    if (json()) out_ << diagnostics_json(diags);
    return exit_findings;
  }
  print(diags);
  try {
    const Simulator sim(*spec);
    const Trace t = run_script(sim, *script.value, f_.keep_going);
    out_ << (json() ? trace_json(*spec, t) : trace_text(*spec, t));
    return t.violations.empty() ? exit_clean : exit_findings;
  } catch (const Error & e) {
    print({e.diagnostic()});
    if (json()) out_ << diagnostics_json({e.diagnostic()});
    return exit_findings;
  }
}

int Runner::explore()
{
  std::vector<Diagnostic> diags;
  auto spec = single_spec(diags, true);
  print(diags);
  if (!spec) {
    if (json()) out_ << diagnostics_json(diags);
    return exit_findings;
  }
  try {
    const Simulator sim(*spec);
    const ExplorationReport r = rsmlkit::explore(sim, {f_.max_states, f_.max_depth});
    out_ << (json() ? exploration_json(*spec, r) : exploration_text(*spec, r));
    if (r.violated()) return exit_findings;
    return r.limit == ExplorationReport::Limit::none ? exit_clean : exit_limits;
  } catch (const Error & e) {
    print({e.diagnostic()});
    if (json()) out_ << diagnostics_json({e.diagnostic()});
    return exit_findings;
  }
}

int Runner::gen()
{
  std::vector<Diagnostic> diags;
  auto spec = single_spec(diags, true);
  print(diags);
  if (!spec) {
    if (json()) out_ << diagnostics_json(diags);
    return exit_findings;
  }
  std::vector<std::pair<std::string, std::string>> files;
  try {
    const eventb::GenOptions gopts{f_.closed};
    const eventb::RenderOptions ropts{f_.ascii};
    files.emplace_back(spec->name + "_ctx.ebc", eventb::render(eventb::gen_context(*spec), ropts));
    if (f_.mode == "chain") {
      for (const auto & m : eventb::gen_chain(*spec, gopts)) {
        files.emplace_back(m.name + ".ebm", eventb::render(m, ropts));
      }
    } else {
      const auto m = eventb::gen_flat(*spec, gopts);
      files.emplace_back(m.name + ".ebm", eventb::render(m, ropts));
    }
  } catch (const Error & e) {
    print({e.diagnostic()});
    if (json()) out_ << diagnostics_json({e.diagnostic()});
    return exit_findings;
  }

  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(f_.outdir, ec);
  for (const auto & [name, text] : files) {
    const std::string path = (fs::path(f_.outdir) / name).string();
    std::ofstream o(path, std::ios::binary);
    if (o) o << text;
    if (!o) {
      const Diagnostic d = make_error("IOError", "cannot write " + path);
      print({d});
      if (json()) out_ << diagnostics_json({d});
      return exit_findings;
    }
    written.push_back(path);
  }
  if (json()) {
    out_ << nlohmann::json{{"files", written}}.dump(2) << '\n';
  } else {
    for (const auto & w : written) out_ << w << '\n';
  }
  return exit_clean;
}

int Runner::trace()
{
  Project p = load(f_.files);
  if (!p.has_req) throw UsageError{"trace needs a .req file"};
  if (p.specs.size() > 1) throw UsageError{"trace accepts at most one .rsml file"};
  std::vector<Diagnostic> diags;
  append(diags, p.diagnostics);
  if (has_errors(diags)) {
    print(diags);
    if (json()) out_ << diagnostics_json(diags);
    return exit_findings;
  }

  std::optional<Specification> spec;
  trace::LinkInput in{p.requirements, p.diagrams, nullptr, {}};
  if (!p.specs.empty()) {
    auto r = resolve(p.specs[0].second, p.specs[0].first);
    append(diags, r.diagnostics);
    if (!r.value || has_errors(r.diagnostics)) {
      print(diags);
      if (json()) out_ << diagnostics_json(diags);
      return exit_findings;
    }
    spec = std::move(r.value);
    in.spec = &*spec;
    try {
      in.machines.push_back(eventb::gen_flat(*spec));
    } catch (const Error & e) {
      append(diags, {make_warning(e.code(), std::string(e.what()) +
                                              "; Event-B elements are left out of the matrix")});
    }
  }

  const trace::Graph g = trace::link(in);
  const trace::Report r = trace::trace_report(g, f_.require_trace);
  append(diags, g.diagnostics);
  append(diags, r.diagnostics);
  print(diags);
  out_ << (json() ? matrix_json(r, g) : trace::render_text(r));

  if (has_errors(diags)) return exit_findings;
  const bool untraced = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                                    [](const Diagnostic & d) { return d.code == "UntracedElement"; });
  if (f_.require_trace && untraced) return exit_findings;
  return f_.warnings_as_errors && failing(diags) ? exit_findings : exit_clean;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err, bool tty)
{
  Flags f;
  CLI::App app{"Checks, simulates and translates RSML-style table specifications", "rsmlkit"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App * c) {
    c->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_cap = [&](CLI::App * c) {
    c->add_option("--cap", f.cap, "enumeration cap per guard set")->check(CLI::PositiveNumber);
  };

  auto * check = app.add_subcommand("check", "parse, resolve and analyse project files");
  check->add_option("files", f.files, ".rsml, .pf and .req files")->required();
  check->add_flag("--warnings-as-errors", f.warnings_as_errors, "treat warnings as errors");
  add_cap(check);
  add_format(check);

  auto * sim = app.add_subcommand("simulate", "run an input script through the step semantics");
  sim->add_option("spec", f.spec, ".rsml file")->required();
  sim->add_option("script", f.script, "script of name=value rows")->required();
  sim->add_flag("--keep-going", f.keep_going, "continue after an invariant violation");
  sim->add_flag("--force", f.force, "skip the analysis precondition");
  add_cap(sim);
  add_format(sim);

  auto * exp = app.add_subcommand("explore", "breadth-first search of the reachable states");
  exp->add_option("spec", f.spec, ".rsml file")->required();
  exp->add_option("--max-states", f.max_states, "state budget")->check(CLI::PositiveNumber);
  exp->add_option("--max-depth", f.max_depth, "depth bound")->check(CLI::PositiveNumber);
  exp->add_flag("--force", f.force, "skip the analysis precondition");
  add_cap(exp);
  add_format(exp);

  auto * gen = app.add_subcommand("gen", "write the Event-B context and machines");
  gen->add_option("spec", f.spec, ".rsml file")->required();
  gen->add_option("-o,--output", f.outdir, "output directory");
  gen->add_option("--mode", f.mode, "single machine or refinement chain")->check(CLI::IsMember({"flat", "chain"}));
  gen->add_flag("--ascii", f.ascii, "ASCII operator spellings");
  gen->add_flag("--closed", f.closed, "omit environment events");
  gen->add_flag("--force", f.force, "skip the analysis precondition");
  add_cap(gen);
  add_format(gen);

  auto * tr = app.add_subcommand("trace", "requirements traceability matrix");
  tr->add_option("files", f.files, ".req, .pf and .rsml files")->required();
  tr->add_flag("--require-trace", f.require_trace, "fail on untraced cases and transitions");
  tr->add_flag("--warnings-as-errors", f.warnings_as_errors, "treat warnings as errors");
  add_format(tr);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_clean;
  } catch (const CLI::ParseError & e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return exit_usage;
  }

  if (!f.spec.empty()) f.files.push_back(f.spec);
  Runner r(f, out, err, use_color(tty));
  try {
    if (check->parsed()) return r.check();
    if (sim->parsed()) return r.simulate();
    if (exp->parsed()) return r.explore();
    if (gen->parsed()) return r.gen();
    return r.trace();
  } catch (const UsageError & u) {
    err << "error: " << u.message << '\n';
    return exit_usage;
  }
}

}  // namespace rsmlkit::cli
