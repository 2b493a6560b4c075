#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "aeff/audit.hpp"
#include "aeff/explorer.hpp"
#include "aeff/measures.hpp"
#include "aeff/reduce_par.hpp"
#include "aeff/reduce_seq.hpp"
#include "aeff/surface.hpp"
#include "aeff/typecheck.hpp"

namespace aeff::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string mode = "skeletal";
  std::string strategy = "leftmost";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::string format = "human";
  bool flat = false;
};

class Session {
 public:
  Session(const Options& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

  bool structured() const { return opts_.format == "structured"; }
  std::size_t budget() const { return opts_.budget ? *opts_.budget : default_budget(); }
  TypingMode mode() const { return opts_.mode == "effects" ? TypingMode::Effects : TypingMode::Skeletal; }

  void emit(const Json& record) { out_ << record.dump() << '\n'; }
  void line(const std::string& text) { out_ << text << '\n'; }

  /// Reports a failure on stderr and returns `code`.
  int fail(int code, const std::string& message) {
    err_ << opts_.file << ": " << message << '\n';
    return code;
  }

  std::optional<SourceProgram> load() {
    std::ifstream in(opts_.file, std::ios::binary);
    if (!in) {
      err_ << opts_.file << ": cannot open file\n";
      return std::nullopt;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      return parse_program(text.str());
    } catch (const ParseError& e) {
      err_ << opts_.file << ":" << e.what() << '\n';
      return std::nullopt;
    }
  }

  const Options& opts() const { return opts_; }

 private:
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
};

Json effect_json(const EffectAnnotation& e) { return format_effect(e); }

// ---------------------------------------------------------------------------
// check

int check_ascription(Session& s, const SourceProgram& prog, const CompType& inferred) {
  if (!prog.ascription) return kOk;
  const auto& a = *prog.ascription;
  const Computation& m = prog.computation();
  bool ok = false;
  if (s.mode() == TypingMode::Skeletal) {
    ok = compatible(erase(inferred.type), erase(a.type));
  } else {
    ok = check_effects(prog.signature, Context(), m, a.type, a.effect.value_or(EffectAnnotation{}));
  }
  if (ok) return kOk;
  Diagnostic d;
  d.loc = a.loc;
  d.message = "body does not match its expected type";
  d.expected = a.effect && s.mode() == TypingMode::Effects
                   ? format_comp_type(CompType{a.type, *a.effect}, s.mode())
                   : format_type(a.type);
  d.actual = format_comp_type(inferred, s.mode());
  return s.fail(kTypeFailure, d.str());
}

int cmd_check(Session& s) {
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  try {
    if (!prog->is_process()) {
      CompType t = infer(s.mode(), prog->signature, Context(), prog->computation());
      if (int rc = check_ascription(s, *prog, t); rc != kOk) return rc;
      if (s.structured()) {
        Json j{{"record", "type"}, {"mode", typing_mode_name(s.mode())}, {"type", format_type(t.type)}};
        if (s.mode() == TypingMode::Effects) j["effect"] = effect_json(t.effect);
        s.emit(j);
      } else {
        s.line(format_comp_type(t, s.mode()));
      }
      return kOk;
    }
    if (prog->ascription) {
      return s.fail(kTypeFailure, prog->ascription->loc.str() + ": error: expect applies to computations only");
    }
    auto report = typecheck_process(s.mode(), prog->signature, Context(), prog->process());
    for (const auto& leaf : report.leaves) {
      if (s.structured()) {
        Json j{{"record", "leaf"},
               {"path", format_process_path(leaf.path)},
               {"type", format_type(leaf.type.type)}};
        if (s.mode() == TypingMode::Effects) j["effect"] = effect_json(leaf.type.effect);
        s.emit(j);
      } else {
        s.line("leaf " + format_process_path(leaf.path) + ": " + format_comp_type(leaf.type, s.mode()));
      }
    }
    std::string composite = format_process_type(report.composite, s.mode());
    if (s.structured()) {
      s.emit(Json{{"record", "process"}, {"mode", typing_mode_name(s.mode())}, {"type", composite}});
    } else {
      s.line("process: " + composite);
    }
    return kOk;
  } catch (const TypeError& e) {
    return s.fail(kTypeFailure, e.what());
  }
}

// ---------------------------------------------------------------------------
// run

template <class Node, class Step, class StepFn, class Show>
int trace(Session& s, Node cur, StepFn step_fn, Show show) {
  std::mt19937_64 rng(s.opts().seed.value_or(0));
  const std::string& strategy = s.opts().strategy;
  const std::size_t limit = s.budget();
  if (s.structured()) {
    s.emit(Json{{"record", "start"}, {"term", show(cur)}});
  } else {
    s.line("0. " + show(cur));
  }
  for (std::size_t n = 1; n <= limit; ++n) {
    std::vector<Step> steps = step_fn(cur);
    if (steps.empty()) {
      if (s.structured()) {
        s.emit(Json{{"record", "normal"}, {"steps", n - 1}});
      } else {
        s.line("normal form after " + std::to_string(n - 1) + " steps");
      }
      return kOk;
    }
    std::size_t pick = 0;
    if (strategy == "random") pick = std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(rng);
    if (strategy == "all" && !s.structured()) {
      std::string labels;
      for (const auto& st : steps) labels += (labels.empty() ? "" : ", ") + st.label.str();
      s.line("   available: " + labels);
    }
    Step& chosen = steps[pick];
    cur = chosen.result;
    if (s.structured()) {
      Json j{{"record", "step"}, {"n", n}, {"label", chosen.label.str()}, {"term", show(cur)}};
      if (strategy == "all") {
        Json labels = Json::array();
        for (const auto& st : steps) labels.push_back(st.label.str());
        j["available"] = labels;
      }
      s.emit(j);
    } else {
      s.line(std::to_string(n) + ". [" + chosen.label.str() + "] " + show(cur));
    }
  }
  if (s.structured()) {
    s.emit(Json{{"record", "budget-exhausted"}, {"steps", limit}});
  } else {
    s.line("stopped: budget of " + std::to_string(limit) + " steps exhausted");
  }
  return kNotNormalising;
}

int cmd_run(Session& s) {
  if (s.opts().strategy == "random" && !s.opts().seed) {
    return s.fail(kUsage, "the random strategy requires --seed");
  }
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  if (!prog->is_process()) {
    if (s.opts().strategy == "leftmost") {
      return trace<Computation, SeqStep>(
          s, prog->computation(),
          [](const Computation& m) {
            std::vector<SeqStep> out;
            if (auto st = step_leftmost(m)) out.push_back(std::move(*st));
            return out;
          },
          [](const Computation& m) { return pretty(m); });
    }
    return trace<Computation, SeqStep>(
        s, prog->computation(), [](const Computation& m) { return step_seq(m); },
        [](const Computation& m) { return pretty(m); });
  }
  if (s.opts().flat) {
    auto flat = to_flat(prog->process());
    if (!flat) return s.fail(kTypeFailure, "error: --flat needs a process made only of run leaves and ||");
    return trace<FlatProcess, FlatStep>(
        s, *flat, [](const FlatProcess& p) { return step_flat(p); },
        [](const FlatProcess& p) { return pretty(p); });
  }
  return trace<Process, ProcStep>(
      s, prog->process(), [](const Process& p) { return step_proc(p); },
      [](const Process& p) { return pretty(p); });
}

// ---------------------------------------------------------------------------
// explore

template <class Node, class Label, class Show>
int report_exploration(Session& s, const Exploration<Node, Label>& ex, bool verified, Show show) {
  const auto& g = ex.graph;
  const auto& v = ex.verdict;
  if (s.structured()) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      s.emit(Json{{"record", "node"}, {"id", i}, {"term", show(g.nodes[i])}, {"normal", g.is_sink(i)}});
    }
    for (const auto& e : g.edges) {
      s.emit(Json{{"record", "edge"}, {"src", e.src}, {"label", e.label.str()}, {"dst", e.dst}});
    }
    Json j{{"record", "verdict"},
           {"verdict", verdict_name(v.kind)},
           {"nodes", g.nodes.size()},
           {"edges", g.edges.size()},
           {"budget", g.budget}};
    if (v.kind == VerdictKind::SN) {
      j["max_steps"] = v.max_steps;
      j["normal_forms"] = v.normal_forms;
    } else if (v.kind == VerdictKind::NonSN) {
      j["cycle"] = v.cycle;
      j["witness_verified"] = verified;
    }
    s.emit(j);
  } else {
    s.line(std::string("verdict: ") + verdict_name(v.kind));
    s.line("nodes: " + std::to_string(g.nodes.size()) + ", edges: " + std::to_string(g.edges.size()));
    if (v.kind == VerdictKind::SN) {
      s.line("max_steps: " + std::to_string(v.max_steps));
      s.line("normal forms: " + std::to_string(v.normal_forms.size()));
      for (std::size_t id : v.normal_forms) s.line("  [" + std::to_string(id) + "] " + show(g.nodes[id]));
    } else if (v.kind == VerdictKind::NonSN) {
      s.line("cycle of length " + std::to_string(v.cycle.size()) +
             (verified ? " (witness verified)" : " (witness NOT verified)") + ":");
      for (std::size_t eid : v.cycle) {
        const auto& e = g.edges[eid];
        s.line("  " + std::to_string(e.src) + " -[" + e.label.str() + "]-> " + std::to_string(e.dst));
      }
      const auto& start = g.edges[v.cycle.front()].src;
      s.line("  at [" + std::to_string(start) + "] " + show(g.nodes[start]));
    } else {
      s.line("budget of " + std::to_string(g.budget) + " nodes exhausted without finding a cycle");
    }
  }
  return v.kind == VerdictKind::SN ? kOk : kNotNormalising;
}

int cmd_explore(Session& s) {
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  if (!prog->is_process()) {
    auto ex = explore(prog->computation(), s.budget());
    bool ok = ex.verdict.kind == VerdictKind::NonSN && verify_witness(ex);
    return report_exploration(s, ex, ok, [](const Computation& m) { return pretty(m); });
  }
  if (s.opts().flat) {
    auto flat = to_flat(prog->process());
    if (!flat) return s.fail(kTypeFailure, "error: --flat needs a process made only of run leaves and ||");
    auto ex = explore(*flat, s.budget());
    bool ok = ex.verdict.kind == VerdictKind::NonSN && verify_witness(ex);
    return report_exploration(s, ex, ok, [](const FlatProcess& p) { return pretty(p); });
  }
  auto ex = explore(prog->process(), s.budget());
  bool ok = ex.verdict.kind == VerdictKind::NonSN && verify_witness(ex);
  return report_exploration(s, ex, ok, [](const Process& p) { return pretty(p); });
}

// ---------------------------------------------------------------------------
// measures

void emit_leaf(Session& s, const LeafReport& leaf) {
  const auto& m = leaf.measures;
  if (s.structured()) {
    s.emit(Json{{"record", "leaf"},
                {"path", leaf.path},
                {"effect", effect_json(m.effect)},
                {"size_i", m.size_i},
                {"max_signals", m.max_signals},
                {"max_steps", m.max_steps}});
  } else {
    s.line("leaf " + leaf.path + ": size_i=" + std::to_string(m.size_i) +
           " max_signals=" + std::to_string(m.max_signals) + " max_steps=" + std::to_string(m.max_steps) +
           " effect=" + format_effect(m.effect));
  }
}

int cmd_measures(Session& s) {
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  MeasureCache cache(prog->signature, s.budget());
  try {
    if (!prog->is_process()) {
      infer_effects(prog->signature, Context(), prog->computation());
      LeafMeasures m = cache.leaf(prog->computation());
      emit_leaf(s, LeafReport{"root", prog->computation(), m});
      return kOk;
    }
    typecheck_process(TypingMode::Effects, prog->signature, Context(), prog->process());
    if (s.opts().flat) {
      auto flat = to_flat(prog->process());
      if (!flat) return s.fail(kTypeFailure, "error: --flat needs a process made only of run leaves and ||");
      auto report = flat_measures(*flat, cache);
      for (const auto& leaf : report.leaves) emit_leaf(s, leaf);
      const auto& t = report.totals;
      if (s.structured()) {
        s.emit(Json{{"record", "flat"}, {"size_i", t.size_i}, {"max_up", t.max_up}, {"max_run", t.max_run}});
      } else {
        s.line("flat: " + t.str());
      }
      return kOk;
    }
    auto report = proc_measures(prog->process(), cache);
    for (const auto& leaf : report.leaves) emit_leaf(s, leaf);
    const auto& t = report.totals;
    if (s.structured()) {
      s.emit(Json{{"record", "process"},
                  {"size_i", t.size_i},
                  {"max_up", t.max_up},
                  {"max_sh", t.max_sh},
                  {"max_run", t.max_run}});
    } else {
      s.line("process: " + t.str());
    }
    return kOk;
  } catch (const TypeError& e) {
    return s.fail(kTypeFailure, e.what());
  } catch (const MeasureUndefined& e) {
    return s.fail(kNotNormalising, std::string("error: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// audit

int cmd_audit(Session& s) {
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  if (!prog->is_process()) return s.fail(kTypeFailure, "error: audit needs a process");
  MeasureCache cache(prog->signature, s.budget());
  AuditReport report;
  if (s.opts().flat) {
    auto flat = to_flat(prog->process());
    if (!flat) return s.fail(kTypeFailure, "error: --flat needs a process made only of run leaves and ||");
    report = audit_lex_decrease(*flat, cache);
  } else {
    report = audit_lex_decrease(prog->process(), cache);
  }
  if (!report.precondition_ok()) {
    for (const auto& why : report.precondition_failures) {
      if (s.structured()) {
        s.emit(Json{{"record", "precondition"}, {"failure", why}});
      } else {
        s.line("precondition failed: " + why);
      }
    }
    return kTypeFailure;
  }
  for (const auto& v : report.violations) {
    if (s.structured()) {
      s.emit(Json{{"record", "violation"},
                  {"src", v.src},
                  {"label", v.label},
                  {"dst", v.dst},
                  {"src_measures", v.src_measures},
                  {"dst_measures", v.dst_measures}});
    } else {
      s.line("violation: " + std::to_string(v.src) + " -[" + v.label + "]-> " + std::to_string(v.dst) + "  " +
             v.src_measures + " -> " + v.dst_measures);
    }
  }
  for (const auto& why : report.measure_failures) {
    if (s.structured()) {
      s.emit(Json{{"record", "measure-failure"}, {"detail", why}});
    } else {
      s.line("measure failure: " + why);
    }
  }
  const char* model = s.opts().flat ? "flat" : "tree";
  if (s.structured()) {
    s.emit(Json{{"record", "audit"},
                {"model", model},
                {"root_measures", report.root_measures},
                {"nodes", report.nodes},
                {"edges", report.edges},
                {"verdict", verdict_name(report.verdict)},
                {"quiescent", report.quiescent},
                {"violations", report.violations.size()},
                {"passed", report.passed()}});
  } else {
    s.line(std::string("model: ") + model + ", root measures " + report.root_measures);
    s.line("nodes: " + std::to_string(report.nodes) + ", edges: " + std::to_string(report.edges) +
           ", verdict: " + verdict_name(report.verdict));
    s.line(report.passed() ? "every edge decreases" : "audit FAILED");
  }
  if (!report.quiescent) return kNotNormalising;
  return report.passed() ? kOk : kAuditViolation;
}

// ---------------------------------------------------------------------------
// shapes

int cmd_shapes(Session& s) {
  auto prog = s.load();
  if (!prog) return kTypeFailure;
  if (!prog->is_process()) return s.fail(kTypeFailure, "error: shapes needs a process");
  ParallelShape root = shape_of(prog->process());
  auto ex = explore(root, s.budget());
  if (!ex.strongly_normalising()) {
    return s.fail(kNotNormalising, std::string("error: shape exploration verdict ") +
                                       verdict_name(ex.verdict.kind));
  }
  const auto& g = ex.graph;
  // One longest reduction sequence, always taking the first successor that
  // keeps the remaining length maximal.
  std::vector<std::pair<std::string, std::size_t>> path;
  std::size_t cur = 0;
  while (!g.out_edges[cur].empty()) {
    for (std::size_t eid : g.out_edges[cur]) {
      const auto& e = g.edges[eid];
      if (ex.longest[e.dst] + 1 == ex.longest[cur]) {
        path.emplace_back(e.label.str(), e.dst);
        cur = e.dst;
        break;
      }
    }
  }
  if (s.structured()) {
    s.emit(Json{{"record", "shape"}, {"shape", format_shape(root)}});
    for (std::size_t i = 0; i < path.size(); ++i) {
      s.emit(Json{{"record", "step"},
                  {"n", i + 1},
                  {"label", path[i].first},
                  {"shape", format_shape(g.nodes[path[i].second])}});
    }
    s.emit(Json{{"record", "summary"},
                {"max_sh", ex.verdict.max_steps},
                {"nodes", g.nodes.size()},
                {"edges", g.edges.size()}});
  } else {
    s.line("shape: " + format_shape(root));
    for (std::size_t i = 0; i < path.size(); ++i) {
      s.line(std::to_string(i + 1) + ". [" + path[i].first + "] " + format_shape(g.nodes[path[i].second]));
    }
    s.line("max_sh: " + std::to_string(ex.verdict.max_steps) + " (" + std::to_string(g.nodes.size()) +
           " shapes, " + std::to_string(g.edges.size()) + " edges)");
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& opts) {
  sub->add_option("file", opts.file, "input .aeff file")->required();
  sub->add_option("--budget", opts.budget, "node budget (explore) or step budget (run)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"human", "structured"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"aeff: type checker, evaluator and termination explorer for .aeff programs", "aeff"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "type-check a program");
  add_common(check, opts);
  check->add_option("--mode", opts.mode, "typing mode")->check(CLI::IsMember({"skeletal", "effects"}));

  auto* run_cmd = app.add_subcommand("run", "print a reduction trace");
  add_common(run_cmd, opts);
  run_cmd->add_option("--strategy", opts.strategy, "which reduct to follow")
      ->check(CLI::IsMember({"all", "leftmost", "random"}));
  run_cmd->add_option("--seed", opts.seed, "seed for the random strategy");
  run_cmd->add_flag("--flat", opts.flat, "use the flat list model for processes");

  auto* explore_cmd = app.add_subcommand("explore", "build the reduction graph and report a verdict");
  add_common(explore_cmd, opts);
  explore_cmd->add_flag("--flat", opts.flat, "use the flat list model for processes");

  auto* measures_cmd = app.add_subcommand("measures", "report termination measures");
  add_common(measures_cmd, opts);
  measures_cmd->add_flag("--flat", opts.flat, "use the flat list model for processes");

  auto* audit_cmd = app.add_subcommand("audit", "check lexicographic decrease on every edge");
  add_common(audit_cmd, opts);
  audit_cmd->add_flag("--flat", opts.flat, "use the flat list model");

  auto* shapes_cmd = app.add_subcommand("shapes", "reduce the parallel shape of a process");
  add_common(shapes_cmd, opts);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("aeff");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Session session(opts, out, err);
  try {
    if (check->parsed()) return cmd_check(session);
    if (run_cmd->parsed()) return cmd_run(session);
    if (explore_cmd->parsed()) return cmd_explore(session);
    if (measures_cmd->parsed()) return cmd_measures(session);
    if (audit_cmd->parsed()) return cmd_audit(session);
    if (shapes_cmd->parsed()) return cmd_shapes(session);
  } catch (const Error& e) {
    return session.fail(kTypeFailure, std::string("error: ") + e.what());
  }
  return kUsage;
}

}  // namespace aeff::cli
