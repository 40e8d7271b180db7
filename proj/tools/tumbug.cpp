#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tumbug.hpp"

using namespace tumbug;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidValue, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tables come from TUMBUG_TABLES when set, else the built-in copies.
std::optional<std::string> table_file(const std::string& name) {
  const char* dir = std::getenv("TUMBUG_TABLES");
  if (!dir || !*dir) return std::nullopt;
  return std::string(dir) + "/" + name;
}

LegalityTable legality(const std::string& explicit_path) {
  if (!explicit_path.empty()) return parse_legality_table(read_input(explicit_path));
  if (auto p = table_file("legality.tbl")) return parse_legality_table(read_input(*p));
  return default_legality();
}

ModalTable modal_table() {
  if (auto p = table_file("modal_verbs.tbl")) return ModalTable(parse_concept_table(read_input(*p)));
  return default_modal_table();
}

RuleSet rules() {
  if (auto p = table_file("heuristics.rules")) return parse_rules(read_input(*p));
  return default_rules();
}

Diagram load(const std::string& path) { return parse(read_input(path)); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidValue, "cannot write " + path);
  out << text;
}

Roles parse_roles(const std::vector<std::string>& items) {
  Roles r;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidValue, "role must be name=value: " + it);
    r[it.substr(0, eq)] = it.substr(eq + 1);
  }
  return r;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (auto part : detail::split(s, ',')) out.emplace_back(detail::trim(part));
  return out;
}

template <class T>
T require(std::optional<T> v, const std::string& what, const std::string& text) {
  if (!v) throw Error(ErrorCode::InvalidValue, "unknown " + what + ": " + text);
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tumbug diagram toolkit"};
  app.require_subcommand(1);
  int status = kOk;

  // validate
  std::string in_file, table_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram against the grammar");
  validate_cmd->add_option("file", in_file, "Diagram file or - for stdin")->required();
  validate_cmd->add_option("--table", table_path, "Legality table");
  validate_cmd->callback([&] {
    auto vs = validate(load(in_file), legality(table_path));
    for (const auto& v : vs) std::cout << format_violation(v) << '\n';
    if (vs.empty()) std::cout << "ok\n";
    status = vs.empty() ? kOk : kFailed;
  });

  // render
  std::string out_file;
  RenderOptions ropts;
  auto* render_cmd = app.add_subcommand("render", "Draw a diagram as SVG");
  render_cmd->add_option("file", in_file, "Diagram file or - for stdin")->required();
  render_cmd->add_option("-o,--output", out_file, "SVG output (default stdout)");
  render_cmd->add_flag("--color", ropts.color, "Color-code by role");
  render_cmd->add_option("--width", ropts.width);
  render_cmd->add_option("--height", ropts.height);
  render_cmd->add_option("--table", table_path, "Legality table");
  render_cmd->callback([&] {
    auto d = load(in_file);
    auto vs = validate(d, legality(table_path));
    if (!vs.empty()) {
      for (const auto& v : vs) std::cerr << format_violation(v) << '\n';
      status = kFailed;
      return;
    }
    write_output(out_file, render(d, ropts, legality(table_path)));
  });

  // template
  auto* tmpl = app.add_subcommand("template", "Emit a diagram template");
  tmpl->require_subcommand(1);
  std::vector<std::string> role_args;
  std::string name_arg;
  bool comprehensive = false;

  auto* prim = tmpl->add_subcommand("primitive", "Primitive act");
  prim->add_option("act", name_arg, "ATRANS, PTRANS, MTRANS, ...")->required();
  prim->add_option("--role", role_args, "name=value");
  prim->add_flag("--comprehensive", comprehensive, "Add ownership states (ATRANS)");
  prim->callback([&] {
    auto act = require(primitive_act_from_string(name_arg), "primitive act", name_arg);
    std::cout << serialize(build_primitive(act, parse_roles(role_args), {comprehensive}));
  });

  auto* pat = tmpl->add_subcommand("pattern", "Basic sentence pattern");
  pat->add_option("pattern", name_arg, "A, S, E, C, T or W, or a full name")->required();
  pat->add_option("--role", role_args, "name=value");
  pat->callback([&] {
    auto p = require(basic_pattern_from_string(name_arg), "pattern", name_arg);
    std::cout << serialize(build_pattern(p, parse_roles(role_args)));
  });

  std::string tense = "present", aspect = "simple", continuation = "stops", actor = "I", action = "act";
  auto* asp = tmpl->add_subcommand("aspect", "Tense and aspect timeline");
  asp->add_option("--tense", tense);
  asp->add_option("--aspect", aspect);
  asp->add_option("--continuation", continuation);
  asp->add_option("--actor", actor);
  asp->add_option("--action", action);
  asp->callback([&] {
    AspectSpec spec{require(tense_from_string(tense), "tense", tense), require(aspect_from_string(aspect), "aspect", aspect),
                    require(continuation_from_string(continuation), "continuation", continuation)};
    std::cout << serialize(build_aspect(spec, actor, action));
  });

  SyllogismTerms terms{"men", "mortal", "Socrates", "mortality"};
  int step = 3;
  bool swap = false;
  auto* syl = tmpl->add_subcommand("syllogism", "Syllogism step");
  syl->add_option("form", name_arg, "Barbara, Celarent or Darii")->required();
  syl->add_option("--major", terms.major);
  syl->add_option("--predicate", terms.predicate);
  syl->add_option("--minor", terms.minor);
  syl->add_option("--attribute", terms.attribute);
  syl->add_option("--step", step, "1, 2 or 3")->check(CLI::Range(1, 3));
  syl->add_flag("--swap", swap, "State the premises in the other order");
  syl->callback([&] {
    auto f = require(syllogism_form_from_string(name_arg), "syllogism", name_arg);
    std::cout << serialize(build_syllogism(f, terms, swap)[static_cast<std::size_t>(step - 1)]);
  });

  std::vector<double> operands;
  auto* arith = tmpl->add_subcommand("arithmetic", "Arithmetic as data flow");
  arith->add_option("op", name_arg, "+ - * /")->required();
  arith->add_option("inputs", operands)->required();
  arith->callback([&] {
    auto a = build_arithmetic(name_arg, operands);
    std::cerr << "result " << detail::format_number(a.result) << '\n';
    std::cout << serialize(a.diagram);
  });

  FlowSpec flow;
  std::string flow_kind = "sequential", statements = "S1,S2,S3,S4";
  auto* fc = tmpl->add_subcommand("flowchart", "Program as a state diagram");
  fc->add_option("kind", flow_kind, "sequential, loop or branch")->required();
  fc->add_option("--statements", statements);
  fc->add_option("--body-begin", flow.body_begin);
  fc->add_option("--body-end", flow.body_end);
  fc->add_option("--iterations", flow.iterations);
  fc->add_option("--cond", flow.cond);
  fc->add_flag("--else", flow.take_else);
  fc->callback([&] {
    flow.kind = require(flow_kind_from_string(flow_kind), "flow kind", flow_kind);
    flow.statements = split_list(statements);
    auto f = build_flowchart(flow);
    std::cerr << "schedule " << detail::join(f.schedule, ",") << '\n';
    std::cout << serialize(f.diagram);
  });

  std::string agent, object, appendage;
  auto* voice_cmd = tmpl->add_subcommand("voice", "Active or passive clause");
  voice_cmd->add_option("action", action)->required();
  voice_cmd->add_option("--agent", agent, "Omit for passive voice");
  voice_cmd->add_option("--object", object)->required();
  voice_cmd->add_option("--appendage", appendage);
  voice_cmd->callback([&] {
    std::cout << serialize(agent.empty() ? build_passive(action, object, appendage)
                                         : build_active(agent, action, object, appendage));
  });

  // match
  std::string context_file, context_word, context_meaning, lexicon_file;
  auto* match_cmd = app.add_subcommand("match", "Rank candidate words for a context");
  match_cmd->add_option("--context", context_file, "Context table")->required();
  match_cmd->add_option("--row", context_word, "Context row word (default: first row)");
  match_cmd->add_option("--meaning", context_meaning, "Context row meaning");
  match_cmd->add_option("--lexicon", lexicon_file, "Candidate table")->required();
  match_cmd->callback([&] {
    auto ctx = parse_concept_table(read_input(context_file));
    const TableRow* row = nullptr;
    if (context_word.empty()) {
      if (ctx.rows.empty()) throw Error(ErrorCode::InvalidTable, "context table has no rows");
      row = &ctx.rows.front();
    } else {
      for (const auto& r : ctx.rows)
        if (r.word == context_word && (context_meaning.empty() || r.meaning == context_meaning)) {
          row = &r;
          break;
        }
      if (!row) throw Error(ErrorCode::InvalidValue, "no context row " + context_word);
    }
    for (const auto& w : select_word(row->vector, parse_concept_table(read_input(lexicon_file)))) {
      std::cout << w.word;
      if (!w.meaning.empty()) std::cout << " (" << w.meaning << ")";
      std::cout << ' ' << w.count << (w.tied ? " tied" : "") << '\n';
    }
  });

  // modal
  std::string verb, meaning;
  auto* modal_cmd = app.add_subcommand("modal", "Modal concepts of a verb");
  modal_cmd->add_option("verb", verb)->required();
  modal_cmd->add_option("meaning", meaning)->required();
  modal_cmd->callback([&] {
    for (const auto& c : modal_table().concepts(verb, meaning))
      std::cout << c.name << (c.implied ? " (implied)" : "") << '\n';
  });

  // heuristics
  std::vector<std::string> trigger_args;
  std::string check_file;
  auto* heur = app.add_subcommand("heuristics", "Required building blocks for sentence triggers");
  heur->add_option("--trigger", trigger_args, "tag or tag:word")->required();
  heur->add_option("--check", check_file, "Diagram to check");
  heur->callback([&] {
    std::vector<Trigger> ts;
    for (const auto& t : trigger_args) {
      auto colon = t.find(':');
      auto tag = t.substr(0, colon);
      ts.push_back({require(trigger_tag_from_string(tag), "trigger", tag),
                    colon == std::string::npos ? "" : t.substr(colon + 1)});
    }
    auto rs = rules();
    auto req = requirements_for(ts, rs);
    if (check_file.empty()) {
      for (const auto& k : req.mandatory) std::cout << "must " << k << '\n';
      for (const auto& k : req.advisory) std::cout << "may " << k << '\n';
      return;
    }
    auto report = check(load(check_file), req);
    for (const auto& item : report.items)
      std::cout << (item.mandatory ? "must " : "may ") << item.kind << (item.present ? " present" : " missing") << '\n';
    status = report.satisfied() ? kOk : kFailed;
  });

  // classify
  std::string block_name;
  auto* cls = app.add_subcommand("classify", "SCOVA class of a building block");
  cls->add_option("block", block_name)->required();
  cls->callback([&] { std::cout << to_string(scova_classify(block_name)) << '\n'; });

  // query
  std::string owner, attr, marker;
  auto* query_cmd = app.add_subcommand("query", "Resolve an attribute value");
  query_cmd->add_option("file", in_file)->required();
  query_cmd->add_option("--owner", owner);
  query_cmd->add_option("--attr", attr);
  query_cmd->add_option("--marker", marker);
  query_cmd->callback([&] {
    auto d = load(in_file);
    if (!marker.empty()) {
      std::cout << format_value(resolve_query(d, marker)) << '\n';
    } else {
      if (owner.empty() || attr.empty()) throw CLI::ValidationError("query", "--owner and --attr, or --marker");
      std::cout << format_value(resolve_query(d, owner, attr)) << '\n';
    }
  });

  // trace
  std::string schedule, start;
  auto* trace_cmd = app.add_subcommand("trace", "Walk a program state diagram");
  trace_cmd->add_option("file", in_file)->required();
  trace_cmd->add_option("--schedule", schedule, "Comma-separated tube labels taken at forks");
  trace_cmd->add_option("--start", start);
  trace_cmd->callback([&] {
    auto d = load(in_file);
    auto trace = trace_program(d, split_list(schedule), start.empty() ? std::nullopt : std::optional<std::string>(start));
    std::cout << detail::join(trace, " ") << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.span().line << ", columns " << e.span().begin << "-" << e.span().end << ": "
              << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidDiagram ? kFailed : kUsage;
  }
  return status;
}
