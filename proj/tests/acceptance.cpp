// Prints one line per acceptance criterion; non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace tumbug;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Check scova_totality() {
  Check c;
  auto t0 = Clock::now();
  std::set<BasicKind> image;
  for (std::size_t i = 0; i < kBlockCount; ++i) {
    auto b = block_at(i);
    if (is_generalized(b)) continue;
    image.insert(scova_classify(b));
    c.expect(scova_classify(to_string(b)) == scova_classify(b), "name and enum disagree");
  }
  c.expect(image == std::set<BasicKind>{BasicKind::S, BasicKind::C, BasicKind::O, BasicKind::V, BasicKind::A},
           "image is not {S,C,O,V,A}");
  c.expect(seconds_since(t0) < 1.0, "over 1 s");
  return c;
}

// Minimal diagram showing one edge kind in one shape.
Diagram shape_diagram(Shape s, EdgeKind k) {
  Diagram d;
  auto circle = [&](const std::string& id) { d.add_element(make_element(ElementKind::PhysicalObjectCircle, id, id)); };
  std::optional<std::string> a = std::string("a"), b = std::string("b"), none;
  switch (s) {
    case Shape::SolitaryArrow: d.add_edge(make_edge(k, none, none, "", "e")); break;
    case Shape::SolitaryNonquan: circle("a"); break;
    case Shape::ArrowOut: circle("a"); d.add_edge(make_edge(k, a, none, "", "e")); break;
    case Shape::ArrowIn: circle("a"); d.add_edge(make_edge(k, none, a, "", "e")); break;
    case Shape::ArrowBetween:
      circle("a");
      circle("b");
      d.add_edge(make_edge(k, a, b, "", "e"));
      break;
    case Shape::SelfLoop: circle("a"); d.add_edge(make_edge(k, a, a, "", "e")); break;
  }
  return d;
}

Check legality_suite() {
  Check c;
  // Time only stands alone. Motion cannot arrive from nowhere, force cannot loop.
  auto expected_legal = [](Shape s, EdgeKind k) {
    if (s == Shape::SolitaryArrow || s == Shape::SolitaryNonquan) return true;
    switch (k) {
      case EdgeKind::Time: return false;
      case EdgeKind::Motion: return s != Shape::ArrowIn;
      case EdgeKind::Force: return s != Shape::SelfLoop;
      default: return true;
    }
  };
  auto expected_code = [](Shape s, EdgeKind k) {
    if (k == EdgeKind::Time) return ViolationCode::TimeAttached;
    if (s == Shape::SelfLoop) return ViolationCode::IllegalSelfLoop;
    return ViolationCode::IllegalCombination;
  };
  const auto file_table = parse_legality_table(support::read_file(support::data_path("legality.tbl")));
  int cells = 0;
  for (auto s : kAllShapes)
    for (auto k : kChangeEdgeKinds) {
      ++cells;
      auto where = std::string(to_string(s)) + "/" + std::string(to_string(k));
      c.expect(file_table.legal(s, k) == expected_legal(s, k), "table cell " + where);
      auto vs = validate(shape_diagram(s, k), file_table);
      if (expected_legal(s, k)) {
        c.expect(vs.empty(), "legal cell reported violations: " + where);
      } else {
        c.expect(vs.size() == 1 && vs[0].code == expected_code(s, k), "illegal cell gave wrong codes: " + where);
      }
    }
  c.expect(cells == 24, "expected 24 cells");
  return c;
}

Check lexical_selection() {
  Check c;
  auto ctx_table = parse_concept_table(support::read_file(support::data_path("fixtures/throw_contexts.tbl")));
  auto fr = parse_concept_table(support::read_file(support::data_path("fixtures/throw_fr.tbl")));
  const auto& ctx = ctx_table.find("baseball", "C1")->vector;
  c.expect(match_count(ctx, fr.find("lancer", "")->vector) == 2, "lancer != 2");
  c.expect(match_count(ctx, fr.find("jeter", "")->vector) == 1, "jeter != 1");
  auto ranked = select_word(ctx, fr);
  c.expect(!ranked.empty() && ranked[0].word == "lancer" && !ranked[0].tied, "lancer not selected");
  return c;
}

Check modal_rows() {
  Check c;
  auto split = [](const std::vector<ModalConcept>& cs, bool implied) {
    std::set<std::string> out;
    for (const auto& m : cs)
      if (m.implied == implied) out.insert(m.name);
    return out;
  };
  auto can = modal_concepts("can", "permission");
  c.expect(split(can, false) == std::set<std::string>{"Permission", "Request"} && split(can, true).empty(),
           "can (permission)");
  auto able = modal_concepts("be able to", "ability");
  c.expect(split(able, false) == std::set<std::string>{"Ability"} &&
               split(able, true) == std::set<std::string>{"Request"},
           "be able to (ability)");
  return c;
}

Check correlation() {
  Check c;
  CorrelationBoxPayload box;
  box.slots = {{"w1", "cup", "water"}, {"w2", "pitcher", "water"}};
  box.equations = {parse_equation("w1 = 100 - w2")};
  c.expect(evaluate_correlation(box, {{"w2", 25}}, "w1") == 75, "w2=25 does not give w1=75");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 100);
  for (int i = 0; i < 10000; ++i) {
    double w2 = u(rng);
    double w1 = evaluate_correlation(box, {{"w2", w2}}, "w1");
    c.expect(std::abs(w1 + w2 - 100) <= 1e-9, "w1 + w2 != 100");
    double back = evaluate_correlation(box, {{"w1", w1}}, "w2");
    c.expect(std::abs(back - w2) <= 1e-9, "inverse disagrees");
  }
  return c;
}

Check flowcharts() {
  Check c;
  std::vector<std::string> s = {"S1", "S2", "S3", "S4"};
  auto check = [&](const FlowSpec& spec, std::vector<std::string> want, const std::string& name) {
    auto f = build_flowchart(spec);
    c.expect(f.trace == want, name + " trace");
    c.expect(trace_program(f.diagram, f.schedule) == want, name + " retrace");
    c.expect(validate(f.diagram).empty(), name + " invalid");
  };
  check({FlowKind::Sequential, s}, s, "sequential");
  FlowSpec loop{FlowKind::Loop, s};
  loop.body_begin = 1;
  loop.body_end = 2;
  loop.iterations = 2;
  check(loop, {"S1", "S2", "S3", "S2", "S3", "S4"}, "loop");
  FlowSpec branch{FlowKind::Branch, s};
  branch.take_else = true;
  check(branch, {"S1", "S3", "S4"}, "branch");
  auto from_file = parse(support::read_file(support::data_path("fixtures/loop.tb")));
  c.expect(trace_program(from_file, {"repeat", "exit"}) == std::vector<std::string>{"S1", "S2", "S3", "S2", "S3", "S4"},
           "loop fixture");
  return c;
}

Check template_sweep() {
  Check c;
  auto t0 = Clock::now();
  int n = 0;
  auto clean = [&](const Diagram& d, const std::string& what) {
    ++n;
    c.expect(validate(d).empty(), what + " has violations");
  };
  Roles r{{"agent", "Ann"}, {"object", "ball"}, {"recipient", "Bob"}, {"source", "radio"},
          {"subject", "Ann"}, {"attribute", "tall"}, {"set", "people"}, {"object2", "cup"}};
  int prims = 0, pats = 0, aspects = 0, sylls = 0;
  for (auto a : kAllPrimitiveActs) {
    clean(build_primitive(a, r), std::string(to_string(a)));
    ++prims;
  }
  for (auto p : kAllBasicPatterns) {
    clean(build_pattern(p, r), std::string(to_string(p)));
    ++pats;
  }
  for (auto t : {Tense::Past, Tense::Present, Tense::Future})
    for (auto a : {Aspect::Simple, Aspect::Progressive, Aspect::Perfect, Aspect::PerfectProgressive}) {
      clean(build_aspect({t, a}, "Ken", "call"), std::string(to_string(t)) + " " + std::string(to_string(a)));
      ++aspects;
    }
  for (auto f : {SyllogismForm::Barbara, SyllogismForm::Celarent, SyllogismForm::Darii}) {
    for (const auto& d : build_syllogism(f, {"men", "mortal", "Socrates", "mortality"})) clean(d, std::string(to_string(f)));
    ++sylls;
  }
  c.expect(prims == 14 && pats == 6 && aspects == 12 && sylls == 3, "sweep size");
  c.expect(seconds_since(t0) < 5.0, "over 5 s");
  return c;
}

Check round_trip_and_fuzz() {
  Check c;
  auto t0 = Clock::now();
  support::DiagramGenerator g(31337);
  for (int i = 0; i < 1000; ++i) {
    auto d = g.next();
    auto text = serialize(d);
    try {
      auto back = parse(text);
      c.expect(back == d && serialize(back) == text, "round trip differs at diagram " + std::to_string(i));
    } catch (const Error& e) {
      c.expect(false, std::string("round trip threw: ") + e.what());
    }
  }
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    std::string s(rng() % 4097, '\0');
    for (auto& ch : s) ch = static_cast<char>(rng() % 256);
    try {
      parse(s);
    } catch (const ParseError&) {
    } catch (const std::exception& e) {
      c.expect(false, std::string("fuzz input raised non-parse error: ") + e.what());
    }
  }
  c.expect(seconds_since(t0) < 60.0, "over 60 s");
  return c;
}

Check barbara_invariance() {
  Check c;
  SyllogismTerms t{"men", "mortal", "Socrates", "mortality"};
  auto a = build_syllogism(SyllogismForm::Barbara, t, false);
  auto b = build_syllogism(SyllogismForm::Barbara, t, true);
  c.expect(a[2] == b[2], "final diagrams differ");
  c.expect(serialize(a[2]) == serialize(b[2]), "final text differs");
  c.expect(resolve_query(a[2], "minor", "mortality") == Value{Text{"mortal"}}, "conclusion not derivable");
  return c;
}

Check match_oracle() {
  Check c;
  const std::array<Truth, 3> all = {Truth::True, Truth::False, Truth::DC};
  auto oracle_cell = [](Truth a, Truth b) { return a == Truth::DC || b == Truth::DC || a == b; };
  for (auto a : all)
    for (auto b : all)
      c.expect(match_count(make_vector({"x"}, {{a, false}}), make_vector({"x"}, {{b, false}})) == (oracle_cell(a, b) ? 1 : 0),
               "pair table");

  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("a" + std::to_string(i));
  std::mt19937 rng(10);
  auto random_cells = [&] {
    std::vector<ConceptCell> cells;
    for (int i = 0; i < 8; ++i) cells.push_back({all[rng() % 3], rng() % 4 == 0});
    return cells;
  };
  for (int i = 0; i < 10000; ++i) {
    auto x = random_cells(), y = random_cells();
    int want = 0;
    for (int k = 0; k < 8; ++k) want += !x[k].implied && !y[k].implied && oracle_cell(x[k].value, y[k].value);
    int got = match_count(make_vector(names, x), make_vector(names, y));
    c.expect(got == want, "random vectors disagree with oracle");
    auto mutated = y;
    mutated[rng() % 8].value = Truth::DC;
    c.expect(match_count(make_vector(names, x), make_vector(names, mutated)) >= got, "DC lowered the count");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"scova-totality", scova_totality},
      {"legality-24-cells", legality_suite},
      {"lexical-selection", lexical_selection},
      {"modal-rows", modal_rows},
      {"correlation", correlation},
      {"flowchart-traces", flowcharts},
      {"template-sweep", template_sweep},
      {"round-trip-and-fuzz", round_trip_and_fuzz},
      {"barbara-premise-order", barbara_invariance},
      {"match-count-oracle", match_oracle},
  };
  int failed = 0, n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("threw: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << n << " " << name;
    if (!c.ok) std::cout << "  (" << c.why << ")";
    std::cout << '\n';
    failed += !c.ok;
  }
  std::cout << (n - failed) << "/" << n << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
