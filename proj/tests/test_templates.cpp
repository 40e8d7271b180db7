#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tumbug;

namespace {

const Roles kRoles{{"agent", "Ann"}, {"object", "ball"}, {"recipient", "Bob"}, {"source", "radio"}};

template <class Pred>
std::size_t count_elements(const Diagram& d, Pred p) {
  std::size_t n = 0;
  for (const auto& [_, e] : d.elements())
    if (p(e)) ++n;
  return n;
}

template <class Pred>
std::size_t count_edges(const Diagram& d, Pred p) {
  std::size_t n = 0;
  for (const auto& [_, e] : d.edges())
    if (p(e)) ++n;
  return n;
}

}  // namespace

TEST(Primitive, AllActsValidate) {
  for (auto a : kAllPrimitiveActs) {
    auto d = build_primitive(a, kRoles);
    EXPECT_TRUE(validate(d).empty()) << to_string(a);
    EXPECT_EQ(primitive_act_from_string(to_string(a)), a);
  }
  EXPECT_TRUE(validate(build_primitive(PrimitiveAct::ATRANS, kRoles, {true})).empty());
}

TEST(Primitive, MissingRole) {
  try {
    build_primitive(PrimitiveAct::MTRANS, {{"agent", "Ann"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingRole);
  }
}

TEST(Primitive, MtransHasAttendRingOnDataMotion) {
  auto d = build_primitive(PrimitiveAct::MTRANS, {{"agent", "A"}, {"recipient", "B"}});
  std::size_t rings = 0;
  for (const auto& [_, e] : d.elements()) {
    if (e.kind != ElementKind::AttendRing) continue;
    ++rings;
    const auto* edge = d.find_edge(std::get<AttendRingPayload>(e.payload).edge);
    ASSERT_NE(edge, nullptr);
    EXPECT_EQ(edge->kind, EdgeKind::Motion);
    EXPECT_EQ(d.find_element(edge->moves)->kind, ElementKind::DataObjectCircle);
  }
  EXPECT_EQ(rings, 1u);
}

TEST(Primitive, SpeakHasSoundModality) {
  auto d = build_primitive(PrimitiveAct::SPEAK, {{"agent", "A"}});
  EXPECT_EQ(count_elements(d, [](const Element& e) { return e.kind == ElementKind::AttendRing; }), 0u);
  bool found = false;
  for (const auto& b : d.bindings())
    found |= b.binding.attribute == "modality" && b.binding.value == Value{Text{"sound"}};
  EXPECT_TRUE(found);
}

TEST(Primitive, PtransTransitive) {
  auto d = build_primitive(PrimitiveAct::PTRANS_T, kRoles);
  EXPECT_EQ(count_elements(d, [](const Element& e) { return is_object_circle(e.kind); }), 2u);
  EXPECT_EQ(count_edges(d, [](const Edge& e) { return e.kind == EdgeKind::Motion; }), 1u);
}

TEST(Primitive, GraspUsesEndEffector) {
  auto d = build_primitive(PrimitiveAct::GRASP, kRoles);
  const auto* hand = d.find_element("effector");
  ASSERT_NE(hand, nullptr);
  EXPECT_EQ(std::get<ObjectPayload>(hand->payload).part_of, "part");
  EXPECT_EQ(count_edges(d, [](const Edge& e) { return e.kind == EdgeKind::Force && e.source == "effector"; }), 1u);
}

TEST(Pattern, AllPatternsValidate) {
  Roles r{{"subject", "s"}, {"attribute", "diligent"}, {"set", "scholars"},
          {"object", "o"},  {"recipient", "r"},        {"object2", "o2"}};
  for (auto p : kAllBasicPatterns) EXPECT_TRUE(validate(build_pattern(p, r)).empty()) << to_string(p);
  for (auto code : {"A", "S", "E", "C", "T", "W"}) EXPECT_TRUE(basic_pattern_from_string(code).has_value());
}

TEST(Pattern, Superset) {
  auto d = build_pattern(BasicPattern::SupersetPattern, {{"subject", "students"}, {"set", "scholars"}});
  auto parent = d.parent_of("subject");
  ASSERT_TRUE(parent);
  EXPECT_EQ(d.find_element(*parent)->label, "scholars");
  EXPECT_EQ(d.find_element(*parent)->kind, ElementKind::AggregationBox);
}

TEST(Pattern, Attribute) {
  auto d = build_pattern(BasicPattern::AttributePattern, {{"subject", "students"}, {"attribute", "diligent"}});
  EXPECT_EQ(resolve_query(d, "subject", "diligent"), Value{Text{"true"}});
}

TEST(Pattern, Swap) {
  auto d = build_pattern(BasicPattern::Swap,
                         {{"subject", "Ann"}, {"recipient", "Bob"}, {"object", "pen"}, {"object2", "cup"}});
  EXPECT_EQ(count_elements(d, [](const Element& e) { return is_nonquan(e.kind); }), 4u);
  EXPECT_EQ(count_edges(d, [](const Edge& e) { return e.kind == EdgeKind::Motion && e.source && e.target; }), 2u);
}

namespace {

const TimeAnchorPayload& anchor(const Diagram& d, const std::string& id) {
  return std::get<TimeAnchorPayload>(d.find_element(id)->payload);
}

}  // namespace

TEST(Aspect, TwelveConfigurationsValidate) {
  for (auto t : {Tense::Past, Tense::Present, Tense::Future})
    for (auto a : {Aspect::Simple, Aspect::Progressive, Aspect::Perfect, Aspect::PerfectProgressive})
      for (auto c : {Continuation::Stops, Continuation::Continues, Continuation::Both})
        EXPECT_TRUE(validate(build_aspect({t, a, c}, "Ken", "call")).empty());
}

TEST(Aspect, PastSimpleBeforeNow) {
  auto d = build_aspect({Tense::Past, Aspect::Simple}, "Ken", "call");
  const auto& ev = anchor(d, "event");
  EXPECT_LT(ev.end.value_or(ev.offset), 0);
  EXPECT_EQ(anchor(d, "now").offset, 0);
}

TEST(Aspect, PresentPerfectReferenceIsNow) {
  auto d = build_aspect({Tense::Present, Aspect::Perfect}, "I", "eat");
  EXPECT_EQ(anchor(d, "reference").offset, anchor(d, "now").offset);
  EXPECT_LT(anchor(d, "event").offset, 0);
}

TEST(Aspect, FuturePerfectProgressiveBoth) {
  auto d = build_aspect({Tense::Future, Aspect::PerfectProgressive, Continuation::Both}, "I", "work");
  ASSERT_EQ(d.groups().size(), 1u);
  const auto& g = d.groups().begin()->second;
  EXPECT_EQ(g.kind, GroupKind::SplitTime);
  EXPECT_EQ(g.members.size(), 2u);
  EXPECT_EQ(d.find_element(g.junction)->kind, ElementKind::XorBox);
}

TEST(Aspect, ProgressiveSpansReference) {
  for (auto t : {Tense::Past, Tense::Present, Tense::Future}) {
    auto d = build_aspect({t, Aspect::Progressive}, "I", "eat");
    const auto& ev = anchor(d, "event");
    ASSERT_TRUE(ev.end);
    EXPECT_LT(ev.offset, *ev.end);
    if (t == Tense::Present) {
      EXPECT_TRUE(ev.offset < 0 && *ev.end > 0);
    }
  }
}

TEST(Syllogism, BarbaraFinalHasRelationshipMarker) {
  auto steps = build_syllogism(SyllogismForm::Barbara, {"men", "mortal", "Socrates", "mortality"});
  EXPECT_EQ(count_edges(steps[1], [](const Edge& e) { return e.kind == EdgeKind::Relationship; }), 0u);
  EXPECT_EQ(count_edges(steps[2], [](const Edge& e) { return e.kind == EdgeKind::Relationship; }), 1u);
  EXPECT_EQ(resolve_query(steps[2], "minor", "mortality"), Value{Text{"mortal"}});
  EXPECT_EQ(steps[2].parent_of("minor"), std::optional<std::string>("major"));
}

TEST(Syllogism, PremiseOrderInvariance) {
  for (auto f : {SyllogismForm::Barbara, SyllogismForm::Celarent, SyllogismForm::Darii}) {
    SyllogismTerms t{"men", "mortal", "Socrates", "mortality"};
    auto a = build_syllogism(f, t, false), b = build_syllogism(f, t, true);
    EXPECT_EQ(serialize(a[2]), serialize(b[2])) << to_string(f);
    EXPECT_NE(serialize(a[0]), serialize(b[0])) << to_string(f);
  }
}

TEST(Syllogism, Celarent) {
  auto s = build_syllogism(SyllogismForm::Celarent, {"reptiles", "fur", "snakes", ""});
  const auto& d = s[2];
  EXPECT_EQ(d.parent_of("minor"), std::optional<std::string>("major"));
  EXPECT_EQ(d.find_element("minor")->label, "snakes");
  const auto* shade = d.find_element("allowed");
  ASSERT_NE(shade, nullptr);
  EXPECT_EQ(shade->kind, ElementKind::Marker2D);
  EXPECT_EQ(std::get<MarkerPayload>(shade->payload).on, "major");
  // The fur set sits outside the reptiles set, so the shading excludes it.
  EXPECT_FALSE(d.parent_of("predicate"));
  const auto& major = *d.find_element("major")->position;
  const auto& fur = *d.find_element("predicate")->position;
  EXPECT_TRUE(fur.x >= major.x + major.w || major.x >= fur.x + fur.w);
}

TEST(Syllogism, DariiOverlap) {
  auto s = build_syllogism(SyllogismForm::Darii, {"rabbits", "furry", "pets", ""});
  for (const auto& d : s) EXPECT_TRUE(validate(d).empty());
  const auto& d = s[2];
  EXPECT_EQ(d.parent_of("major"), std::optional<std::string>("predicate"));
}

TEST(Arithmetic, Addition) {
  auto a = build_arithmetic("+", {1, 2});
  EXPECT_EQ(a.result, 3);
  EXPECT_EQ(a.diagram.find_element("result")->label, "3");
  EXPECT_EQ(a.diagram.find_element("result")->kind, ElementKind::DataObjectCircle);
  EXPECT_EQ(build_arithmetic("+", {0, 0}).result, 0);
  EXPECT_TRUE(validate(a.diagram).empty());
  bool labeled = false;
  for (const auto& [_, e] : a.diagram.edges()) labeled |= e.kind == EdgeKind::Causation && e.label == "+";
  EXPECT_TRUE(labeled);
}

TEST(Arithmetic, MultiplicationOracle) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    double x = u(rng), y = u(rng);
    EXPECT_EQ(build_arithmetic("*", {x, y}).result, x * y);
  }
}

TEST(Arithmetic, Errors) {
  EXPECT_THROW(build_arithmetic("/", {1, 0}), Error);
  try {
    build_arithmetic("^", {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedOperator);
  }
}

TEST(Flowchart, Traces) {
  std::vector<std::string> s = {"S1", "S2", "S3", "S4"};
  EXPECT_EQ(build_flowchart({FlowKind::Sequential, s}).trace, s);

  FlowSpec loop{FlowKind::Loop, s};
  loop.body_begin = 1;
  loop.body_end = 2;
  loop.iterations = 2;
  EXPECT_EQ(build_flowchart(loop).trace, (std::vector<std::string>{"S1", "S2", "S3", "S2", "S3", "S4"}));

  FlowSpec branch{FlowKind::Branch, s};
  branch.take_else = true;
  EXPECT_EQ(build_flowchart(branch).trace, (std::vector<std::string>{"S1", "S3", "S4"}));
  branch.take_else = false;
  EXPECT_EQ(build_flowchart(branch).trace, (std::vector<std::string>{"S1", "S2", "S4"}));
}

TEST(Flowchart, ValidAndTraceable) {
  FlowSpec loop{FlowKind::Loop, {"S1", "S2", "S3", "S4"}};
  loop.iterations = 3;
  auto f = build_flowchart(loop);
  EXPECT_TRUE(validate(f.diagram).empty());
  EXPECT_EQ(trace_program(f.diagram, f.schedule), f.trace);
  EXPECT_THROW(trace_program(f.diagram, {"repeat"}), Error);
  EXPECT_THROW(trace_program(f.diagram, {"sideways"}), Error);
}

TEST(Flowchart, Errors) {
  try {
    build_flowchart({FlowKind::Sequential, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyProgram);
  }
  FlowSpec bad{FlowKind::Loop, {"S1", "S2"}};
  bad.body_end = 5;
  EXPECT_THROW(build_flowchart(bad), Error);
}

TEST(Voice, PassiveAndActive) {
  auto p = build_passive("kicked", "ball");
  EXPECT_TRUE(validate(p).empty());
  EXPECT_EQ(count_elements(p, [](const Element& e) { return is_object_circle(e.kind) && e.label.empty(); }), 1u);
  EXPECT_EQ(count_elements(p, [](const Element& e) { return e.label == "foot"; }), 1u);

  auto a = build_active("He", "kicked", "ball");
  EXPECT_TRUE(validate(a).empty());
  EXPECT_EQ(a.find_element("agent")->label, "He");
  EXPECT_EQ(count_elements(a, [](const Element& e) { return is_object_circle(e.kind) && e.label.empty(); }), 0u);
}
