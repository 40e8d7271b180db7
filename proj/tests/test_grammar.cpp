#include <gtest/gtest.h>

#include "support.hpp"

using namespace tumbug;

namespace {

Element circle(std::string id, ElementKind k = ElementKind::PhysicalObjectCircle) {
  return make_element(k, id, id);
}

std::vector<ViolationCode> codes(const Diagram& d, const LegalityTable& t = default_legality()) {
  std::vector<ViolationCode> out;
  for (const auto& v : validate(d, t)) out.push_back(v.code);
  return out;
}

using Codes = std::vector<ViolationCode>;

}  // namespace

TEST(Legality, TimeEdgeIntoCircle) {
  Diagram d;
  d.add_element(circle("ball"));
  d.add_edge(make_edge(EdgeKind::Time, std::nullopt, std::string("ball"), "", "t"));
  EXPECT_EQ(codes(d), Codes{ViolationCode::TimeAttached});
}

TEST(Legality, ReflexiveMotionIsValid) {
  Diagram d;
  d.add_element(circle("man"));
  d.add_edge(make_edge(EdgeKind::Motion, std::string("man"), std::string("man"), "shave"));
  EXPECT_TRUE(validate(d).empty());
}

TEST(Legality, ForceSelfLoopIllegal) {
  Diagram d;
  d.add_element(circle("rock"));
  d.add_edge(make_edge(EdgeKind::Force, std::string("rock"), std::string("rock")));
  EXPECT_EQ(codes(d), Codes{ViolationCode::IllegalSelfLoop});
}

TEST(Legality, MotionIntoNonquanIllegal) {
  Diagram d;
  d.add_element(circle("wall"));
  d.add_edge(make_edge(EdgeKind::Motion, std::nullopt, std::string("wall")));
  EXPECT_EQ(codes(d), Codes{ViolationCode::IllegalCombination});
}

TEST(Legality, TableTextRoundTrip) {
  auto text = format_legality_table(default_legality());
  EXPECT_EQ(parse_legality_table(text), default_legality());
  EXPECT_EQ(parse_legality_table(support::read_file(support::data_path("legality.tbl"))), default_legality());
  EXPECT_THROW(parse_legality_table("SolitaryArrow L L L L\n"), Error);
  EXPECT_THROW(parse_legality_table(text + "SelfLoop L L L L\n"), Error);
}

TEST(Legality, SolitaryNonquanCellControlsLoneObjects) {
  auto t = default_legality();
  t.set(Shape::SolitaryNonquan, EdgeKind::Time, false);
  Diagram d;
  d.add_element(circle("stone"));
  EXPECT_EQ(codes(d, t), Codes{ViolationCode::SolitaryNonquan});
  d.add_edge(make_edge(EdgeKind::Time, std::string("stone"), std::nullopt));
  t.set(Shape::ArrowOut, EdgeKind::Time, true);
  EXPECT_TRUE(codes(d, t).empty());
}

TEST(Validate, AttendRingNeedsDataMotion) {
  Diagram d;
  d.add_element(circle("a"));
  d.add_element(circle("b"));
  d.add_element(circle("rock"));
  auto m = make_edge(EdgeKind::Motion, std::string("a"), std::string("b"), "", "m");
  m.moves = "rock";
  d.add_edge(m);
  d.add_element(make_element(ElementKind::AttendRing, "", AttendRingPayload{"m"}, "ring"));
  EXPECT_EQ(codes(d), Codes{ViolationCode::AttendNotData});

  Diagram f;
  f.add_element(circle("a"));
  f.add_element(circle("b"));
  f.add_edge(make_edge(EdgeKind::Force, std::string("a"), std::string("b"), "", "f"));
  f.add_element(make_element(ElementKind::AttendRing, "", AttendRingPayload{"f"}, "ring"));
  EXPECT_EQ(codes(f), Codes{ViolationCode::AttendNotMotion});
}

TEST(Validate, DanglingPayloadReference) {
  Diagram d;
  d.add_element(make_element(ElementKind::Marker0D, "", MarkerPayload{"ghost", ""}, "m"));
  EXPECT_EQ(codes(d), Codes{ViolationCode::DanglingReference});
}

TEST(Validate, VerbatimNeedsPosition) {
  Diagram d;
  auto box = d.add_element(make_element(ElementKind::VerbatimBox, "", "v"));
  d.add_element(circle("x"), box);
  EXPECT_EQ(codes(d), Codes{ViolationCode::MissingPosition});
}

TEST(Validate, XorNeedsTwoAlternatives) {
  Diagram d;
  auto x = d.add_element(make_element(ElementKind::XorBox, "", "x"));
  d.add_element(circle("only"), x);
  EXPECT_EQ(codes(d), Codes{ViolationCode::XorTooFewAlternatives});
  d.add_element(circle("other"), x);
  EXPECT_TRUE(validate(d).empty());
}

TEST(Validate, StateDiagramRules) {
  Diagram d;
  d.add_element(make_element(ElementKind::StateCircle, "red", "red"));
  d.add_element(make_element(ElementKind::StateCircle, "green", "green"));
  d.add_edge(make_edge(EdgeKind::Tube, std::string("red"), std::string("green"), "", "t1"));
  Group g;
  g.id = "light";
  g.members = {"red", "green", "t1"};
  g.marker = "red";
  d.add_group(g);
  EXPECT_TRUE(validate(d).empty());

  Diagram bad = d;
  bad.add_element(circle("car"));
  Group g2 = g;
  g2.id = "light2";
  g2.members.push_back("car");
  g2.marker = "car";
  bad.add_group(g2);
  auto c = codes(bad);
  EXPECT_NE(std::find(c.begin(), c.end(), ViolationCode::StateMemberKind), c.end());
}

TEST(Validate, SplitTimeProbabilities) {
  Diagram d;
  d.add_edge(make_edge(EdgeKind::Time, std::nullopt, std::nullopt, "", "trunk"));
  d.add_edge(make_edge(EdgeKind::Time, std::nullopt, std::nullopt, "", "b1"));
  d.add_edge(make_edge(EdgeKind::Time, std::nullopt, std::nullopt, "", "b2"));
  d.add_element(make_element(ElementKind::XorBox, "", "fork"));
  Group g;
  g.id = "split";
  g.kind = GroupKind::SplitTime;
  g.members = {"b1", "b2"};
  g.trunk = "trunk";
  g.junction = "fork";
  g.probs = {0.25, 0.75};
  d.add_group(g);
  EXPECT_TRUE(validate(d).empty());

  g.id = "split2";
  g.probs = {0.5, 0.6};
  EXPECT_THROW(d.add_group(g), Error);
  d.insert_group_unchecked(g);
  auto c = codes(d);
  EXPECT_NE(std::find(c.begin(), c.end(), ViolationCode::SplitProbability), c.end());
}

TEST(Validate, RandomDiagramsNeverThrow) {
  support::DiagramGenerator g(3);
  for (int i = 0; i < 500; ++i) {
    auto d = g.next();
    auto v1 = validate(d);
    EXPECT_EQ(v1, validate(d));
    EXPECT_TRUE(std::is_sorted(v1.begin(), v1.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.code, a.ids) < std::tie(b.code, b.ids);
    }));
  }
}

TEST(Scova, Examples) {
  EXPECT_EQ(scova_classify("MotionArrow"), BasicKind::C);
  EXPECT_EQ(scova_classify("ValueBar"), BasicKind::V);
  EXPECT_EQ(scova_classify("PhysicalObjectCircle"), BasicKind::O);
  EXPECT_EQ(scova_classify("AttributeLine"), BasicKind::A);
  EXPECT_EQ(scova_classify("StateDiagram"), BasicKind::S);
  EXPECT_THROW(scova_classify("Unicorn"), Error);
  EXPECT_EQ(scova_classify("MotionArrow", {{Block::MotionArrow, BasicKind::S}}), BasicKind::S);
}

TEST(Scova, Generalization) {
  EXPECT_EQ(generalize(Block::AggregationBox), (std::set<Generalization>{Generalization::Nonquan, Generalization::IAM}));
  EXPECT_EQ(generalize(Block::ForceArrow), std::set<Generalization>{Generalization::ChangeArrow});
  EXPECT_EQ(generalize(Block::AttributeLine), std::set<Generalization>{Generalization::Other});
}

TEST(Query, DirectAndThroughRelationship) {
  Diagram d;
  d.add_element(circle("car"));
  d.bind_attribute("car", bind("color", Text{"red"}));
  EXPECT_EQ(resolve_query(d, "car", "color"), Value{Text{"red"}});
  EXPECT_EQ(resolve_query(d, "car", "price"), Value{Wildcard::DK});

  d.add_element(circle("grace"));
  d.add_element(circle("clothing"));
  d.bind_attribute("clothing", bind("color", Text{"green"}));
  d.add_edge(make_edge(EdgeKind::Relationship, std::string("grace"), std::string("clothing"), "wears"));
  EXPECT_EQ(resolve_query(d, "grace", "color"), Value{Text{"green"}});
  EXPECT_THROW(resolve_query(d, "nobody", "color"), Error);

  d.add_element(make_element(ElementKind::Marker0D, "", MarkerPayload{"car", "color"}, "q"));
  EXPECT_EQ(resolve_query(d, "q"), Value{Text{"red"}});
}
