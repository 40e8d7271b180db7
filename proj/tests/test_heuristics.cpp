#include <gtest/gtest.h>

#include "support.hpp"

using namespace tumbug;

TEST(Heuristics, FourteenRules) {
  const auto& rs = default_rules();
  ASSERT_EQ(rs.rules.size(), 14u);
  for (std::size_t i = 0; i < rs.rules.size(); ++i) EXPECT_EQ(rs.rules[i].index, static_cast<int>(i) + 1);
  for (const auto& r : rs.rules) {
    for (const auto& k : r.must) EXPECT_TRUE(is_requirement_kind(k)) << k;
    for (const auto& k : r.may) EXPECT_TRUE(is_requirement_kind(k)) << k;
  }
  EXPECT_THROW(parse_rules("1 barrier must=MotionArrow\n"), Error);
}

TEST(Heuristics, Requirements) {
  EXPECT_TRUE(requirements_for({}).empty());

  auto because = requirements_for({{TriggerTag::CausalConnective, "because"}});
  EXPECT_TRUE(because.mandatory.count("CausationArrow"));
  auto so = requirements_for({{TriggerTag::CausalConnective, "so"}});
  EXPECT_FALSE(so.mandatory.count("CausationArrow"));
  EXPECT_TRUE(so.advisory.count("CausationArrow"));

  auto lift = requirements_for({{TriggerTag::LiftCarry, ""}});
  EXPECT_EQ(lift.mandatory, (std::set<std::string>{"ForceArrow", "MotionArrow"}));
  EXPECT_EQ(lift.cited_by.at("ForceArrow"), std::set<int>{2});
}

TEST(Heuristics, Monotone) {
  std::vector<Trigger> all;
  for (std::size_t i = 0; i < kTriggerTagNames.size(); ++i) all.push_back({static_cast<TriggerTag>(i), "because"});
  for (std::size_t mask = 0; mask < 256; ++mask) {
    std::vector<Trigger> sub;
    for (std::size_t i = 0; i < 8; ++i)
      if (mask & (1u << i)) sub.push_back(all[(i * 5 + mask) % all.size()]);
    auto small = requirements_for(sub);
    sub.push_back(all[mask % all.size()]);
    auto big = requirements_for(sub);
    for (const auto& k : small.mandatory) EXPECT_TRUE(big.mandatory.count(k));
  }
}

TEST(Heuristics, ThrowDownSatisfiesGravity) {
  auto d = parse(support::read_file(support::data_path("fixtures/throw_down.tb")));
  auto report = check(d, requirements_for({{TriggerTag::DownwardGravity, ""}}));
  EXPECT_TRUE(report.satisfied());
  EXPECT_TRUE(report.missing().empty());
}

TEST(Heuristics, EmptyDiagramMissesCausation) {
  auto report = check(Diagram{}, requirements_for({{TriggerTag::CausalConnective, "because"}}));
  EXPECT_FALSE(report.satisfied());
  EXPECT_EQ(report.missing(), std::vector<std::string>{"CausationArrow"});
}

TEST(Heuristics, CheckAgreesWithCensus) {
  support::DiagramGenerator g(8);
  for (int i = 0; i < 300; ++i) {
    auto d = g.next();
    std::set<std::string> census;
    for (const auto& [_, e] : d.elements()) {
      census.insert(std::string(to_string(block_of(e.kind))));
      if (is_location_box(e.kind)) census.insert("AnyBox");
      if (is_marker(e.kind)) census.insert("AnyMarker");
      if (is_object_circle(e.kind)) census.insert("AnyObjectCircle");
    }
    for (const auto& [_, e] : d.edges()) census.insert(std::string(to_string(block_of(e.kind))));
    for (const auto& [_, g] : d.groups()) census.insert(std::string(to_string(block_of(g.kind))));
    Requirement req;
    for (auto k : {"MotionArrow", "ForceArrow", "CausationArrow", "TimeArrow", "AnyBox", "AnyMarker",
                   "AnyObjectCircle", "DataObjectCircle", "Marker1D", "TimeAnchor", "CorrelationBox"})
      req.mandatory.insert(k);
    for (const auto& item : check(d, req).items) EXPECT_EQ(item.present, census.count(item.kind) > 0) << item.kind;
  }
}
