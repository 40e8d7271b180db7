#include <gtest/gtest.h>

#include <regex>

#include "support.hpp"

using namespace tumbug;

namespace {

std::size_t count(const std::string& s, const std::string& pattern) {
  std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

void expect_ids_once(const Diagram& d, const std::string& svg) {
  auto once = [&](const std::string& id) {
    EXPECT_EQ(svg.find("id=\"" + id + "\""), svg.rfind("id=\"" + id + "\"")) << id;
    EXPECT_NE(svg.find("id=\"" + id + "\""), std::string::npos) << id;
  };
  for (const auto& [id, _] : d.elements()) once(id);
  for (const auto& [id, _] : d.edges()) once(id);
  for (const auto& [id, _] : d.groups()) once(id);
}

}  // namespace

TEST(Render, Fox) {
  auto d = parse(support::read_file(support::data_path("fixtures/fox.tb")));
  auto svg = render(d);
  EXPECT_EQ(count(svg, "<circle "), 1u);
  EXPECT_EQ(count(svg, "class=\"binding\""), 3u);
  EXPECT_NE(svg.find("speed = quick"), std::string::npos);
}

TEST(Render, EmptyDiagram) {
  auto svg = render(Diagram{});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg "), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "class=\"element"), 0u);
}

TEST(Render, Deterministic) {
  auto d = parse(support::read_file(support::data_path("fixtures/throw_down.tb")));
  EXPECT_EQ(render(d), render(d));
  expect_ids_once(d, render(d));
}

TEST(Render, InvalidDiagramRejected) {
  auto d = parse(support::read_file(support::data_path("fixtures/time_attached.tb")));
  try {
    render(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDiagram);
  }
  RenderOptions bad;
  bad.width = 0;
  EXPECT_THROW(render(Diagram{}, bad), Error);
}

TEST(Render, DrawingConventions) {
  Diagram d;
  auto t = d.add_edge(make_edge(EdgeKind::Time, std::nullopt, std::nullopt, "", "t"));
  d.add_element(make_element(ElementKind::TimeAnchor, "0", TimeAnchorPayload{t, 0, std::nullopt, "now"}, "now"));
  d.add_element(make_element(ElementKind::DataObjectCircle, "msg", "msg"));
  d.add_element(make_element(ElementKind::PhysicalObjectCircle, "a", "a"));
  d.add_element(make_element(ElementKind::PhysicalObjectCircle, "b", "b"));
  d.add_element(make_element(ElementKind::SensorBar, "", "sensor"));
  d.add_element(make_element(ElementKind::Marker2D, "", MarkerPayload{"a", ""}, "shade"));
  d.add_edge(make_edge(EdgeKind::Relationship, std::string("a"), std::string("b"), "", "rel"));
  auto verbatim = make_element(ElementKind::VerbatimBox, "map", "map");
  verbatim.position = Placement{0, 400, 100, 60};
  d.add_element(verbatim);
  ASSERT_TRUE(validate(d).empty());
  auto svg = render(d);

  auto group = [&](const std::string& id) {
    auto at = svg.find("id=\"" + id + "\"");
    return svg.substr(at, svg.find("</g>", at) - at);
  };
  EXPECT_NE(group("t").find("marker-end"), std::string::npos);
  EXPECT_NE(group("t").find(">0</text>"), std::string::npos);
  EXPECT_NE(group("msg").find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(group("a").find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(group("sensor").find("_hatch-neg45"), std::string::npos);
  EXPECT_NE(group("shade").find("_hatch-pos45"), std::string::npos);
  EXPECT_NE(group("rel").find("marker-mid"), std::string::npos);
  EXPECT_NE(group("rel").find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(count(group("map"), "<rect "), 2u);
  expect_ids_once(d, svg);

  // Time runs down the left-hand side.
  std::smatch m;
  auto tg = group("t");
  ASSERT_TRUE(std::regex_search(tg, m, std::regex("x1=\"([0-9.]+)\" y1=\"([0-9.]+)\" x2=\"([0-9.]+)\" y2=\"([0-9.]+)\"")));
  EXPECT_EQ(m[1], m[3]);
  EXPECT_LT(std::stod(m[2]), std::stod(m[4]));
  EXPECT_LT(std::stod(m[1]), 100.0);
}

TEST(Render, ColorCodingIsOptional) {
  auto d = build_pattern(BasicPattern::Transfer, {{"subject", "Tom"}, {"object", "bag"}, {"recipient", "Ray"}});
  RenderOptions o;
  auto plain = render(d, o);
  o.color = true;
  auto colored = render(d, o);
  EXPECT_NE(plain, colored);
  EXPECT_EQ(plain.find("#b8e6b8"), std::string::npos);
  EXPECT_NE(colored.find("#b8e6b8"), std::string::npos);
}

TEST(Render, AllTemplatesRender) {
  Roles r{{"agent", "A"}, {"object", "O"}, {"recipient", "B"}, {"source", "S"}};
  for (auto a : kAllPrimitiveActs) {
    auto d = build_primitive(a, r);
    auto svg = render(d);
    expect_ids_once(d, svg);
  }
  for (auto f : {SyllogismForm::Barbara, SyllogismForm::Celarent, SyllogismForm::Darii})
    for (const auto& d : build_syllogism(f, {"men", "mortal", "Socrates", "mortality"})) expect_ids_once(d, render(d));
}

TEST(Render, ValidRandomDiagramsRender) {
  support::DiagramGenerator g(77);
  int rendered = 0;
  for (int i = 0; i < 400; ++i) {
    auto d = g.next();
    if (!validate(d).empty()) continue;
    auto svg = render(d);
    EXPECT_EQ(svg, render(d));
    expect_ids_once(d, svg);
    ++rendered;
  }
  EXPECT_GT(rendered, 20);
}
