// Builds a small scene in code, checks it and writes it out as text and SVG.

#include <fstream>
#include <iostream>

#include "tumbug.hpp"

using namespace tumbug;

int main() {
  Diagram d;
  d.add_element(make_element(ElementKind::PhysicalObjectCircle, "Tom", "tom"));
  d.add_element(make_element(ElementKind::PhysicalObjectCircle, "ball", "ball"));
  d.add_element(make_element(ElementKind::PhysicalObjectCircle, "Ray", "ray"));
  auto throw_arrow = make_edge(EdgeKind::Motion, std::string("tom"), std::string("ray"), "throw", "m1");
  throw_arrow.moves = "ball";
  d.add_edge(throw_arrow);
  d.bind_attribute("ball", tumbug::bind("color", Text{"red"}));

  auto violations = validate(d);
  for (const auto& v : violations) std::cerr << format_violation(v) << '\n';
  if (!violations.empty()) return 1;

  std::cout << serialize(d);
  std::ofstream("throw.svg") << render(d, {.color = true});
  std::cerr << "wrote throw.svg\n";
}
