#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

#include "tumbug.hpp"

namespace tumbug::support {

#ifndef TUMBUG_DATA_DIR
#define TUMBUG_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& rel) { return std::string(TUMBUG_DATA_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Builds diagrams through the public API. Every diagram it returns was accepted
// by the constructors, so it is valid in the structural sense; grammar
// violations are allowed.
class DiagramGenerator {
 public:
  explicit DiagramGenerator(std::uint64_t seed) : rng_(seed) {}

  Diagram next() {
    Diagram d;
    ids_.clear();
    int meta = pick(0, 2);
    for (int i = 0; i < meta; ++i) d.set_meta(ident(), text());

    int n = pick(0, 14);
    for (int i = 0; i < n; ++i) {
      auto kind = kAllElementKinds[pick(0, static_cast<int>(kAllElementKinds.size()) - 1)];
      auto e = make_element(kind, chance(0.7) ? text() : "", payload(kind, d), fresh());
      if (chance(0.2)) e.position = Placement{real(), real(), std::fabs(real()), std::fabs(real())};
      std::optional<std::string> parent;
      if (chance(0.4)) parent = existing_element(d);
      attempt([&] { d.add_element(e, parent); });
    }
    for (int i = 0, m = pick(0, 3); i < m; ++i) {
      auto child = existing_element(d), parent = existing_element(d);
      attempt([&] { d.contain(child, parent); });
    }
    for (int i = 0, m = pick(0, 10); i < m; ++i) {
      Edge e = make_edge(kAllEdgeKinds[pick(0, 5)], maybe_element(d), maybe_element(d), chance(0.5) ? text() : "",
                         fresh());
      if (e.kind == EdgeKind::Force && chance(0.5)) e.role = chance(0.5) ? ForceRole::Exerts : ForceRole::ActedUpon;
      if (e.kind == EdgeKind::Motion && chance(0.5)) e.moves = existing_element(d);
      if (e.kind == EdgeKind::Relationship && chance(0.5)) e.attribute = text();
      attempt([&] { d.add_edge(e); });
    }
    for (int i = 0, m = pick(0, 2); i < m; ++i) {
      Group g;
      g.id = fresh();
      g.kind = chance(0.5) ? GroupKind::StateDiagram : GroupKind::SplitTime;
      for (int k = 0, c = pick(0, 4); k < c; ++k) g.members.push_back(existing_any(d));
      if (chance(0.5)) g.marker = existing_any(d);
      if (chance(0.3)) g.owner = existing_any(d);
      if (chance(0.3)) g.trunk = existing_any(d);
      if (chance(0.3)) g.junction = existing_any(d);
      if (chance(0.3)) {
        int parts = pick(1, 4);
        for (int k = 0; k < parts; ++k) g.probs.push_back(1.0 / parts);
      }
      attempt([&] { d.insert_group_unchecked(g); });
    }
    for (int i = 0, m = pick(0, 8); i < m; ++i) {
      auto owner = existing_any(d);
      AttributeBinding b{chance(0.1) ? std::nullopt : std::optional<std::string>(attr_name()), value()};
      attempt([&] { d.insert_binding_unchecked(owner, b); });
    }
    return d;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  double real() {
    switch (pick(0, 3)) {
      case 0: return pick(-100, 100);
      case 1: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng_);
      case 2: return std::uniform_real_distribution<double>(-1, 1)(rng_) * std::pow(10.0, pick(-30, 30));
      default: return pick(0, 1000) / 8.0;
    }
  }

  std::string ident() {
    static const std::string first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    static const std::string rest = first + "0123456789_-";
    std::string s(1, first[pick(0, static_cast<int>(first.size()) - 1)]);
    for (int i = 0, n = pick(0, 8); i < n; ++i) s += rest[pick(0, static_cast<int>(rest.size()) - 1)];
    return s;
  }

  std::string text() {
    static const std::vector<std::string> pieces = {"a", "Z", " ", "\"", "\\", "\n", "\t", "=", "#", ",", ":",
                                                    "é", "→", "0", "-", "(", ")", "[", "]", "DK", "\x01", "\x7f"};
    std::string s;
    for (int i = 0, n = pick(1, 10); i < n; ++i) s += pieces[pick(0, static_cast<int>(pieces.size()) - 1)];
    return s;
  }

  Value value() {
    switch (pick(0, 6)) {
      case 0: return Scalar{real(), chance(0.5) ? ident() : ""};
      case 1: return Text{text()};
      case 2: return ExistenceLevel{pick(0, 100) / 100.0};
      case 3: return range();
      case 4: return BallInRange{range()};
      case 5: {
        double a = pick(0, 50) / 100.0, b = a + pick(0, 25) / 100.0, c = b + pick(0, 25) / 100.0;
        return FuzzyLabel{ident(), Triangle{a, b, c}};
      }
      default: return static_cast<Wildcard>(pick(0, 5));
    }
  }

  Range range() {
    Range r;
    double a = real(), b = real();
    r.lo = chance(0.2) ? -HUGE_VAL : std::min(a, b);
    r.hi = chance(0.2) ? HUGE_VAL : std::max(a, b);
    r.lo_cap = chance(0.5) ? Cap::Inclusive : Cap::Exclusive;
    r.hi_cap = chance(0.5) ? Cap::Inclusive : Cap::Exclusive;
    return r;
  }

  Expr expr(const std::vector<std::string>& slots, int depth = 0) {
    if (depth > 3 || chance(0.4)) {
      if (!slots.empty() && chance(0.6)) return Expr::var(slots[pick(0, static_cast<int>(slots.size()) - 1)]);
      return Expr::constant(pick(-20, 20) / 2.0);
    }
    auto a = expr(slots, depth + 1), b = expr(slots, depth + 1);
    switch (pick(0, 3)) {
      case 0: return a + b;
      case 1: return a - b;
      case 2: return a * b;
      default: return a / b;
    }
  }

 private:
  template <class F>
  static void attempt(F f) {
    try {
      f();
    } catch (const Error&) {
    }
  }

  std::string attr_name() { return chance(0.7) ? ident() : text(); }

  std::string fresh() {
    for (;;) {
      auto id = ident();
      if (id != "DK" && ids_.insert(id).second) return id;
    }
  }

  std::string existing_element(const Diagram& d) {
    if (d.elements().empty()) return "missing";
    auto it = d.elements().begin();
    std::advance(it, pick(0, static_cast<int>(d.elements().size()) - 1));
    return it->first;
  }

  std::optional<std::string> maybe_element(const Diagram& d) {
    if (chance(0.3)) return std::nullopt;
    return existing_element(d);
  }

  std::string existing_any(const Diagram& d) {
    if (chance(0.3) && !d.edges().empty()) {
      auto it = d.edges().begin();
      std::advance(it, pick(0, static_cast<int>(d.edges().size()) - 1));
      return it->first;
    }
    return existing_element(d);
  }

  std::string ref(const Diagram& d) { return chance(0.5) ? existing_element(d) : ident(); }

  AttributeBinding binding() { return AttributeBinding{ident(), value()}; }

  SwirlyArrayPayload array() {
    SwirlyArrayPayload a;
    for (int i = 0, n = pick(0, 5); i < n; ++i) {
      auto id = "c" + std::to_string(i);
      a.cells.push_back(ArrayCell{id, real(), real()});
      if (chance(0.4)) a.active.push_back(id);
    }
    return a;
  }

  Payload payload(ElementKind kind, const Diagram& d) {
    switch (payload_index_for(kind)) {
      case 1: {
        ObjectPayload p;
        if (chance(0.4)) {
          p.part_of = ref(d);
          if (chance(0.5)) p.part_role = text();
        }
        return p;
      }
      case 2: {
        CAPayload p;
        for (int i = 0, n = pick(0, 2); i < n; ++i) p.forced.push_back(AttributeBinding{"f" + ident(), value()});
        for (int i = 0, n = pick(0, 2); i < n; ++i) p.detected.push_back(AttributeBinding{"d" + ident(), value()});
        p.open_ended = chance(0.5);
        return p;
      }
      case 3: return CellPayload{chance(0.5)};
      case 4: {
        MarkerPayload p;
        if (chance(0.6)) {
          p.on = ref(d);
          if (chance(0.5)) p.attribute = text();
        }
        return p;
      }
      case 5: {
        BoxPayload p;
        for (int i = 0, n = pick(0, 2); i < n; ++i) p.constraints.push_back(text());
        return p;
      }
      case 6: return array();
      case 7: return ValueBarPayload{chance(0.5) ? text() : "", value()};
      case 8: {
        CorrelationBoxPayload p;
        std::vector<std::string> names;
        for (int i = 0, n = pick(0, 3); i < n; ++i) {
          names.push_back("w" + std::to_string(i));
          p.slots.push_back(CorrelationSlot{names.back(), ident(), ident()});
        }
        if (!names.empty())
          for (int i = 0, n = pick(0, 2); i < n; ++i) p.equations.push_back(Equation{names[pick(0, static_cast<int>(names.size()) - 1)], expr(names)});
        return p;
      }
      case 9: {
        TimeAnchorPayload p;
        p.axis = chance(0.8) ? ident() : "";
        p.offset = real();
        if (chance(0.4)) p.end = chance(0.3) ? HUGE_VAL : p.offset + std::fabs(real());
        if (chance(0.7)) p.role = text();
        return p;
      }
      case 10: return AttendRingPayload{chance(0.7) ? ident() : ""};
      case 11: {
        MotivationTrianglePayload p;
        for (int l = 0; l < 4; ++l)
          if (chance(0.4)) p.markers.push_back({static_cast<MotivationLevel>(l), chance(0.5) ? Valence::Positive : Valence::Negative});
        if (chance(0.3)) p.robinson = ident();
        return p;
      }
      case 12: {
        RobinsonIconPayload p;
        for (int c = 0; c < 6; ++c)
          if (chance(0.4)) p.active.push_back(static_cast<EmotionCategory>(c));
        p.valence = chance(0.5) ? Valence::Positive : Valence::Negative;
        if (chance(0.3)) p.subnode = ident();
        if (p.has(EmotionCategory::Cathected) && chance(0.5)) p.cathected_target = ident();
        return p;
      }
      case 13: return ModalVerbIconPayload{chance(0.7) ? text() : "", chance(0.7) ? text() : "", array()};
      case 14: return ZoomBoxPayload{chance(0.5) ? ident() : "", std::fabs(real()) + 0.5};
      default: return PlainPayload{};
    }
  }

  std::mt19937_64 rng_;
  std::set<std::string> ids_;
};

}  // namespace tumbug::support
