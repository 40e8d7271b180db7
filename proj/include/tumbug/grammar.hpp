#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tumbug/diagram.hpp"
#include "tumbug/error.hpp"
#include "tumbug/kinds.hpp"

namespace tumbug {

// ---------------------------------------------------------------------------
// Legality table

enum class Shape { SolitaryArrow, SolitaryNonquan, ArrowOut, ArrowIn, ArrowBetween, SelfLoop };

inline constexpr std::array<Shape, 6> kAllShapes = {Shape::SolitaryArrow, Shape::SolitaryNonquan, Shape::ArrowOut,
                                                    Shape::ArrowIn,       Shape::ArrowBetween,    Shape::SelfLoop};

inline std::string_view to_string(Shape s) {
  constexpr std::array<std::string_view, 6> names = {"SolitaryArrow", "SolitaryNonquan", "ArrowOut",
                                                     "ArrowIn",       "ArrowBetween",    "SelfLoop"};
  return names[static_cast<std::size_t>(s)];
}

inline std::optional<Shape> shape_from_string(std::string_view s) {
  for (auto sh : kAllShapes)
    if (to_string(sh) == s) return sh;
  return std::nullopt;
}

// Shape an edge forms with its endpoints.
inline Shape shape_of(const Edge& e) {
  if (e.solitary()) return Shape::SolitaryArrow;
  if (e.self_loop()) return Shape::SelfLoop;
  if (e.source && e.target) return Shape::ArrowBetween;
  return e.source ? Shape::ArrowOut : Shape::ArrowIn;
}

class LegalityTable {
 public:
  // Columns follow kChangeEdgeKinds: Time, Motion, Force, Causation.
  bool legal(Shape s, EdgeKind k) const { return cells_[index(s)][column(k)]; }
  void set(Shape s, EdgeKind k, bool legal) { cells_[index(s)][column(k)] = legal; }

  bool operator==(const LegalityTable&) const = default;

  static std::size_t column(EdgeKind k) {
    switch (k) {
      case EdgeKind::Time: return 0;
      case EdgeKind::Motion: return 1;
      case EdgeKind::Force: return 2;
      case EdgeKind::Causation: return 3;
      default: throw Error(ErrorCode::UnknownKind, "not a Change Arrow: " + std::string(to_string(k)));
    }
  }

 private:
  static std::size_t index(Shape s) { return static_cast<std::size_t>(s); }

  std::array<std::array<bool, 4>, 6> cells_{};
};

inline LegalityTable default_legality() {
  LegalityTable t;
  for (auto k : kChangeEdgeKinds) {
    t.set(Shape::SolitaryArrow, k, true);
    t.set(Shape::SolitaryNonquan, k, true);
  }
  for (auto s : {Shape::ArrowOut, Shape::ArrowBetween, Shape::SelfLoop}) t.set(s, EdgeKind::Motion, true);
  for (auto s : {Shape::ArrowOut, Shape::ArrowIn, Shape::ArrowBetween}) t.set(s, EdgeKind::Force, true);
  for (auto s : {Shape::ArrowOut, Shape::ArrowIn, Shape::ArrowBetween, Shape::SelfLoop})
    t.set(s, EdgeKind::Causation, true);
  return t;
}

// Rows `<Shape> <L|I> <L|I> <L|I> <L|I>` in Time Motion Force Causation order.
// Every shape must appear exactly once.
inline LegalityTable parse_legality_table(std::string_view text) {
  LegalityTable t;
  std::set<Shape> seen;
  int line_no = 0;
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    auto hash = raw.find('#');
    auto line = detail::trim(raw.substr(0, hash));
    if (line.empty()) continue;
    std::istringstream in{std::string(line)};
    std::string name, cell;
    in >> name;
    auto where = " (line " + std::to_string(line_no) + ")";
    auto shape = shape_from_string(name);
    if (!shape) throw Error(ErrorCode::InvalidTable, "unknown shape '" + name + "'" + where);
    if (!seen.insert(*shape).second) throw Error(ErrorCode::InvalidTable, "shape listed twice" + where);
    for (auto k : kChangeEdgeKinds) {
      if (!(in >> cell) || (cell != "L" && cell != "I"))
        throw Error(ErrorCode::InvalidTable, "expected L or I for " + std::string(to_string(k)) + where);
      t.set(*shape, k, cell == "L");
    }
    if (in >> cell) throw Error(ErrorCode::InvalidTable, "too many columns" + where);
  }
  if (seen.size() != kAllShapes.size()) throw Error(ErrorCode::InvalidTable, "table must list all 6 shapes");
  return t;
}

inline std::string format_legality_table(const LegalityTable& t) {
  std::string out = "# shape Time Motion Force Causation\n";
  for (auto s : kAllShapes) {
    out += to_string(s);
    for (auto k : kChangeEdgeKinds) out += t.legal(s, k) ? " L" : " I";
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Violations

enum class ViolationCode {
  DanglingReference,
  TimeAttached,
  IllegalSelfLoop,
  IllegalCombination,
  SolitaryNonquan,
  EndpointNotNonquan,
  RelationshipEndpoints,
  TubeEndpointKind,
  IllegalAttributeHost,
  ConflictingDuplicate,
  NestingInverted,
  MissingPosition,
  XorTooFewAlternatives,
  AttendNotMotion,
  AttendNotData,
  StateMultipleMarkers,
  StateTubeEndpoint,
  StateMemberKind,
  StateMarkerNotMember,
  SplitProbability,
  SplitNotTime,
  SplitJunctionKind,
  TimeAnchorAxis,
};

inline std::string_view to_string(ViolationCode c) {
  constexpr std::array<std::string_view, 23> names = {
      "DANGLING_REFERENCE",      "TIME_ATTACHED",          "ILLEGAL_SELF_LOOP",      "ILLEGAL_COMBINATION",
      "SOLITARY_NONQUAN",        "ENDPOINT_NOT_NONQUAN",   "RELATIONSHIP_ENDPOINTS", "TUBE_ENDPOINT_KIND",
      "ILLEGAL_ATTRIBUTE_HOST",  "CONFLICTING_DUPLICATE",  "NESTING_INVERTED",       "MISSING_POSITION",
      "XOR_TOO_FEW_ALTERNATIVES", "ATTEND_NOT_MOTION",     "ATTEND_NOT_DATA",        "STATE_MULTIPLE_MARKERS",
      "STATE_TUBE_ENDPOINT",     "STATE_MEMBER_KIND",      "STATE_MARKER_NOT_MEMBER", "SPLIT_PROBABILITY",
      "SPLIT_NOT_TIME",          "SPLIT_JUNCTION_KIND",    "TIME_ANCHOR_AXIS",
  };
  return names[static_cast<std::size_t>(c)];
}

struct Violation {
  ViolationCode code;
  std::vector<std::string> ids;
  std::string message;

  bool operator==(const Violation&) const = default;
};

inline std::string format_violation(const Violation& v) {
  return std::string(to_string(v.code)) + " " + detail::join(v.ids, ",") + ": " + v.message;
}

namespace detail {

class Validator {
 public:
  Validator(const Diagram& d, const LegalityTable& t) : d_(d), table_(t) {}

  std::vector<Violation> run() {
    edges();
    solitary_nonquans();
    references();
    bindings();
    nesting();
    xor_boxes();
    attend_rings();
    groups();
    std::sort(out_.begin(), out_.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.code, a.ids, a.message) < std::tie(b.code, b.ids, b.message);
    });
    return out_;
  }

 private:
  void add(ViolationCode c, std::vector<std::string> ids, std::string msg) {
    out_.push_back(Violation{c, std::move(ids), std::move(msg)});
  }

  std::string kind_name(const std::string& id) const {
    if (auto e = d_.find_element(id)) return std::string(to_string(e->kind));
    if (auto e = d_.find_edge(id)) return std::string(to_string(e->kind));
    return "?";
  }

  void edges() {
    for (const auto& [id, e] : d_.edges()) {
      bool dangling = false;
      for (const auto* end : {&e.source, &e.target})
        if (*end && !d_.find_element(**end)) {
          add(ViolationCode::DanglingReference, {id, **end}, "edge endpoint does not exist");
          dangling = true;
        }
      if (dangling) continue;

      if (is_change_edge(e.kind)) {
        auto shape = shape_of(e);
        if (!table_.legal(shape, e.kind)) {
          if (e.kind == EdgeKind::Time && shape != Shape::SolitaryArrow)
            add(ViolationCode::TimeAttached, {id}, "time passes through every object; a Time Arrow cannot attach");
          else if (shape == Shape::SelfLoop)
            add(ViolationCode::IllegalSelfLoop, {id}, std::string(to_string(e.kind)) + " arrow cannot loop");
          else
            add(ViolationCode::IllegalCombination, {id},
                std::string(to_string(e.kind)) + " arrow cannot form " + std::string(to_string(shape)));
        }
        if (e.kind == EdgeKind::Motion || e.kind == EdgeKind::Force) {
          for (const auto* end : {&e.source, &e.target}) {
            if (!*end) continue;
            if (e.self_loop() && end == &e.target) break;
            if (!is_nonquan(d_.find_element(**end)->kind))
              add(ViolationCode::EndpointNotNonquan, {id, **end},
                  std::string(to_string(e.kind)) + " arrow must attach to a Nonquan, not " + kind_name(**end));
          }
        }
      } else if (e.kind == EdgeKind::Tube) {
        for (const auto* end : {&e.source, &e.target}) {
          if (!*end) {
            add(ViolationCode::TubeEndpointKind, {id}, "Pathway Tube needs both endpoints");
            break;
          }
          auto k = d_.find_element(**end)->kind;
          if (k != ElementKind::StateCircle && k != ElementKind::Cell)
            add(ViolationCode::TubeEndpointKind, {id, **end}, "Pathway Tube joins State Circles or Cells");
        }
      } else if (!e.source || !e.target || e.self_loop()) {
        add(ViolationCode::RelationshipEndpoints, {id}, "Relationship Marker links two distinct elements");
      }
    }
  }

  void solitary_nonquans() {
    for (auto k : kChangeEdgeKinds) {
      if (table_.legal(Shape::SolitaryNonquan, k)) continue;
      for (const auto& [id, el] : d_.elements()) {
        if (!is_nonquan(el.kind)) continue;
        bool touched = false;
        for (const auto& [_, e] : d_.edges())
          touched = touched || (e.kind == k && (e.source == id || e.target == id));
        if (!touched)
          add(ViolationCode::SolitaryNonquan, {id}, "Nonquan without a " + std::string(to_string(k)) + " arrow");
      }
    }
  }

  void ref(const std::string& owner, const std::string& target, const char* what) {
    if (!target.empty() && !d_.has_id(target))
      add(ViolationCode::DanglingReference, {owner, target}, std::string(what) + " does not exist");
  }

  void references() {
    for (const auto& [id, el] : d_.elements()) {
      std::visit(
          [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ObjectPayload>) ref(id, p.part_of, "part_of");
            else if constexpr (std::is_same_v<T, MarkerPayload>) ref(id, p.on, "marker target");
            else if constexpr (std::is_same_v<T, TimeAnchorPayload>) {
              ref(id, p.axis, "time axis");
              if (!p.axis.empty()) {
                auto axis = d_.find_edge(p.axis);
                if (d_.has_id(p.axis) && (!axis || axis->kind != EdgeKind::Time))
                  add(ViolationCode::TimeAnchorAxis, {id, p.axis}, "Time Anchor must sit on a Time Arrow");
              }
            } else if constexpr (std::is_same_v<T, MotivationTrianglePayload>) ref(id, p.robinson, "robinson icon");
            else if constexpr (std::is_same_v<T, RobinsonIconPayload>) ref(id, p.cathected_target, "cathected target");
            else if constexpr (std::is_same_v<T, ZoomBoxPayload>) ref(id, p.focus, "zoom focus");
            else if constexpr (std::is_same_v<T, CorrelationBoxPayload>) {
              for (const auto& s : p.slots) ref(id, s.element, "correlation slot element");
            }
          },
          el.payload);
    }
    for (const auto& [id, e] : d_.edges()) ref(id, e.moves, "moved element");
  }

  void bindings() {
    std::map<std::pair<std::string, std::string>, std::set<std::string>> values;
    for (const auto& b : d_.bindings()) {
      if (!d_.has_id(b.owner)) {
        add(ViolationCode::DanglingReference, {b.owner}, "binding owner does not exist");
        continue;
      }
      if (!d_.legal_host(b.owner))
        add(ViolationCode::IllegalAttributeHost, {b.owner},
            "attributes attach only to a Nonquan or Change Arrow, not " + kind_name(b.owner));
      if (b.binding.attribute) values[{b.owner, *b.binding.attribute}].insert(format_value(b.binding.value));
    }
    for (const auto& [key, vals] : values)
      if (vals.size() > 1)
        add(ViolationCode::ConflictingDuplicate, {key.first}, "attribute '" + key.second + "' bound to different values");
  }

  void nesting() {
    for (const auto& [child, parent] : d_.containment()) {
      auto c = d_.find_element(child);
      auto p = d_.find_element(parent);
      if (!c || !p) continue;
      int cs = box_strictness(c->kind), ps = box_strictness(p->kind);
      if (cs > 0 && cs < ps)
        add(ViolationCode::NestingInverted, {child, parent},
            std::string(to_string(c->kind)) + " directly inside stricter " + std::string(to_string(p->kind)));
      if ((p->kind == ElementKind::VerbatimBox || p->kind == ElementKind::DescriptiveBox) && !c->position)
        add(ViolationCode::MissingPosition, {child, parent}, "items inside this box need a position");
    }
  }

  void xor_boxes() {
    for (const auto& [id, el] : d_.elements()) {
      if (el.kind != ElementKind::XorBox) continue;
      std::size_t alternatives = d_.children_of(id).size();
      for (const auto& [_, g] : d_.groups())
        if (g.kind == GroupKind::SplitTime && g.junction == id) alternatives += g.members.size();
      if (alternatives < 2) add(ViolationCode::XorTooFewAlternatives, {id}, "XOR Box needs at least 2 alternatives");
    }
  }

  void attend_rings() {
    for (const auto& [id, el] : d_.elements()) {
      if (el.kind != ElementKind::AttendRing) continue;
      const auto& ring = std::get<AttendRingPayload>(el.payload);
      auto edge = d_.find_edge(ring.edge);
      if (!ring.edge.empty() && !d_.has_id(ring.edge)) {
        add(ViolationCode::DanglingReference, {id, ring.edge}, "attend edge does not exist");
        continue;
      }
      if (!edge || edge->kind != EdgeKind::Motion) {
        add(ViolationCode::AttendNotMotion, {id}, "Attend Ring must decorate a Motion Arrow");
        continue;
      }
      auto moved = !edge->moves.empty() ? std::optional<std::string>(edge->moves) : edge->source;
      auto m = moved ? d_.find_element(*moved) : nullptr;
      if (!m || m->kind != ElementKind::DataObjectCircle)
        add(ViolationCode::AttendNotData, {id, ring.edge}, "Attend Ring needs a moving Data Object Circle");
    }
  }

  void groups() {
    for (const auto& [id, g] : d_.groups()) {
      if (g.kind == GroupKind::StateDiagram) state_diagram(id, g);
      else split_time(id, g);
    }
  }

  void state_diagram(const std::string& id, const Group& g) {
    std::set<std::string> states, members(g.members.begin(), g.members.end());
    for (const auto& m : g.members) {
      auto el = d_.find_element(m);
      if (el && el->kind == ElementKind::StateCircle) states.insert(m);
      else if (auto e = d_.find_edge(m); !(e && e->kind == EdgeKind::Tube))
        add(ViolationCode::StateMemberKind, {id, m}, "State Diagram members are State Circles and Pathway Tubes");
    }
    for (const auto& m : g.members) {
      auto e = d_.find_edge(m);
      if (!e || e->kind != EdgeKind::Tube) continue;
      for (const auto* end : {&e->source, &e->target})
        if (!*end || !states.count(**end))
          add(ViolationCode::StateTubeEndpoint, {id, m}, "tube endpoint is not a member state");
    }
    std::vector<std::string> markers;
    if (!g.marker.empty()) {
      markers.push_back(g.marker);
      if (!members.count(g.marker))
        add(ViolationCode::StateMarkerNotMember, {id, g.marker}, "marker must sit on a member state or tube");
    }
    for (const auto& [mid, el] : d_.elements())
      if (el.kind == ElementKind::Marker0D && members.count(std::get<MarkerPayload>(el.payload).on))
        markers.push_back(mid);
    if (markers.size() > 1)
      add(ViolationCode::StateMultipleMarkers, {id}, "a State Diagram holds at most one 0D Marker");
  }

  void split_time(const std::string& id, const Group& g) {
    auto is_time = [&](const std::string& x) {
      auto e = d_.find_edge(x);
      return e && e->kind == EdgeKind::Time;
    };
    for (const auto& m : g.members)
      if (!is_time(m)) add(ViolationCode::SplitNotTime, {id, m}, "Split Time branches must be Time Arrows");
    if (!g.trunk.empty() && !is_time(g.trunk))
      add(ViolationCode::SplitNotTime, {id, g.trunk}, "Split Time trunk must be a Time Arrow");
    if (!g.junction.empty()) {
      auto j = d_.find_element(g.junction);
      if (!j || j->kind != ElementKind::XorBox)
        add(ViolationCode::SplitJunctionKind, {id, g.junction}, "Split Time junction must be an XOR Box");
    }
    if (!g.probs.empty()) {
      double sum = 0;
      bool ok = g.probs.size() == g.members.size();
      for (double p : g.probs) {
        ok = ok && p >= 0.0 && p <= 1.0;
        sum += p;
      }
      if (!ok || std::fabs(sum - 1.0) > 1e-9)
        add(ViolationCode::SplitProbability, {id}, "one probability per branch, each in [0,1], summing to 1");
    }
  }

  const Diagram& d_;
  const LegalityTable& table_;
  std::vector<Violation> out_;
};

}  // namespace detail

// Checks the combination grammar. An empty result means the diagram is valid.
inline std::vector<Violation> validate(const Diagram& d, const LegalityTable& table = default_legality()) {
  return detail::Validator(d, table).run();
}

// ---------------------------------------------------------------------------
// SCOVA

enum class BasicKind { S, C, O, V, A };

inline std::string_view to_string(BasicKind k) {
  constexpr std::array<std::string_view, 5> names = {"S", "C", "O", "V", "A"};
  return names[static_cast<std::size_t>(k)];
}

using ScovaOverrides = std::map<Block, BasicKind>;

// Basic Building Block category of a concrete block.
inline BasicKind scova_classify(Block b, const ScovaOverrides& overrides = {}) {
  if (is_generalized(b)) throw Error(ErrorCode::UnknownKind, std::string(to_string(b)) + " is a generalization");
  if (auto it = overrides.find(b); it != overrides.end()) return it->second;
  switch (b) {
    case Block::AttributeLine:
    case Block::AttendRing: return BasicKind::A;
    case Block::ValueBar:
    case Block::Wildcard:
    case Block::RangeCap: return BasicKind::V;
    case Block::TimeArrow:
    case Block::MotionArrow:
    case Block::ForceArrow:
    case Block::CausationArrow:
    case Block::CorrelationBox:
    case Block::TimeAnchor: return BasicKind::C;
    case Block::StateDiagram:
    case Block::SplitTimeArrow:
    case Block::DataSetBox:
    case Block::MotivationTriangle:
    case Block::RobinsonIcon:
    case Block::ModalVerbIcon: return BasicKind::S;
    default: return BasicKind::O;
  }
}

inline BasicKind scova_classify(std::string_view name, const ScovaOverrides& overrides = {}) {
  auto b = block_from_string(name);
  if (!b) throw Error(ErrorCode::UnknownKind, "unknown Building Block: " + std::string(name));
  return scova_classify(*b, overrides);
}

enum class Generalization { Nonquan, IAM, ChangeArrow, Other };

inline std::string_view to_string(Generalization g) {
  constexpr std::array<std::string_view, 4> names = {"Nonquan", "IAM", "ChangeArrow", "Other"};
  return names[static_cast<std::size_t>(g)];
}

inline std::set<Generalization> generalize(Block b) {
  std::set<Generalization> out;
  switch (b) {
    case Block::Nonquan: return {Generalization::Nonquan};
    case Block::IAM: return {Generalization::IAM};
    case Block::ChangeArrow:
    case Block::TimeArrow:
    case Block::MotionArrow:
    case Block::ForceArrow:
    case Block::CausationArrow: return {Generalization::ChangeArrow};
    case Block::StateDiagram: return {Generalization::IAM};
    default: break;
  }
  if (static_cast<std::size_t>(b) < kAllElementKinds.size()) {
    auto k = kAllElementKinds[static_cast<std::size_t>(b)];
    if (is_nonquan(k)) out.insert(Generalization::Nonquan);
    if (is_location_box(k)) out.insert(Generalization::IAM);
  }
  if (out.empty()) out.insert(Generalization::Other);
  return out;
}

// ---------------------------------------------------------------------------
// 0D Marker queries

// Value of `attribute` on `owner`, following at most one Relationship Marker.
// Returns DK when nothing is known.
inline Value resolve_query(const Diagram& d, const std::string& owner, const std::string& attribute) {
  if (!d.find_element(owner) && !d.find_edge(owner)) throw Error(ErrorCode::UnknownOwner, "no owner " + owner);
  auto direct = [&](const std::string& who) -> std::optional<Value> {
    for (const auto& b : d.bindings())
      if (b.owner == who && b.binding.attribute == attribute) return b.binding.value;
    return std::nullopt;
  };
  if (auto v = direct(owner)) return *v;
  for (const auto& [_, e] : d.edges()) {
    if (e.kind != EdgeKind::Relationship || e.source != owner || !e.target) continue;
    if (!e.attribute.empty() && e.attribute != attribute) continue;
    if (auto v = direct(*e.target)) return *v;
  }
  return Wildcard::DK;
}

// Resolves the question posed by a placed 0D Marker.
inline Value resolve_query(const Diagram& d, const std::string& marker) {
  auto m = d.find_element(marker);
  if (!m || m->kind != ElementKind::Marker0D) throw Error(ErrorCode::UnknownOwner, marker + " is not a 0D Marker");
  const auto& p = std::get<MarkerPayload>(m->payload);
  if (p.on.empty() || p.attribute.empty()) throw Error(ErrorCode::UnknownOwner, marker + " is not placed on an attribute");
  return resolve_query(d, p.on, p.attribute);
}

}  // namespace tumbug
