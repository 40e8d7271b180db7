#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tumbug/diagram.hpp"
#include "tumbug/error.hpp"

namespace tumbug {

using Roles = std::map<std::string, std::string>;

namespace detail {

inline const std::string& role(const Roles& r, const std::string& name) {
  auto it = r.find(name);
  if (it == r.end() || it->second.empty()) throw Error(ErrorCode::MissingRole, "missing role '" + name + "'");
  return it->second;
}

inline std::string role_or(const Roles& r, const std::string& name, std::string fallback) {
  auto it = r.find(name);
  return it == r.end() || it->second.empty() ? fallback : it->second;
}

inline std::string object(Diagram& d, std::string id, std::string label, ElementKind kind = ElementKind::PhysicalObjectCircle,
                          std::optional<std::string> parent = std::nullopt) {
  return d.add_element(make_element(kind, std::move(label), std::move(id)), parent);
}

inline std::string part(Diagram& d, std::string id, std::string label, const std::string& body, std::string part_role) {
  return d.add_element(make_element(ElementKind::PhysicalObjectCircle, std::move(label),
                                    ObjectPayload{body, std::move(part_role)}, std::move(id)));
}

inline std::string motion(Diagram& d, std::string id, std::optional<std::string> from, std::optional<std::string> to,
                          std::string moves = {}, std::string label = {}) {
  auto e = make_edge(EdgeKind::Motion, std::move(from), std::move(to), std::move(label), std::move(id));
  e.moves = std::move(moves);
  return d.add_edge(std::move(e));
}

inline std::string force(Diagram& d, std::string id, std::string from, std::string to, std::string label = {}) {
  auto e = make_edge(EdgeKind::Force, std::move(from), std::move(to), std::move(label), std::move(id));
  e.role = ForceRole::Exerts;
  return d.add_edge(std::move(e));
}

inline std::string edge(Diagram& d, EdgeKind kind, std::string id, std::optional<std::string> from,
                        std::optional<std::string> to, std::string label = {}) {
  return d.add_edge(make_edge(kind, std::move(from), std::move(to), std::move(label), std::move(id)));
}

inline std::string anchor(Diagram& d, std::string id, std::string axis, double offset, std::optional<double> end,
                          std::string role, std::string label) {
  return d.add_element(make_element(ElementKind::TimeAnchor, std::move(label),
                                    TimeAnchorPayload{std::move(axis), offset, end, std::move(role)}, std::move(id)));
}

inline std::string box(Diagram& d, std::string id, std::string label, std::optional<Placement> pos = std::nullopt,
                       std::optional<std::string> parent = std::nullopt) {
  auto e = make_element(ElementKind::AggregationBox, std::move(label), std::move(id));
  e.position = pos;
  return d.add_element(std::move(e), parent);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Primitive Acts

enum class PrimitiveAct {
  ATRANS,
  PTRANS_T,
  PTRANS_I,
  PROPEL,
  PROPEL_M,
  MTRANS,
  MBUILD_S,
  MBUILD_C,
  SPEAK,
  ATTEND,
  MOVE,
  GRASP,
  INGEST,
  EXPEL,
};

inline constexpr std::array<PrimitiveAct, 14> kAllPrimitiveActs = {
    PrimitiveAct::ATRANS,   PrimitiveAct::PTRANS_T, PrimitiveAct::PTRANS_I, PrimitiveAct::PROPEL,
    PrimitiveAct::PROPEL_M, PrimitiveAct::MTRANS,   PrimitiveAct::MBUILD_S, PrimitiveAct::MBUILD_C,
    PrimitiveAct::SPEAK,    PrimitiveAct::ATTEND,   PrimitiveAct::MOVE,     PrimitiveAct::GRASP,
    PrimitiveAct::INGEST,   PrimitiveAct::EXPEL,
};

inline std::string_view to_string(PrimitiveAct a) {
  constexpr std::array<std::string_view, 14> names = {"ATRANS",   "PTRANS_T", "PTRANS_I", "PROPEL", "PROPEL_M",
                                                      "MTRANS",   "MBUILD_S", "MBUILD_C", "SPEAK",  "ATTEND",
                                                      "MOVE",     "GRASP",    "INGEST",   "EXPEL"};
  return names[static_cast<std::size_t>(a)];
}

inline std::optional<PrimitiveAct> primitive_act_from_string(std::string_view s) {
  for (auto a : kAllPrimitiveActs)
    if (to_string(a) == s) return a;
  return std::nullopt;
}

// Roles an act cannot do without. Other roles have defaults.
inline std::vector<std::string> required_roles(PrimitiveAct a) {
  switch (a) {
    case PrimitiveAct::ATRANS: return {"agent", "recipient", "object"};
    case PrimitiveAct::MTRANS: return {"agent", "recipient"};
    case PrimitiveAct::ATTEND: return {"agent", "source"};
    case PrimitiveAct::PTRANS_T:
    case PrimitiveAct::PROPEL:
    case PrimitiveAct::PROPEL_M:
    case PrimitiveAct::GRASP:
    case PrimitiveAct::INGEST:
    case PrimitiveAct::EXPEL: return {"agent", "object"};
    default: return {"agent"};
  }
}

struct PrimitiveOptions {
  bool comprehensive = false;  // ATRANS: add the legal-ownership State Diagram
};

namespace detail {

// Three snapshots of an object crossing a body's surface.
inline void phased_transfer(Diagram& d, const Roles& r, bool inward) {
  using detail::role;
  auto t = edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
  const std::array<std::string, 3> where = inward ? std::array<std::string, 3>{"outside", "surface", "inside"}
                                                  : std::array<std::string, 3>{"inside", "surface", "outside"};
  for (int i = 0; i < 3; ++i) {
    auto n = std::to_string(i + 1);
    anchor(d, "phase" + n, t, i, std::nullopt, "phase", where[i]);
    auto frame = box(d, "frame" + n, where[i]);
    auto body = object(d, "body" + n, role(r, "agent"), ElementKind::PhysicalObjectCircle, frame);
    auto thing = object(d, "object" + n, role(r, "object"), ElementKind::PhysicalObjectCircle, frame);
    d.bind_attribute(thing, tumbug::bind("position", Text{where[i]}));
    if (i < 2) {
      auto m = inward ? motion(d, "m" + n, thing, body, thing) : motion(d, "m" + n, thing, std::nullopt, thing);
      d.bind_attribute(m, tumbug::bind("speed", Text{i == 0 ? "fast" : "slow"}));
    }
  }
}

}  // namespace detail

inline Diagram build_primitive(PrimitiveAct act, const Roles& r, const PrimitiveOptions& opt = {}) {
  using namespace detail;
  for (const auto& name : required_roles(act)) role(r, name);
  Diagram d;
  d.set_meta("template", std::string(to_string(act)));
  switch (act) {
    case PrimitiveAct::SPEAK: {
      auto agent = object(d, "agent", role(r, "agent"));
      auto sound = object(d, "sound", role_or(r, "message", "sound"), ElementKind::DataObjectCircle);
      auto m = motion(d, "m1", agent, std::nullopt, sound);
      d.bind_attribute(m, tumbug::bind("modality", Text{"sound"}));
      break;
    }
    case PrimitiveAct::PTRANS_I: {
      auto agent = object(d, "agent", role(r, "agent"));
      motion(d, "m1", agent, std::nullopt, agent);
      break;
    }
    case PrimitiveAct::PTRANS_T: {
      auto agent = object(d, "agent", role(r, "agent"));
      auto obj = object(d, "object", role(r, "object"));
      motion(d, "m1", agent, std::nullopt, obj);
      break;
    }
    case PrimitiveAct::PROPEL:
    case PrimitiveAct::PROPEL_M: {
      auto agent = object(d, "agent", role(r, "agent"));
      auto obj = object(d, "object", role(r, "object"));
      force(d, "f1", agent, obj);
      if (act == PrimitiveAct::PROPEL_M) motion(d, "m1", obj, std::nullopt, obj);
      break;
    }
    case PrimitiveAct::MOVE: {
      edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
      auto body = object(d, "agent", role(r, "agent"));
      auto limb = part(d, "part", role_or(r, "part", "arm"), body, "appendage");
      motion(d, "m1", body, std::nullopt, limb);
      break;
    }
    case PrimitiveAct::GRASP: {
      auto body = object(d, "agent", role(r, "agent"));
      auto limb = part(d, "part", role_or(r, "part", "arm"), body, "appendage");
      auto hand = part(d, "effector", role_or(r, "effector", "hand"), limb, "end effector");
      auto obj = object(d, "object", role(r, "object"));
      motion(d, "m1", hand, obj, hand);
      force(d, "f1", hand, obj, "grip");
      break;
    }
    case PrimitiveAct::INGEST:
    case PrimitiveAct::EXPEL:
      phased_transfer(d, r, act == PrimitiveAct::INGEST);
      break;
    case PrimitiveAct::MTRANS:
    case PrimitiveAct::ATTEND: {
      bool attend = act == PrimitiveAct::ATTEND;
      auto from = object(d, "agent", attend ? role(r, "source") : role(r, "agent"));
      auto to = object(d, "recipient", attend ? role(r, "agent") : role(r, "recipient"));
      auto msg = object(d, "message", role_or(r, "message", attend ? "stream" : "information"),
                        ElementKind::DataObjectCircle);
      auto m = motion(d, "m1", from, to, msg);
      d.add_element(make_element(ElementKind::AttendRing, "", AttendRingPayload{m}, "attend"));
      break;
    }
    case PrimitiveAct::ATRANS: {
      auto from = object(d, "agent", role(r, "agent"));
      auto to = object(d, "recipient", role(r, "recipient"));
      auto deed = object(d, "ownership", "ownership of " + role(r, "object"), ElementKind::DataObjectCircle);
      motion(d, "m1", from, to, deed);
      if (opt.comprehensive) {
        const auto& a = role(r, "agent");
        const auto& b = role(r, "recipient");
        auto s_a = d.add_element(make_element(ElementKind::StateCircle, a + " owns", "own_a"));
        auto s_b = d.add_element(make_element(ElementKind::StateCircle, b + " owns", "own_b"));
        auto s_both = d.add_element(make_element(ElementKind::StateCircle, "both own", "own_both"));
        auto s_none = d.add_element(make_element(ElementKind::StateCircle, "neither owns", "own_none"));
        std::vector<std::string> members = {s_a, s_b, s_both, s_none};
        const std::array<std::pair<std::string, std::string>, 6> tubes = {
            {{s_a, s_b}, {s_b, s_a}, {s_a, s_both}, {s_both, s_b}, {s_none, s_a}, {s_b, s_none}}};
        int n = 0;
        for (const auto& [x, y] : tubes)
          members.push_back(edge(d, EdgeKind::Tube, "tube" + std::to_string(++n), x, y));
        Group g;
        g.id = "ownership_states";
        g.kind = GroupKind::StateDiagram;
        g.members = members;
        g.marker = s_a;
        g.owner = deed;
        d.add_group(std::move(g));
      }
      break;
    }
    case PrimitiveAct::MBUILD_S: {
      edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
      auto agent = object(d, "agent", role(r, "agent"));
      auto idea = d.add_element(make_element(ElementKind::DataObjectCircle, role_or(r, "thought", "thought"),
                                             ObjectPayload{agent, "internal"}, "thought"));
      edge(d, EdgeKind::Causation, "c1", agent, idea);
      break;
    }
    case PrimitiveAct::MBUILD_C: {
      edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
      auto agent = object(d, "agent", role(r, "agent"));
      auto idea = [&](std::string id, std::string label) {
        return d.add_element(make_element(ElementKind::DataObjectCircle, std::move(label),
                                          ObjectPayload{agent, "internal"}, std::move(id)));
      };
      auto a = idea("thought1", role_or(r, "thought1", "thought A"));
      auto b = idea("thought2", role_or(r, "thought2", "thought B"));
      auto c = idea("thought", role_or(r, "thought", "new thought"));
      edge(d, EdgeKind::Causation, "c1", a, c);
      edge(d, EdgeKind::Causation, "c2", b, c);
      break;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Basic sentence patterns

enum class BasicPattern { AttributePattern, SupersetPattern, SelfMove, Contact, Transfer, Swap };

inline constexpr std::array<BasicPattern, 6> kAllBasicPatterns = {
    BasicPattern::AttributePattern, BasicPattern::SupersetPattern, BasicPattern::SelfMove,
    BasicPattern::Contact,          BasicPattern::Transfer,        BasicPattern::Swap};

inline std::string_view to_string(BasicPattern p) {
  constexpr std::array<std::string_view, 6> names = {"AttributePattern", "SupersetPattern", "SelfMove",
                                                     "Contact",          "Transfer",        "Swap"};
  return names[static_cast<std::size_t>(p)];
}

// Accepts full names and the letter codes A, S, E, C, T, W.
inline std::optional<BasicPattern> basic_pattern_from_string(std::string_view s) {
  for (auto p : kAllBasicPatterns)
    if (to_string(p) == s) return p;
  if (s == "A") return BasicPattern::AttributePattern;
  if (s == "S") return BasicPattern::SupersetPattern;
  if (s == "E") return BasicPattern::SelfMove;
  if (s == "C") return BasicPattern::Contact;
  if (s == "T") return BasicPattern::Transfer;
  if (s == "W") return BasicPattern::Swap;
  return std::nullopt;
}

inline std::vector<std::string> pattern_roles(BasicPattern p) {
  switch (p) {
    case BasicPattern::AttributePattern: return {"subject", "attribute"};
    case BasicPattern::SupersetPattern: return {"subject", "set"};
    case BasicPattern::SelfMove: return {"subject"};
    case BasicPattern::Contact: return {"subject", "object"};
    case BasicPattern::Transfer: return {"subject", "object", "recipient"};
    case BasicPattern::Swap: return {"subject", "recipient", "object", "object2"};
  }
  return {};
}

inline Diagram build_pattern(BasicPattern p, const Roles& r) {
  using namespace detail;
  for (const auto& name : pattern_roles(p)) role(r, name);
  Diagram d;
  d.set_meta("template", std::string(to_string(p)));
  auto verb = role_or(r, "verb", "");
  switch (p) {
    case BasicPattern::AttributePattern: {
      auto s = object(d, "subject", role(r, "subject"));
      d.bind_attribute(s, tumbug::bind(role(r, "attribute"), Text{"true"}));
      break;
    }
    case BasicPattern::SupersetPattern: {
      auto set = box(d, "set", role(r, "set"));
      object(d, "subject", role(r, "subject"), ElementKind::PhysicalObjectCircle, set);
      break;
    }
    case BasicPattern::SelfMove: {
      auto s = object(d, "subject", role(r, "subject"));
      motion(d, "m1", s, std::nullopt, s, verb);
      break;
    }
    case BasicPattern::Contact: {
      auto s = object(d, "subject", role(r, "subject"));
      auto o = object(d, "object", role(r, "object"));
      motion(d, "m1", s, o, s, verb);
      break;
    }
    case BasicPattern::Transfer: {
      auto s = object(d, "subject", role(r, "subject"));
      auto o = object(d, "object", role(r, "object"));
      auto i = object(d, "recipient", role(r, "recipient"));
      motion(d, "m1", s, i, o, verb);
      break;
    }
    case BasicPattern::Swap: {
      auto a = object(d, "subject", role(r, "subject"));
      auto b = object(d, "recipient", role(r, "recipient"));
      auto x = object(d, "object", role(r, "object"));
      auto y = object(d, "object2", role(r, "object2"));
      motion(d, "m1", a, b, x, verb);
      motion(d, "m2", b, a, y, verb);
      break;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Time aspects

enum class Tense { Past, Present, Future };
enum class Aspect { Simple, Progressive, Perfect, PerfectProgressive };
enum class Continuation { Stops, Continues, Both };

inline std::string_view to_string(Tense t) {
  return t == Tense::Past ? "past" : t == Tense::Present ? "present" : "future";
}

inline std::string_view to_string(Aspect a) {
  constexpr std::array<std::string_view, 4> names = {"simple", "progressive", "perfect", "perfect-progressive"};
  return names[static_cast<std::size_t>(a)];
}

inline std::string_view to_string(Continuation c) {
  return c == Continuation::Stops ? "stops" : c == Continuation::Continues ? "continues" : "both";
}

inline std::optional<Tense> tense_from_string(std::string_view s) {
  for (auto t : {Tense::Past, Tense::Present, Tense::Future})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::optional<Aspect> aspect_from_string(std::string_view s) {
  for (auto a : {Aspect::Simple, Aspect::Progressive, Aspect::Perfect, Aspect::PerfectProgressive})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline std::optional<Continuation> continuation_from_string(std::string_view s) {
  for (auto c : {Continuation::Stops, Continuation::Continues, Continuation::Both})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

struct AspectSpec {
  Tense tense = Tense::Present;
  Aspect aspect = Aspect::Simple;
  Continuation continuation = Continuation::Stops;  // perfect-progressive only
};

// Time Arrow with "now" at 0, the event as a point or interval and, for perfect
// forms, a reference-time tick. Past offsets are negative.
inline Diagram build_aspect(const AspectSpec& a, const std::string& actor, const std::string& action) {
  using namespace detail;
  Diagram d;
  d.set_meta("template", std::string(to_string(a.tense)) + " " + std::string(to_string(a.aspect)));
  double ref = a.tense == Tense::Past ? -4 : a.tense == Tense::Present ? 0 : 4;
  object(d, "actor", actor);

  if (a.aspect == Aspect::PerfectProgressive && a.continuation == Continuation::Both) {
    auto trunk = edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
    auto stops = edge(d, EdgeKind::Time, "t_stops", std::nullopt, std::nullopt, "stops");
    auto goes_on = edge(d, EdgeKind::Time, "t_continues", std::nullopt, std::nullopt, "continues");
    auto fork = d.add_element(make_element(ElementKind::XorBox, "", "fork"));
    anchor(d, "now", trunk, 0, std::nullopt, "now", "0");
    anchor(d, "reference", trunk, ref, std::nullopt, "reference", "");
    anchor(d, "event_stops", stops, ref - 2, ref, "event", action);
    anchor(d, "event_continues", goes_on, ref - 2, ref + 1, "event", action);
    Group g;
    g.id = "split";
    g.kind = GroupKind::SplitTime;
    g.members = {goes_on, stops};
    g.trunk = trunk;
    g.junction = fork;
    d.add_group(std::move(g));
    return d;
  }

  auto t = edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
  anchor(d, "now", t, 0, std::nullopt, "now", "0");
  switch (a.aspect) {
    case Aspect::Simple: anchor(d, "event", t, ref, std::nullopt, "event", action); break;
    case Aspect::Progressive: anchor(d, "event", t, ref - 1, ref + 1, "event", action); break;
    case Aspect::Perfect:
      anchor(d, "reference", t, ref, std::nullopt, "reference", "");
      anchor(d, "event", t, ref - 2, std::nullopt, "event", action);
      break;
    case Aspect::PerfectProgressive:
      anchor(d, "reference", t, ref, std::nullopt, "reference", "");
      anchor(d, "event", t, ref - 2, a.continuation == Continuation::Stops ? ref : ref + 1, "event", action);
      break;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Syllogisms

enum class SyllogismForm { Barbara, Celarent, Darii };

inline std::string_view to_string(SyllogismForm f) {
  return f == SyllogismForm::Barbara ? "Barbara" : f == SyllogismForm::Celarent ? "Celarent" : "Darii";
}

inline std::optional<SyllogismForm> syllogism_form_from_string(std::string_view s) {
  for (auto f : {SyllogismForm::Barbara, SyllogismForm::Celarent, SyllogismForm::Darii})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

// Barbara: all <major> are <predicate>; <minor> is a <major>.
// Celarent: no <major> has <predicate>; all <minor> are <major>.
// Darii: all <major> have <predicate>; some <minor> are <major>.
struct SyllogismTerms {
  std::string major;
  std::string predicate;
  std::string minor;
  std::string attribute;  // Barbara: attribute carrying the predicate, e.g. mortality
};

namespace detail {

inline void barbara_major(Diagram& d, const SyllogismTerms& t) {
  if (!d.find_element("major")) box(d, "major", t.major);
  if (t.attribute.empty()) d.bind_attribute("major", tumbug::bind(t.predicate, Text{"true"}));
  else d.bind_attribute("major", tumbug::bind(t.attribute, Text{t.predicate}));
}

inline void barbara_minor(Diagram& d, const SyllogismTerms& t) {
  if (!d.find_element("major")) box(d, "major", t.major);
  object(d, "minor", t.minor, ElementKind::PhysicalObjectCircle, std::string("major"));
}

}  // namespace detail

// The three incremental diagrams, one per sentence. `swap_premises` reads the
// minor premise first; the final diagram does not depend on it.
inline std::array<Diagram, 3> build_syllogism(SyllogismForm form, const SyllogismTerms& t, bool swap_premises = false) {
  using namespace detail;
  std::array<Diagram, 3> steps;
  Diagram d;
  auto snapshot = [&](int i) { steps[i] = d; };

  switch (form) {
    case SyllogismForm::Barbara: {
      if (swap_premises) barbara_minor(d, t);
      else barbara_major(d, t);
      snapshot(0);
      if (swap_premises) barbara_major(d, t);
      else barbara_minor(d, t);
      snapshot(1);
      auto rel = make_edge(EdgeKind::Relationship, std::string("minor"), std::string("major"), "", "insight");
      rel.attribute = t.attribute.empty() ? t.predicate : t.attribute;
      d.add_edge(std::move(rel));
      snapshot(2);
      break;
    }
    case SyllogismForm::Celarent: {
      auto major_first = [&] {
        if (!d.find_element("major")) box(d, "major", t.major, Placement{0, 0, 200, 160});
        box(d, "predicate", t.predicate, Placement{260, 0, 160, 160});
        d.add_element(make_element(ElementKind::Marker2D, "NOT " + t.predicate,
                                   MarkerPayload{"major", ""}, "allowed"));
      };
      auto minor_first = [&] {
        if (!d.find_element("major")) box(d, "major", t.major, Placement{0, 0, 200, 160});
        box(d, "minor", t.minor, Placement{40, 40, 100, 80}, std::string("major"));
      };
      if (swap_premises) minor_first();
      else major_first();
      snapshot(0);
      if (swap_premises) major_first();
      else minor_first();
      snapshot(1);
      edge(d, EdgeKind::Relationship, "insight", std::string("minor"), std::string("allowed"), "NOT " + t.predicate);
      snapshot(2);
      break;
    }
    case SyllogismForm::Darii: {
      auto major_first = [&] {
        auto outer = box(d, "predicate", t.predicate, Placement{0, 0, 240, 200});
        if (!d.find_element("major")) box(d, "major", t.major, Placement{20, 40, 120, 120}, outer);
        else d.contain("major", outer);
      };
      auto minor_first = [&] {
        if (!d.find_element("major")) box(d, "major", t.major, Placement{20, 40, 120, 120});
        box(d, "minor", t.minor, Placement{100, 80, 180, 120});
      };
      if (swap_premises) minor_first();
      else major_first();
      snapshot(0);
      if (swap_premises) major_first();
      else minor_first();
      snapshot(1);
      edge(d, EdgeKind::Relationship, "insight", std::string("minor"), std::string("predicate"), "some");
      snapshot(2);
      break;
    }
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Arithmetic

struct Arithmetic {
  Diagram diagram;
  double result = 0;
};

inline Arithmetic build_arithmetic(const std::string& op, const std::vector<double>& inputs) {
  using namespace detail;
  if (op != "+" && op != "-" && op != "*" && op != "/")
    throw Error(ErrorCode::UnsupportedOperator, "unsupported operator '" + op + "'");
  if (inputs.empty()) throw Error(ErrorCode::MissingRole, "at least one input required");
  double acc = inputs.front();
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    double x = inputs[i];
    if (op == "+") acc += x;
    else if (op == "-") acc -= x;
    else if (op == "*") acc *= x;
    else if (x == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    else acc /= x;
  }
  for (double x : inputs)
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidValue, "inputs must be finite");
  if (!std::isfinite(acc)) throw Error(ErrorCode::InvalidValue, "result overflows");

  Arithmetic out{Diagram{}, acc};
  auto& d = out.diagram;
  d.set_meta("template", "arithmetic " + op);
  edge(d, EdgeKind::Time, "t", std::nullopt, std::nullopt);
  auto result = object(d, "result", format_number(acc), ElementKind::DataObjectCircle);
  d.bind_attribute(result, tumbug::bind("value", Scalar{acc, {}}));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto n = std::to_string(i + 1);
    auto in = object(d, "in" + n, format_number(inputs[i]), ElementKind::DataObjectCircle);
    d.bind_attribute(in, tumbug::bind("value", Scalar{inputs[i], {}}));
    edge(d, EdgeKind::Causation, "op" + n, in, result, op);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flowcharts

enum class FlowKind { Sequential, Loop, Branch };

inline std::optional<FlowKind> flow_kind_from_string(std::string_view s) {
  if (s == "sequential") return FlowKind::Sequential;
  if (s == "loop") return FlowKind::Loop;
  if (s == "branch") return FlowKind::Branch;
  return std::nullopt;
}

struct FlowSpec {
  FlowKind kind = FlowKind::Sequential;
  std::vector<std::string> statements;
  // Loop: statements[body_begin..body_end] run `iterations` times.
  std::size_t body_begin = 1;
  std::size_t body_end = 2;
  int iterations = 1;
  // Branch: statements[cond] picks statements[cond+1] (then) or statements[cond+2]
  // (else); both rejoin at statements[cond+3] when it exists.
  std::size_t cond = 0;
  bool take_else = false;
};

// Marker positions (statement labels) from the start statement. At a statement
// with several outgoing tubes the next schedule entry names the tube label to take.
inline std::vector<std::string> trace_program(const Diagram& d, const std::vector<std::string>& schedule,
                                              std::optional<std::string> start = std::nullopt) {
  std::map<std::string, std::vector<const Edge*>> out;
  std::map<std::string, int> incoming;
  for (const auto& [id, e] : d.edges()) {
    if (e.kind != EdgeKind::Tube || !e.source || !e.target) continue;
    out[*e.source].push_back(&e);
    ++incoming[*e.target];
  }
  if (!start) {
    for (const auto& [_, g] : d.groups())
      if (g.kind == GroupKind::StateDiagram && !g.marker.empty() && d.find_element(g.marker)) {
        start = g.marker;
        break;
      }
  }
  if (!start) {
    for (const auto& [id, el] : d.elements())
      if (el.kind == ElementKind::StateCircle && !incoming.count(id)) {
        start = id;
        break;
      }
  }
  if (!start) throw Error(ErrorCode::EmptyProgram, "no statement to start from");
  if (!d.find_element(*start)) throw Error(ErrorCode::InvalidSchedule, "no statement " + *start);

  std::vector<std::string> trace;
  std::size_t next_decision = 0;
  std::string at = *start;
  for (int steps = 0;; ++steps) {
    if (steps > 100000) throw Error(ErrorCode::InvalidSchedule, "trace does not terminate");
    const auto& el = *d.find_element(at);
    trace.push_back(el.label.empty() ? at : el.label);
    auto it = out.find(at);
    if (it == out.end()) break;
    const auto& options = it->second;
    if (options.size() == 1) {
      at = *options.front()->target;
      continue;
    }
    if (next_decision >= schedule.size())
      throw Error(ErrorCode::InvalidSchedule, "schedule exhausted at " + trace.back());
    const auto& want = schedule[next_decision++];
    const Edge* chosen = nullptr;
    for (const auto* e : options)
      if (e->label == want) chosen = e;
    if (!chosen) throw Error(ErrorCode::InvalidSchedule, "no branch '" + want + "' at " + trace.back());
    at = *chosen->target;
  }
  if (next_decision != schedule.size()) throw Error(ErrorCode::InvalidSchedule, "unused schedule entries");
  return trace;
}

struct Flowchart {
  Diagram diagram;
  std::vector<std::string> schedule;
  std::vector<std::string> trace;
};

inline Flowchart build_flowchart(const FlowSpec& spec) {
  using namespace detail;
  const auto& s = spec.statements;
  if (s.empty()) throw Error(ErrorCode::EmptyProgram, "no statements");
  Flowchart out;
  auto& d = out.diagram;
  d.set_meta("template", "flowchart");
  std::vector<std::string> members;
  for (std::size_t i = 0; i < s.size(); ++i)
    members.push_back(d.add_element(make_element(ElementKind::StateCircle, s[i], "s" + std::to_string(i + 1))));
  int tubes = 0;
  auto tube = [&](std::size_t from, std::size_t to, std::string label = {}) {
    members.push_back(edge(d, EdgeKind::Tube, "tube" + std::to_string(++tubes), members[from], members[to], label));
  };
  auto state = [&](std::size_t i) { return members[i]; };

  switch (spec.kind) {
    case FlowKind::Sequential:
      for (std::size_t i = 0; i + 1 < s.size(); ++i) tube(i, i + 1);
      break;
    case FlowKind::Loop: {
      if (spec.body_begin > spec.body_end || spec.body_end >= s.size() || spec.iterations < 1)
        throw Error(ErrorCode::InvalidSchedule, "loop body must lie within the program and run at least once");
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (i == spec.body_end) continue;
        tube(i, i + 1);
      }
      tube(spec.body_end, spec.body_begin, "repeat");
      if (spec.body_end + 1 < s.size()) tube(spec.body_end, spec.body_end + 1, "exit");
      for (int k = 1; k < spec.iterations; ++k) out.schedule.push_back("repeat");
      if (spec.body_end + 1 < s.size()) out.schedule.push_back("exit");
      else out.schedule.clear();
      break;
    }
    case FlowKind::Branch: {
      auto c = spec.cond;
      if (c + 2 >= s.size()) throw Error(ErrorCode::InvalidSchedule, "branch needs a condition and two arms");
      for (std::size_t i = 0; i < c; ++i) tube(i, i + 1);
      tube(c, c + 1, "then");
      tube(c, c + 2, "else");
      if (c + 3 < s.size()) {
        tube(c + 1, c + 3);
        tube(c + 2, c + 3);
        for (std::size_t i = c + 3; i + 1 < s.size(); ++i) tube(i, i + 1);
      }
      out.schedule.push_back(spec.take_else ? "else" : "then");
      break;
    }
  }
  if (spec.kind == FlowKind::Loop && spec.body_end + 1 >= s.size() && spec.iterations > 1)
    throw Error(ErrorCode::InvalidSchedule, "a loop at the end of the program cannot exit");

  Group g;
  g.id = "program";
  g.kind = GroupKind::StateDiagram;
  g.members = members;
  g.marker = state(0);
  d.add_group(std::move(g));
  out.trace = trace_program(d, out.schedule);
  return out;
}

// ---------------------------------------------------------------------------
// Active and passive voice

namespace detail {

inline std::string appendage_for(const std::string& action) {
  if (action.rfind("kick", 0) == 0 || action.rfind("stomp", 0) == 0 || action.rfind("trip", 0) == 0) return "foot";
  if (action.rfind("head", 0) == 0) return "head";
  return "hand";
}

inline Diagram voice(const std::string& agent, const std::string& action, const std::string& object_label,
                     const std::string& appendage) {
  Diagram d;
  auto who = detail::object(d, "agent", agent);
  auto limb = detail::part(d, "appendage", appendage.empty() ? appendage_for(action) : appendage, who, "appendage");
  auto obj = detail::object(d, "object", object_label);
  detail::force(d, "f1", limb, obj, action);
  detail::motion(d, "m1", obj, std::nullopt, obj);
  return d;
}

}  // namespace detail

// Passive voice: the agent is implied, so it is drawn as an unlabeled circle.
inline Diagram build_passive(const std::string& action, const std::string& object, const std::string& appendage = {}) {
  auto d = detail::voice("", action, object, appendage);
  d.set_meta("template", "passive");
  return d;
}

inline Diagram build_active(const std::string& agent, const std::string& action, const std::string& object,
                            const std::string& appendage = {}) {
  if (agent.empty()) throw Error(ErrorCode::MissingRole, "active voice needs an agent");
  auto d = detail::voice(agent, action, object, appendage);
  d.set_meta("template", "active");
  return d;
}

}  // namespace tumbug
