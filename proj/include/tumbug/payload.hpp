#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tumbug/correlation.hpp"
#include "tumbug/kinds.hpp"
#include "tumbug/value.hpp"

namespace tumbug {

// StateCircle, SensorBar, LabelString
struct PlainPayload {
  bool operator==(const PlainPayload&) const = default;
};

// Object circles and data points. part_of links an appendage (foot, hand) to its body.
struct ObjectPayload {
  std::string part_of;
  std::string part_role;
  bool operator==(const ObjectPayload&) const = default;
};

// C-A Object Circles and C-A Aggregation Boxes.
struct CAPayload {
  std::vector<AttributeBinding> forced;
  std::vector<AttributeBinding> detected;
  bool open_ended = false;
  bool operator==(const CAPayload&) const = default;
};

struct CellPayload {
  bool active = false;
  bool operator==(const CellPayload&) const = default;
};

// Markers sit on an element or edge; a 0D Marker with an attribute is a query.
struct MarkerPayload {
  std::string on;
  std::string attribute;
  bool operator==(const MarkerPayload&) const = default;
};

// Verbatim/Descriptive/Aggregation/XOR/Data Set boxes. Constraints are free text.
struct BoxPayload {
  std::vector<std::string> constraints;
  bool operator==(const BoxPayload&) const = default;
};

struct ArrayCell {
  std::string id;
  double x = 0;
  double y = 0;
  bool operator==(const ArrayCell&) const = default;
};

struct SwirlyArrayPayload {
  std::vector<ArrayCell> cells;
  std::vector<std::string> active;
  bool operator==(const SwirlyArrayPayload&) const = default;

  bool is_active(std::string_view id) const { return std::find(active.begin(), active.end(), id) != active.end(); }
};

struct ValueBarPayload {
  std::string attribute;
  Value value = Range{};
  bool operator==(const ValueBarPayload&) const = default;
};

// A tick on a Time Arrow. Offsets are relative to "now" (0); negative is the past.
struct TimeAnchorPayload {
  std::string axis;  // id of the Time edge the tick sits on
  double offset = 0;
  std::optional<double> end;  // set for intervals; +inf for open-ended
  std::string role;           // now | event | reference | phase ...
  bool operator==(const TimeAnchorPayload&) const = default;
};

struct AttendRingPayload {
  std::string edge;
  bool operator==(const AttendRingPayload&) const = default;
};

enum class Valence { Positive, Negative };

inline std::string_view to_string(Valence v) { return v == Valence::Positive ? "+" : "-"; }

inline std::optional<Valence> valence_from_string(std::string_view s) {
  if (s == "+") return Valence::Positive;
  if (s == "-") return Valence::Negative;
  return std::nullopt;
}

enum class MotivationLevel { Automaton, Physical, Emotional, Intellectual };

inline constexpr std::array<std::string_view, 4> kMotivationLevelNames = {"automaton", "physical", "emotional",
                                                                          "intellectual"};

inline std::string_view to_string(MotivationLevel l) { return kMotivationLevelNames[static_cast<std::size_t>(l)]; }

inline std::optional<MotivationLevel> motivation_level_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kMotivationLevelNames.size(); ++i)
    if (kMotivationLevelNames[i] == s) return static_cast<MotivationLevel>(i);
  return std::nullopt;
}

struct MotivationMarker {
  MotivationLevel level = MotivationLevel::Automaton;
  Valence valence = Valence::Positive;
  bool operator==(const MotivationMarker&) const = default;
  auto operator<=>(const MotivationMarker&) const = default;
};

struct MotivationTrianglePayload {
  std::vector<MotivationMarker> markers;
  std::string robinson;  // embedded Robinson Icon at the emotional level
  bool operator==(const MotivationTrianglePayload&) const = default;
};

enum class EmotionCategory { ObjectProperties, FutureAppraisal, EventRelated, SelfAppraisal, Social, Cathected };

inline constexpr std::array<std::string_view, 6> kEmotionCategoryNames = {
    "ObjectProperties", "FutureAppraisal", "EventRelated", "SelfAppraisal", "Social", "Cathected"};

inline std::string_view to_string(EmotionCategory c) { return kEmotionCategoryNames[static_cast<std::size_t>(c)]; }

inline std::optional<EmotionCategory> emotion_category_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kEmotionCategoryNames.size(); ++i)
    if (kEmotionCategoryNames[i] == s) return static_cast<EmotionCategory>(i);
  return std::nullopt;
}

struct RobinsonIconPayload {
  std::vector<EmotionCategory> active;
  Valence valence = Valence::Positive;
  std::string subnode;
  std::string cathected_target;
  bool operator==(const RobinsonIconPayload&) const = default;

  bool has(EmotionCategory c) const { return std::find(active.begin(), active.end(), c) != active.end(); }
};

struct ModalVerbIconPayload {
  std::string verb;
  std::string meaning;
  SwirlyArrayPayload array;
  bool operator==(const ModalVerbIconPayload&) const = default;
};

struct ZoomBoxPayload {
  std::string focus;
  double magnification = 2;
  bool operator==(const ZoomBoxPayload&) const = default;
};

using Payload = std::variant<PlainPayload, ObjectPayload, CAPayload, CellPayload, MarkerPayload, BoxPayload,
                             SwirlyArrayPayload, ValueBarPayload, CorrelationBoxPayload, TimeAnchorPayload,
                             AttendRingPayload, MotivationTrianglePayload, RobinsonIconPayload, ModalVerbIconPayload,
                             ZoomBoxPayload>;

// Payload alternative index a kind requires.
inline std::size_t payload_index_for(ElementKind k) {
  switch (k) {
    case ElementKind::StateCircle:
    case ElementKind::SensorBar:
    case ElementKind::LabelString: return 0;
    case ElementKind::PhysicalObjectCircle:
    case ElementKind::DataObjectCircle:
    case ElementKind::DataPoint: return 1;
    case ElementKind::CAObjectCircle:
    case ElementKind::CAAggregationBox: return 2;
    case ElementKind::Cell: return 3;
    case ElementKind::Marker0D:
    case ElementKind::Marker1D:
    case ElementKind::Marker2D: return 4;
    case ElementKind::VerbatimBox:
    case ElementKind::DescriptiveBox:
    case ElementKind::AggregationBox:
    case ElementKind::XorBox:
    case ElementKind::DataSetBox: return 5;
    case ElementKind::SwirlyArray: return 6;
    case ElementKind::ValueBar: return 7;
    case ElementKind::CorrelationBox: return 8;
    case ElementKind::TimeAnchor: return 9;
    case ElementKind::AttendRing: return 10;
    case ElementKind::MotivationTriangle: return 11;
    case ElementKind::RobinsonIcon: return 12;
    case ElementKind::ModalVerbIcon: return 13;
    case ElementKind::ZoomBoxPair: return 14;
  }
  throw Error(ErrorCode::UnknownKind, "element kind");
}

// Minimal valid payload for a kind.
inline Payload default_payload(ElementKind k) {
  switch (payload_index_for(k)) {
    case 0: return PlainPayload{};
    case 1: return ObjectPayload{};
    case 2: return CAPayload{};
    case 3: return CellPayload{};
    case 4: return MarkerPayload{};
    case 5: return BoxPayload{};
    case 6: return SwirlyArrayPayload{};
    case 7: return ValueBarPayload{};
    case 8: return CorrelationBoxPayload{};
    case 9: return TimeAnchorPayload{};
    case 10: return AttendRingPayload{};
    case 11: return MotivationTrianglePayload{};
    case 12: return RobinsonIconPayload{};
    case 13: return ModalVerbIconPayload{};
    default: return ZoomBoxPayload{};
  }
}

namespace detail {

[[noreturn]] inline void bad_payload(const std::string& why) { throw Error(ErrorCode::InvalidPayload, why); }

inline void check_array(const SwirlyArrayPayload& a) {
  std::set<std::string> ids;
  for (const auto& c : a.cells) {
    if (!is_identifier(c.id)) bad_payload("bad cell id: " + c.id);
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) bad_payload("cell position must be finite");
    if (!ids.insert(c.id).second) bad_payload("duplicate cell: " + c.id);
  }
  std::set<std::string> seen;
  for (const auto& id : a.active) {
    if (!ids.count(id)) bad_payload("active cell not in array: " + id);
    if (!seen.insert(id).second) bad_payload("cell activated twice: " + id);
  }
}

inline void check_ref(const std::string& id, const char* what) {
  if (!id.empty() && !is_identifier(id)) bad_payload(std::string(what) + " is not an id: " + id);
}

}  // namespace detail

// Throws InvalidPayload if the payload does not belong to the kind or breaks an invariant.
inline void check_payload(ElementKind kind, const Payload& p) {
  if (p.index() != payload_index_for(kind))
    detail::bad_payload("payload does not match kind " + std::string(to_string(kind)));

  if (auto o = std::get_if<ObjectPayload>(&p)) {
    detail::check_ref(o->part_of, "part_of");
    if (!o->part_role.empty() && o->part_of.empty()) detail::bad_payload("part_role without part_of");
  } else if (auto ca = std::get_if<CAPayload>(&p)) {
    std::set<std::string> forced;
    for (const auto& b : ca->forced) {
      check_binding(b);
      if (b.attribute) forced.insert(*b.attribute);
    }
    for (const auto& b : ca->detected) {
      check_binding(b);
      if (b.attribute && forced.count(*b.attribute))
        detail::bad_payload("attribute both forced and detected: " + *b.attribute);
    }
  } else if (auto m = std::get_if<MarkerPayload>(&p)) {
    detail::check_ref(m->on, "marker target");
    if (!m->attribute.empty() && m->on.empty()) detail::bad_payload("marker attribute without target");
  } else if (auto a = std::get_if<SwirlyArrayPayload>(&p)) {
    detail::check_array(*a);
  } else if (auto vb = std::get_if<ValueBarPayload>(&p)) {
    check_value(vb->value);
  } else if (auto c = std::get_if<CorrelationBoxPayload>(&p)) {
    try {
      check_correlation(*c);
    } catch (const Error& e) {
      detail::bad_payload(e.what());
    }
  } else if (auto t = std::get_if<TimeAnchorPayload>(&p)) {
    detail::check_ref(t->axis, "time axis");
    if (!std::isfinite(t->offset)) detail::bad_payload("time offset must be finite");
    if (t->end && (std::isnan(*t->end) || *t->end < t->offset)) detail::bad_payload("interval ends before it starts");
  } else if (auto r = std::get_if<AttendRingPayload>(&p)) {
    detail::check_ref(r->edge, "attend edge");
  } else if (auto mt = std::get_if<MotivationTrianglePayload>(&p)) {
    std::set<MotivationMarker> cells;
    for (const auto& mk : mt->markers)
      if (!cells.insert(mk).second) detail::bad_payload("one marker maximum per cell");
    detail::check_ref(mt->robinson, "robinson icon");
  } else if (auto rb = std::get_if<RobinsonIconPayload>(&p)) {
    std::set<EmotionCategory> seen;
    for (auto cat : rb->active)
      if (!seen.insert(cat).second) detail::bad_payload("category listed twice");
    detail::check_ref(rb->cathected_target, "cathected target");
    if (!rb->cathected_target.empty() && !rb->has(EmotionCategory::Cathected))
      detail::bad_payload("cathected target requires the Cathected category");
    if (!rb->subnode.empty() && !detail::is_identifier(rb->subnode)) detail::bad_payload("bad subnode code");
  } else if (auto mv = std::get_if<ModalVerbIconPayload>(&p)) {
    detail::check_array(mv->array);
  } else if (auto z = std::get_if<ZoomBoxPayload>(&p)) {
    detail::check_ref(z->focus, "zoom focus");
    if (!std::isfinite(z->magnification) || z->magnification <= 0) detail::bad_payload("magnification must be positive");
  }
}

}  // namespace tumbug
