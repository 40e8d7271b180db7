#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "tumbug/error.hpp"

namespace tumbug {

// Concrete Building Blocks that live in a diagram as elements.
enum class ElementKind {
  PhysicalObjectCircle,
  DataObjectCircle,
  CAObjectCircle,
  DataPoint,
  StateCircle,
  Cell,
  SensorBar,
  Marker0D,
  Marker1D,
  Marker2D,
  VerbatimBox,
  DescriptiveBox,
  AggregationBox,
  CAAggregationBox,
  XorBox,
  SwirlyArray,
  ValueBar,
  CorrelationBox,
  TimeAnchor,
  DataSetBox,
  LabelString,
  AttendRing,
  MotivationTriangle,
  RobinsonIcon,
  ModalVerbIcon,
  ZoomBoxPair,
};

inline constexpr std::array<ElementKind, 26> kAllElementKinds = {
    ElementKind::PhysicalObjectCircle, ElementKind::DataObjectCircle, ElementKind::CAObjectCircle,
    ElementKind::DataPoint,            ElementKind::StateCircle,      ElementKind::Cell,
    ElementKind::SensorBar,            ElementKind::Marker0D,         ElementKind::Marker1D,
    ElementKind::Marker2D,             ElementKind::VerbatimBox,      ElementKind::DescriptiveBox,
    ElementKind::AggregationBox,       ElementKind::CAAggregationBox, ElementKind::XorBox,
    ElementKind::SwirlyArray,          ElementKind::ValueBar,         ElementKind::CorrelationBox,
    ElementKind::TimeAnchor,           ElementKind::DataSetBox,       ElementKind::LabelString,
    ElementKind::AttendRing,           ElementKind::MotivationTriangle, ElementKind::RobinsonIcon,
    ElementKind::ModalVerbIcon,        ElementKind::ZoomBoxPair,
};

inline constexpr std::array<std::string_view, 26> kElementKindNames = {
    "PhysicalObjectCircle", "DataObjectCircle", "CAObjectCircle", "DataPoint",
    "StateCircle",          "Cell",             "SensorBar",      "Marker0D",
    "Marker1D",             "Marker2D",         "VerbatimBox",    "DescriptiveBox",
    "AggregationBox",       "CAAggregationBox", "XorBox",         "SwirlyArray",
    "ValueBar",             "CorrelationBox",   "TimeAnchor",     "DataSetBox",
    "LabelString",          "AttendRing",       "MotivationTriangle", "RobinsonIcon",
    "ModalVerbIcon",        "ZoomBoxPair",
};

inline std::string_view to_string(ElementKind k) { return kElementKindNames[static_cast<std::size_t>(k)]; }

inline std::optional<ElementKind> element_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kElementKindNames.size(); ++i)
    if (kElementKindNames[i] == s) return kAllElementKinds[i];
  return std::nullopt;
}

enum class EdgeKind { Time, Motion, Force, Causation, Tube, Relationship };

inline constexpr std::array<EdgeKind, 6> kAllEdgeKinds = {EdgeKind::Time,      EdgeKind::Motion,
                                                          EdgeKind::Force,     EdgeKind::Causation,
                                                          EdgeKind::Tube,      EdgeKind::Relationship};
inline constexpr std::array<EdgeKind, 4> kChangeEdgeKinds = {EdgeKind::Time, EdgeKind::Motion,
                                                             EdgeKind::Force, EdgeKind::Causation};

inline std::string_view to_string(EdgeKind k) {
  constexpr std::array<std::string_view, 6> names = {"Time", "Motion", "Force", "Causation", "Tube",
                                                     "Relationship"};
  return names[static_cast<std::size_t>(k)];
}

inline std::optional<EdgeKind> edge_kind_from_string(std::string_view s) {
  for (auto k : kAllEdgeKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline bool is_change_edge(EdgeKind k) {
  return k == EdgeKind::Time || k == EdgeKind::Motion || k == EdgeKind::Force || k == EdgeKind::Causation;
}

enum class GroupKind { StateDiagram, SplitTime };

inline std::string_view to_string(GroupKind k) {
  return k == GroupKind::StateDiagram ? "StateDiagram" : "SplitTime";
}

inline std::optional<GroupKind> group_kind_from_string(std::string_view s) {
  if (s == "StateDiagram") return GroupKind::StateDiagram;
  if (s == "SplitTime") return GroupKind::SplitTime;
  return std::nullopt;
}

inline bool is_container(ElementKind k) {
  switch (k) {
    case ElementKind::VerbatimBox:
    case ElementKind::DescriptiveBox:
    case ElementKind::AggregationBox:
    case ElementKind::CAAggregationBox:
    case ElementKind::XorBox:
    case ElementKind::DataSetBox:
    case ElementKind::ZoomBoxPair:
      return true;
    default:
      return false;
  }
}

inline bool is_location_box(ElementKind k) {
  return k == ElementKind::VerbatimBox || k == ElementKind::DescriptiveBox ||
         k == ElementKind::AggregationBox || k == ElementKind::CAAggregationBox;
}

inline bool is_marker(ElementKind k) {
  return k == ElementKind::Marker0D || k == ElementKind::Marker1D || k == ElementKind::Marker2D;
}

inline bool is_object_circle(ElementKind k) {
  return k == ElementKind::PhysicalObjectCircle || k == ElementKind::DataObjectCircle ||
         k == ElementKind::CAObjectCircle;
}

// Nonquantified objects: anything object-like of arbitrary quantity.
inline bool is_nonquan(ElementKind k) {
  return is_object_circle(k) || k == ElementKind::DataPoint || is_location_box(k);
}

// Location-constraint strictness: Verbatim > Descriptive > Aggregation; 0 for non-boxes.
inline int box_strictness(ElementKind k) {
  switch (k) {
    case ElementKind::VerbatimBox: return 3;
    case ElementKind::DescriptiveBox: return 2;
    case ElementKind::AggregationBox:
    case ElementKind::CAAggregationBox: return 1;
    default: return 0;
  }
}

// Every Building Block a caller can ask about, including the ones that are not
// stored as elements (arrows, attribute lines, wildcards, group structures) and
// the three generalized blocks.
enum class Block {
  PhysicalObjectCircle,
  DataObjectCircle,
  CAObjectCircle,
  DataPoint,
  StateCircle,
  Cell,
  SensorBar,
  Marker0D,
  Marker1D,
  Marker2D,
  VerbatimBox,
  DescriptiveBox,
  AggregationBox,
  CAAggregationBox,
  XorBox,
  SwirlyArray,
  ValueBar,
  CorrelationBox,
  TimeAnchor,
  DataSetBox,
  LabelString,
  AttendRing,
  MotivationTriangle,
  RobinsonIcon,
  ModalVerbIcon,
  ZoomBoxPair,
  TimeArrow,
  MotionArrow,
  ForceArrow,
  CausationArrow,
  PathwayTube,
  RelationshipMarker,
  AttributeLine,
  Wildcard,
  RangeCap,
  StateDiagram,
  SplitTimeArrow,
  Nonquan,
  IAM,
  ChangeArrow,
};

inline constexpr std::size_t kBlockCount = 40;
inline constexpr std::size_t kConcreteBlockCount = 37;

inline constexpr std::array<std::string_view, kBlockCount> kBlockNames = {
    "PhysicalObjectCircle", "DataObjectCircle", "CAObjectCircle", "DataPoint",
    "StateCircle",          "Cell",             "SensorBar",      "Marker0D",
    "Marker1D",             "Marker2D",         "VerbatimBox",    "DescriptiveBox",
    "AggregationBox",       "CAAggregationBox", "XorBox",         "SwirlyArray",
    "ValueBar",             "CorrelationBox",   "TimeAnchor",     "DataSetBox",
    "LabelString",          "AttendRing",       "MotivationTriangle", "RobinsonIcon",
    "ModalVerbIcon",        "ZoomBoxPair",      "TimeArrow",      "MotionArrow",
    "ForceArrow",           "CausationArrow",   "PathwayTube",    "RelationshipMarker",
    "AttributeLine",        "Wildcard",         "RangeCap",       "StateDiagram",
    "SplitTimeArrow",       "Nonquan",          "IAM",            "ChangeArrow",
};

inline std::string_view to_string(Block b) { return kBlockNames[static_cast<std::size_t>(b)]; }

inline Block block_at(std::size_t i) { return static_cast<Block>(i); }

inline std::optional<Block> block_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kBlockNames.size(); ++i)
    if (kBlockNames[i] == s) return block_at(i);
  return std::nullopt;
}

inline bool is_generalized(Block b) {
  return b == Block::Nonquan || b == Block::IAM || b == Block::ChangeArrow;
}

// Element kinds map one-to-one onto the first 26 blocks.
inline Block block_of(ElementKind k) { return static_cast<Block>(static_cast<std::size_t>(k)); }

inline Block block_of(EdgeKind k) {
  switch (k) {
    case EdgeKind::Time: return Block::TimeArrow;
    case EdgeKind::Motion: return Block::MotionArrow;
    case EdgeKind::Force: return Block::ForceArrow;
    case EdgeKind::Causation: return Block::CausationArrow;
    case EdgeKind::Tube: return Block::PathwayTube;
    case EdgeKind::Relationship: return Block::RelationshipMarker;
  }
  throw Error(ErrorCode::UnknownKind, "edge kind");
}

inline Block block_of(GroupKind k) {
  return k == GroupKind::StateDiagram ? Block::StateDiagram : Block::SplitTimeArrow;
}

}  // namespace tumbug
