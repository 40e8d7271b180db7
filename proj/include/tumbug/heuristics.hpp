#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/diagram.hpp"
#include "tumbug/error.hpp"
#include "tumbug/kinds.hpp"

namespace tumbug {

enum class TriggerTag {
  Barrier,
  LiftCarry,
  DamageInterference,
  SpatialRelation,
  RelativeTime,
  DownwardGravity,
  Interior,
  Speed,
  CollectiveView,
  LineOfSight,
  CausalConnective,
  TransferTravel,
  InformationTransfer,
  TemporalProcess,
};

inline constexpr std::array<std::string_view, 14> kTriggerTagNames = {
    "barrier",  "lift-carry",    "damage-interference", "spatial-relation",  "relative-time",
    "downward-gravity", "interior", "speed",            "collective-view",   "line-of-sight",
    "causal-connective", "transfer-travel", "information-transfer", "temporal-process",
};

inline std::string_view to_string(TriggerTag t) { return kTriggerTagNames[static_cast<std::size_t>(t)]; }

inline std::optional<TriggerTag> trigger_tag_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kTriggerTagNames.size(); ++i)
    if (kTriggerTagNames[i] == s) return static_cast<TriggerTag>(i);
  return std::nullopt;
}

// A caller-supplied annotation; `word` carries the cue word where it matters ("because").
struct Trigger {
  TriggerTag tag;
  std::string word;
};

inline constexpr std::array<std::string_view, 3> kAbstractKinds = {"AnyBox", "AnyMarker", "AnyObjectCircle"};

inline bool is_requirement_kind(std::string_view k) {
  return block_from_string(k).has_value() ||
         std::find(kAbstractKinds.begin(), kAbstractKinds.end(), k) != kAbstractKinds.end();
}

struct HeuristicRule {
  int index = 0;
  TriggerTag tag = TriggerTag::Barrier;
  std::vector<std::string> must;
  std::vector<std::string> may;
  std::map<std::string, std::vector<std::string>> must_for_word;
};

struct RuleSet {
  std::vector<HeuristicRule> rules;

  const HeuristicRule& rule(TriggerTag t) const {
    for (const auto& r : rules)
      if (r.tag == t) return r;
    throw Error(ErrorCode::InvalidTable, "no rule for " + std::string(to_string(t)));
  }
};

inline RuleSet parse_rules(std::string_view text) {
  RuleSet rs;
  std::set<TriggerTag> tags;
  std::set<int> indices;
  int line_no = 0;
  auto kinds = [](std::string_view list, const std::string& where) {
    std::vector<std::string> out;
    for (auto k : detail::split(list, ',')) {
      if (!is_requirement_kind(k)) throw Error(ErrorCode::InvalidTable, "unknown kind '" + std::string(k) + "'" + where);
      out.emplace_back(k);
    }
    return out;
  };
  for (auto raw : detail::split(text, '\n')) {
    ++line_no;
    auto line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto where = " (line " + std::to_string(line_no) + ")";
    std::istringstream in{std::string(line)};
    HeuristicRule r;
    std::string tag, field;
    if (!(in >> r.index >> tag)) throw Error(ErrorCode::InvalidTable, "expected <index> <trigger>" + where);
    auto t = trigger_tag_from_string(tag);
    if (!t) throw Error(ErrorCode::InvalidTable, "unknown trigger '" + tag + "'" + where);
    r.tag = *t;
    while (in >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidTable, "expected key=kinds" + where);
      auto key = field.substr(0, eq);
      auto list = kinds(std::string_view(field).substr(eq + 1), where);
      if (key == "must") r.must = list;
      else if (key == "may") r.may = list;
      else if (key.rfind("must.", 0) == 0 && key.size() > 5) r.must_for_word[key.substr(5)] = list;
      else throw Error(ErrorCode::InvalidTable, "unknown key '" + key + "'" + where);
    }
    if (!tags.insert(r.tag).second || !indices.insert(r.index).second)
      throw Error(ErrorCode::InvalidTable, "trigger or index listed twice" + where);
    rs.rules.push_back(std::move(r));
  }
  if (rs.rules.size() != kTriggerTagNames.size())
    throw Error(ErrorCode::InvalidTable, "expected 14 rules, found " + std::to_string(rs.rules.size()));
  return rs;
}

// Shipped copy of data/heuristics.rules.
inline constexpr std::string_view kDefaultRules = R"RULES(# Sentence-to-diagram heuristics.
# <index> <trigger> [must=kind,...] [may=kind,...] [must.<word>=kind,...]
1 barrier must=MotionArrow,AnyBox
2 lift-carry must=ForceArrow,MotionArrow
3 damage-interference must=CorrelationBox
4 spatial-relation must=AnyBox
5 relative-time must=TimeArrow
6 downward-gravity must=ForceArrow,MotionArrow
7 interior must=AnyBox
8 speed must=MotionArrow
9 collective-view must=AnyBox may=Marker1D
10 line-of-sight must=AnyBox,Marker1D
11 causal-connective may=CausationArrow must.because=CausationArrow
12 transfer-travel must=AnyObjectCircle,MotionArrow
13 information-transfer must=DataObjectCircle,MotionArrow
14 temporal-process may=TimeArrow,TimeAnchor
)RULES";

inline const RuleSet& default_rules() {
  static const RuleSet rs = parse_rules(kDefaultRules);
  return rs;
}

struct Requirement {
  std::set<std::string> mandatory;
  std::set<std::string> advisory;                 // never overlaps mandatory
  std::map<std::string, std::set<int>> cited_by;  // kind -> heuristic indices

  bool empty() const { return mandatory.empty() && advisory.empty(); }
};

inline Requirement requirements_for(const std::vector<Trigger>& triggers, const RuleSet& rules = default_rules()) {
  Requirement req;
  for (const auto& t : triggers) {
    const auto& r = rules.rule(t.tag);
    std::vector<std::string> must = r.must;
    if (auto it = r.must_for_word.find(t.word); it != r.must_for_word.end())
      must.insert(must.end(), it->second.begin(), it->second.end());
    for (const auto& k : must) {
      req.mandatory.insert(k);
      req.cited_by[k].insert(r.index);
    }
    for (const auto& k : r.may) {
      req.advisory.insert(k);
      req.cited_by[k].insert(r.index);
    }
  }
  for (const auto& k : req.mandatory) req.advisory.erase(k);
  return req;
}

// Whether the diagram contains at least one instance of a requirement kind.
inline bool diagram_has(const Diagram& d, std::string_view kind) {
  auto any_element = [&](auto pred) {
    return std::any_of(d.elements().begin(), d.elements().end(), [&](const auto& kv) { return pred(kv.second.kind); });
  };
  if (kind == "AnyBox") return any_element(is_location_box);
  if (kind == "AnyMarker") return any_element(is_marker);
  if (kind == "AnyObjectCircle") return any_element(is_object_circle);
  auto b = block_from_string(kind);
  if (!b) throw Error(ErrorCode::UnknownKind, "unknown kind " + std::string(kind));
  auto any_binding = [&](auto pred) {
    return std::any_of(d.bindings().begin(), d.bindings().end(), [&](const auto& x) { return pred(x.binding.value); });
  };
  switch (*b) {
    case Block::AttributeLine: return !d.bindings().empty();
    case Block::Wildcard:
      return any_binding([](const Value& v) { return std::holds_alternative<Wildcard>(v); });
    case Block::RangeCap:
      return any_binding(
          [](const Value& v) { return std::holds_alternative<Range>(v) || std::holds_alternative<BallInRange>(v); });
    case Block::Nonquan: return any_element(is_nonquan);
    case Block::IAM:
      return any_element(is_location_box) ||
             std::any_of(d.groups().begin(), d.groups().end(),
                         [](const auto& g) { return g.second.kind == GroupKind::StateDiagram; });
    case Block::ChangeArrow:
      return std::any_of(d.edges().begin(), d.edges().end(),
                         [](const auto& e) { return is_change_edge(e.second.kind); });
    default: break;
  }
  for (const auto& [_, e] : d.elements())
    if (block_of(e.kind) == *b) return true;
  for (const auto& [_, e] : d.edges())
    if (block_of(e.kind) == *b) return true;
  for (const auto& [_, g] : d.groups())
    if (block_of(g.kind) == *b) return true;
  return false;
}

struct KindCheck {
  std::string kind;
  bool mandatory = false;
  bool present = false;
  bool operator==(const KindCheck&) const = default;
};

struct CheckReport {
  std::vector<KindCheck> items;

  bool satisfied() const {
    return std::all_of(items.begin(), items.end(), [](const KindCheck& k) { return !k.mandatory || k.present; });
  }

  std::vector<std::string> missing() const {
    std::vector<std::string> out;
    for (const auto& k : items)
      if (k.mandatory && !k.present) out.push_back(k.kind);
    return out;
  }
};

inline CheckReport check(const Diagram& d, const Requirement& req) {
  CheckReport r;
  for (const auto& k : req.mandatory) r.items.push_back(KindCheck{k, true, diagram_has(d, k)});
  for (const auto& k : req.advisory) r.items.push_back(KindCheck{k, false, diagram_has(d, k)});
  return r;
}

}  // namespace tumbug
