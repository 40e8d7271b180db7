#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/error.hpp"
#include "tumbug/kinds.hpp"
#include "tumbug/payload.hpp"
#include "tumbug/value.hpp"

namespace tumbug {

struct Placement {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
  bool operator==(const Placement&) const = default;
};

struct Element {
  std::string id;
  ElementKind kind = ElementKind::PhysicalObjectCircle;
  std::string label;
  Payload payload;
  std::optional<Placement> position;

  bool operator==(const Element&) const = default;
};

inline Element make_element(ElementKind kind, std::string label = {}, std::string id = {}) {
  return Element{std::move(id), kind, std::move(label), default_payload(kind), std::nullopt};
}

template <class P>
  requires(!std::is_convertible_v<P, std::string>)
Element make_element(ElementKind kind, std::string label, P payload, std::string id = {}) {
  return Element{std::move(id), kind, std::move(label), Payload(std::move(payload)), std::nullopt};
}

enum class ForceRole { None, Exerts, ActedUpon };

inline std::string_view to_string(ForceRole r) {
  switch (r) {
    case ForceRole::Exerts: return "exerts";
    case ForceRole::ActedUpon: return "acted-upon";
    default: return "none";
  }
}

inline std::optional<ForceRole> force_role_from_string(std::string_view s) {
  if (s == "exerts") return ForceRole::Exerts;
  if (s == "acted-upon") return ForceRole::ActedUpon;
  if (s == "none") return ForceRole::None;
  return std::nullopt;
}

// Change Arrows, Pathway Tubes and Relationship Markers.
struct Edge {
  std::string id;
  EdgeKind kind = EdgeKind::Motion;
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::string label;
  ForceRole role = ForceRole::None;  // Force only
  std::string moves;                 // Motion: element carried along the arrow
  std::string attribute;             // Relationship: attribute reached through the hop

  bool operator==(const Edge&) const = default;
  bool solitary() const { return !source && !target; }
  bool self_loop() const { return source && target && *source == *target; }
};

inline Edge make_edge(EdgeKind kind, std::optional<std::string> source, std::optional<std::string> target,
                      std::string label = {}, std::string id = {}) {
  Edge e;
  e.id = std::move(id);
  e.kind = kind;
  e.source = std::move(source);
  e.target = std::move(target);
  e.label = std::move(label);
  return e;
}

// State Diagrams (members: state circles and tubes) and Split Time Arrows
// (members: branch Time edges, trunk, XOR junction).
struct Group {
  std::string id;
  GroupKind kind = GroupKind::StateDiagram;
  std::vector<std::string> members;
  std::string marker;
  std::string owner;
  std::string trunk;
  std::string junction;
  std::vector<double> probs;

  bool operator==(const Group&) const = default;
};

struct OwnedBinding {
  std::string owner;
  AttributeBinding binding;
  bool operator==(const OwnedBinding&) const = default;
};

namespace detail {

inline auto binding_key(const OwnedBinding& b) {
  return std::make_tuple(b.owner, b.binding.attribute.has_value(), b.binding.attribute.value_or(std::string()),
                         format_value(b.binding.value));
}

inline void check_probs(const std::vector<double>& probs) {
  if (probs.empty()) return;
  double sum = 0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidValue, "branch probability outside [0,1]");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw Error(ErrorCode::InvalidValue, "branch probabilities must sum to 1");
}

}  // namespace detail

// The scene graph. Every element, edge or group id is unique across the whole diagram.
class Diagram {
 public:
  const std::map<std::string, Element>& elements() const { return elements_; }
  const std::map<std::string, Edge>& edges() const { return edges_; }
  const std::map<std::string, Group>& groups() const { return groups_; }
  const std::map<std::string, std::string>& containment() const { return parent_; }
  const std::vector<OwnedBinding>& bindings() const { return bindings_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  bool empty() const { return elements_.empty() && edges_.empty() && groups_.empty() && meta_.empty(); }

  bool has_id(const std::string& id) const {
    return elements_.count(id) || edges_.count(id) || groups_.count(id);
  }

  const Element* find_element(const std::string& id) const {
    auto it = elements_.find(id);
    return it == elements_.end() ? nullptr : &it->second;
  }
  const Edge* find_edge(const std::string& id) const {
    auto it = edges_.find(id);
    return it == edges_.end() ? nullptr : &it->second;
  }
  const Group* find_group(const std::string& id) const {
    auto it = groups_.find(id);
    return it == groups_.end() ? nullptr : &it->second;
  }

  std::optional<std::string> parent_of(const std::string& id) const {
    auto it = parent_.find(id);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> children_of(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [child, parent] : parent_)
      if (parent == id) out.push_back(child);
    return out;
  }

  std::vector<AttributeBinding> bindings_of(const std::string& owner) const {
    std::vector<AttributeBinding> out;
    for (const auto& b : bindings_)
      if (b.owner == owner) out.push_back(b.binding);
    return out;
  }

  void set_meta(const std::string& key, std::string value) {
    if (!detail::is_identifier(key)) throw Error(ErrorCode::InvalidId, "meta key: " + key);
    meta_[key] = std::move(value);
  }

  // Inserts an element, assigning an id when e.id is empty.
  std::string add_element(Element e, const std::optional<std::string>& parent = std::nullopt) {
    if (parent) check_parent(*parent);
    check_payload(e.kind, e.payload);
    if (e.position) check_placement(*e.position);
    e.id = claim_id(std::move(e.id), "n");
    auto id = e.id;
    elements_.emplace(id, std::move(e));
    if (parent) parent_[id] = *parent;
    return id;
  }

  // Records child-in-parent, replacing any previous parent.
  void contain(const std::string& child, const std::string& parent) {
    if (!elements_.count(child)) throw Error(ErrorCode::UnknownMember, "no element " + child);
    check_parent(parent);
    for (std::optional<std::string> at = parent; at; at = parent_of(*at))
      if (*at == child) throw Error(ErrorCode::ContainmentCycle, child + " would contain itself");
    parent_[child] = parent;
  }

  std::string add_edge(Edge e) {
    for (const auto* end : {&e.source, &e.target})
      if (*end && !elements_.count(**end)) throw Error(ErrorCode::UnknownEndpoint, "no element " + **end);
    if (!e.moves.empty() && !elements_.count(e.moves)) throw Error(ErrorCode::UnknownEndpoint, "no element " + e.moves);
    if (e.role != ForceRole::None && e.kind != EdgeKind::Force)
      throw Error(ErrorCode::InvalidValue, "direction role applies to Force edges only");
    e.id = claim_id(std::move(e.id), "e");
    auto id = e.id;
    edges_.emplace(id, std::move(e));
    return id;
  }

  std::string add_group(Group g) {
    detail::check_probs(g.probs);
    return insert_group_unchecked(std::move(g));
  }

  // Group insertion that only checks references; probabilities are left to validate().
  std::string insert_group_unchecked(Group g) {
    auto known = [&](const std::string& x) { return elements_.count(x) || edges_.count(x); };
    for (const auto& m : g.members)
      if (!known(m)) throw Error(ErrorCode::UnknownMember, "no element or edge " + m);
    for (const auto* ref : {&g.marker, &g.owner, &g.trunk, &g.junction})
      if (!ref->empty() && !known(*ref)) throw Error(ErrorCode::UnknownMember, "no element or edge " + *ref);
    for (double p : g.probs)
      if (std::isnan(p)) throw Error(ErrorCode::InvalidValue, "probability is NaN");
    g.id = claim_id(std::move(g.id), "g");
    auto id = g.id;
    groups_.emplace(id, std::move(g));
    return id;
  }

  // Attaches an attribute. `owner` may be "<id>.<attribute>" to name an existing
  // binding, which is never a legal host.
  void bind_attribute(const std::string& owner, AttributeBinding b) {
    check_binding(b);
    auto dot = owner.find('.');
    if (dot != std::string::npos) {
      auto host = owner.substr(0, dot), attr = owner.substr(dot + 1);
      for (const auto& x : bindings_)
        if (x.owner == host && x.binding.attribute == attr)
          throw Error(ErrorCode::IllegalAttributeHost, "an attribute cannot own an attribute");
      throw Error(ErrorCode::UnknownOwner, "no owner " + owner);
    }
    if (!has_id(owner)) throw Error(ErrorCode::UnknownOwner, "no owner " + owner);
    if (!legal_host(owner)) throw Error(ErrorCode::IllegalAttributeHost, owner + " is not a Nonquan or Change Arrow");
    if (b.attribute) {
      for (const auto& x : bindings_) {
        if (x.owner != owner || x.binding.attribute != b.attribute) continue;
        if (x.binding.value == b.value) return;
        throw Error(ErrorCode::ConflictingDuplicate, owner + "." + *b.attribute + " already bound");
      }
    }
    insert_binding_unchecked(owner, std::move(b));
  }

  // Binding insertion that only requires the owner to exist.
  void insert_binding_unchecked(const std::string& owner, AttributeBinding b) {
    check_binding(b);
    if (!has_id(owner)) throw Error(ErrorCode::UnknownOwner, "no owner " + owner);
    OwnedBinding ob{owner, std::move(b)};
    auto key = detail::binding_key(ob);
    auto at = std::upper_bound(bindings_.begin(), bindings_.end(), key,
                               [](const auto& k, const OwnedBinding& x) { return k < detail::binding_key(x); });
    bindings_.insert(at, std::move(ob));
  }

  bool legal_host(const std::string& owner) const {
    if (auto e = find_element(owner)) return is_nonquan(e->kind);
    if (auto e = find_edge(owner)) return is_change_edge(e->kind);
    return false;
  }

  bool operator==(const Diagram&) const = default;

 private:
  void check_parent(const std::string& parent) const {
    auto p = find_element(parent);
    if (!p) throw Error(ErrorCode::UnknownParent, "no parent " + parent);
    if (!is_container(p->kind))
      throw Error(ErrorCode::ParentNotContainer, parent + " (" + std::string(to_string(p->kind)) + ") cannot contain");
  }

  static void check_placement(const Placement& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.w) || !std::isfinite(p.h) || p.w < 0 ||
        p.h < 0)
      throw Error(ErrorCode::InvalidValue, "placement needs finite coordinates and non-negative extent");
  }

  std::string claim_id(std::string id, std::string_view prefix) const {
    if (id.empty()) {
      for (std::size_t n = elements_.size() + edges_.size() + groups_.size() + 1;; ++n) {
        auto candidate = std::string(prefix) + std::to_string(n);
        if (!has_id(candidate)) return candidate;
      }
    }
    if (!detail::is_identifier(id)) throw Error(ErrorCode::InvalidId, "bad id: " + id);
    if (has_id(id)) throw Error(ErrorCode::DuplicateId, "duplicate id: " + id);
    return id;
  }

  std::map<std::string, Element> elements_;
  std::map<std::string, Edge> edges_;
  std::map<std::string, Group> groups_;
  std::map<std::string, std::string> parent_;
  std::vector<OwnedBinding> bindings_;
  std::map<std::string, std::string> meta_;
};

inline Diagram new_diagram() { return Diagram{}; }

}  // namespace tumbug
