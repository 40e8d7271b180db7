#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tumbug/diagram.hpp"
#include "tumbug/grammar.hpp"

namespace tumbug {

struct RenderOptions {
  bool color = false;  // subject / direct object / indirect object hues
  double width = 800;
  double height = 600;
  double font_size = 12;
  double hatch_spacing = 6;
};

namespace svg {

struct Rect {
  double x = 0, y = 0, w = 0, h = 0;
  double cx() const { return x + w / 2; }
  double cy() const { return y + h / 2; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
};

struct Point {
  double x = 0, y = 0;
};

inline std::string num(double v) {
  double r = std::round(v * 100) / 100 + 0.0;
  return detail::format_number(r == 0 ? 0.0 : r);
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string binding_text(const AttributeBinding& b) {
  std::string v = std::holds_alternative<Text>(b.value) ? std::get<Text>(b.value).text : format_value(b.value);
  return b.attribute.value_or("DK") + " = " + v;
}

// Overlays are drawn on top of another item rather than given a layout slot.
inline bool is_overlay(const Diagram& d, const Element& e) {
  if (auto m = std::get_if<MarkerPayload>(&e.payload)) return !m->on.empty() && d.has_id(m->on);
  if (auto t = std::get_if<TimeAnchorPayload>(&e.payload)) {
    auto axis = d.find_edge(t->axis);
    return axis && axis->kind == EdgeKind::Time && axis->solitary();
  }
  if (auto r = std::get_if<AttendRingPayload>(&e.payload)) return d.find_edge(r->edge) != nullptr;
  return false;
}

inline Point clip(const Rect& r, bool round, Point toward) {
  double dx = toward.x - r.cx(), dy = toward.y - r.cy();
  if (dx == 0 && dy == 0) return {r.cx(), r.cy()};
  double t;
  if (round) {
    t = (r.w / 2) / std::hypot(dx, dy);
  } else {
    double tx = dx == 0 ? HUGE_VAL : (r.w / 2) / std::fabs(dx);
    double ty = dy == 0 ? HUGE_VAL : (r.h / 2) / std::fabs(dy);
    t = std::min(tx, ty);
  }
  t = std::min(t, 1.0);
  return {r.cx() + dx * t, r.cy() + dy * t};
}

class Renderer {
 public:
  Renderer(const Diagram& d, const RenderOptions& o) : d_(d), o_(o) {}

  std::string run() {
    layout();
    std::ostringstream body;
    for (const auto& [id, e] : d_.edges()) draw_edge(body, e);
    for (const auto& [id, g] : d_.groups()) draw_group(body, g);
    for (const auto& id : draw_order_) draw_element(body, *d_.find_element(id));
    draw_bindings(body);

    double w = std::max(o_.width, extent_.x + 40), h = std::max(o_.height, extent_.y + 40);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\" font-family=\"sans-serif\" font-size=\""
        << num(o_.font_size) << "\">\n";
    defs(out);
    out << "<rect class=\"canvas\" x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h)
        << "\" fill=\"white\"/>\n";
    out << body.str() << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr double kMargin = 40;
  static constexpr double kPad = 16;
  static constexpr double kAxisGap = 60;
  static constexpr double kLayerGap = 110;

  void defs(std::ostream& out) const {
    auto s = num(o_.hatch_spacing);
    out << "<defs>\n";
    // +45 rises to the right; SVG rotation is clockwise.
    out << "<pattern id=\"_hatch-pos45\" patternUnits=\"userSpaceOnUse\" width=\"" << s << "\" height=\"" << s
        << "\" patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" << s
        << "\" stroke=\"black\" stroke-width=\"1\"/></pattern>\n";
    out << "<pattern id=\"_hatch-neg45\" patternUnits=\"userSpaceOnUse\" width=\"" << s << "\" height=\"" << s
        << "\" patternTransform=\"rotate(-45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" << s
        << "\" stroke=\"black\" stroke-width=\"1\"/></pattern>\n";
    out << "<marker id=\"_arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" "
           "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker>\n";
    out << "<marker id=\"_arrow-mid\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"8\" "
           "markerHeight=\"8\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker>\n";
    out << "<marker id=\"_arrow-tube\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"3\" "
           "markerHeight=\"3\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#888\"/></marker>\n";
    out << "</defs>\n";
  }

  // ---- sizing -------------------------------------------------------------

  Rect natural_size(const Element& e) {
    double label_w = 0.6 * o_.font_size * static_cast<double>(e.label.size());
    switch (e.kind) {
      case ElementKind::PhysicalObjectCircle:
      case ElementKind::DataObjectCircle:
      case ElementKind::CAObjectCircle: {
        double dia = std::max(60.0, label_w + 16);
        return {0, 0, dia, dia};
      }
      case ElementKind::DataPoint: return {0, 0, 10, 10};
      case ElementKind::StateCircle: {
        double dia = std::max(50.0, label_w + 12);
        return {0, 0, dia, dia};
      }
      case ElementKind::Cell: return {0, 0, 24, 24};
      case ElementKind::SensorBar: return {0, 0, std::max(80.0, label_w + 10), 24};
      case ElementKind::Marker0D:
      case ElementKind::Marker1D:
      case ElementKind::Marker2D: return {0, 0, 24, 24};
      case ElementKind::LabelString: return {0, 0, label_w + 10, o_.font_size + 8};
      case ElementKind::ValueBar: return {0, 0, 140, 26};
      case ElementKind::CorrelationBox: {
        const auto& c = std::get<CorrelationBoxPayload>(e.payload);
        double w = label_w;
        for (const auto& eq : c.equations) w = std::max(w, 0.6 * o_.font_size * format_equation(eq).size());
        return {0, 0, std::max(120.0, w + 2 * kPad), (c.equations.size() + 1) * (o_.font_size + 4) + 2 * kPad};
      }
      case ElementKind::TimeAnchor:
      case ElementKind::AttendRing: return {0, 0, 40, 24};
      case ElementKind::SwirlyArray: return array_size(std::get<SwirlyArrayPayload>(e.payload));
      case ElementKind::ModalVerbIcon: {
        auto r = array_size(std::get<ModalVerbIconPayload>(e.payload).array);
        r.w = std::max(r.w, 80.0);
        r.h = std::max(r.h, 80.0) + o_.font_size + 4;
        return r;
      }
      case ElementKind::MotivationTriangle: return {0, 0, 90, 80};
      case ElementKind::RobinsonIcon: return {0, 0, 80, 80};
      default: return {0, 0, std::max(120.0, label_w + 2 * kPad), 80};
    }
  }

  static Rect array_size(const SwirlyArrayPayload&) { return {0, 0, 100, 100}; }

  // Size of an element including its children; children are placed relative to it.
  Rect measure(const std::string& id) {
    const auto& e = *d_.find_element(id);
    Rect self = natural_size(e);
    std::vector<std::string> kids;
    for (const auto& k : d_.children_of(id))
      if (!is_overlay(d_, *d_.find_element(k))) kids.push_back(k);

    if (!kids.empty()) {
      double header = o_.font_size + 10;
      double x = kPad, y = header, row_h = 0, max_w = 0, max_h = 0;
      int in_row = 0;
      for (const auto& k : kids) {
        Rect r = measure(k);
        const auto& child = *d_.find_element(k);
        if (child.position) {
          local_[k] = {child.position->x, child.position->y, r.w, r.h};
        } else {
          if (in_row == 3) {
            x = kPad;
            y += row_h + kPad;
            row_h = 0;
            in_row = 0;
          }
          local_[k] = {x, y, r.w, r.h};
          x += r.w + kPad;
          row_h = std::max(row_h, r.h);
          ++in_row;
        }
        max_w = std::max(max_w, local_[k].right());
        max_h = std::max(max_h, local_[k].bottom());
      }
      self.w = std::max(self.w, max_w + kPad);
      self.h = std::max(self.h, max_h + kPad);
    }
    if (e.position) {
      if (e.position->w > 0) self.w = e.position->w;
      if (e.position->h > 0) self.h = e.position->h;
    }
    size_[id] = self;
    return self;
  }

  void place(const std::string& id, double x, double y) {
    Rect r = size_[id];
    abs_[id] = {x, y, r.w, r.h};
    draw_order_.push_back(id);
    extent_.x = std::max(extent_.x, x + r.w);
    extent_.y = std::max(extent_.y, y + r.h);
    for (const auto& k : d_.children_of(id)) {
      auto it = local_.find(k);
      if (it != local_.end()) place(k, x + it->second.x, y + it->second.y);
    }
  }

  std::string top_of(std::string id) const {
    while (auto p = d_.parent_of(id)) id = *p;
    return id;
  }

  int binding_lines(const std::string& id) const { return static_cast<int>(d_.bindings_of(id).size()); }

  // ---- layout -------------------------------------------------------------

  void layout() {
    std::vector<std::string> axes;
    for (const auto& [id, e] : d_.edges())
      if (e.kind == EdgeKind::Time && e.solitary()) axes.push_back(id);

    double left = kMargin + static_cast<double>(axes.size()) * kAxisGap;
    double top = kMargin;

    std::vector<std::string> roots, fixed;
    for (const auto& [id, e] : d_.elements()) {
      if (d_.parent_of(id) || is_overlay(d_, e)) continue;
      measure(id);
      (e.position ? fixed : roots).push_back(id);
    }

    double fixed_right = left;
    for (const auto& id : fixed) {
      const auto& p = *d_.find_element(id)->position;
      place(id, left + p.x, top + p.y);
      fixed_right = std::max(fixed_right, left + p.x + size_[id].w + kLayerGap);
    }

    // Layer by edge topology: a target sits at least one layer right of its source.
    std::map<std::string, int> layer;
    for (const auto& id : roots) layer[id] = 0;
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const auto& [id, e] : d_.edges()) {
      if (!e.source || !e.target) continue;
      auto a = top_of(*e.source), b = top_of(*e.target);
      if (a != b && layer.count(a) && layer.count(b)) arcs.emplace_back(a, b);
    }
    int cap = static_cast<int>(roots.size());
    for (int pass = 0; pass < cap; ++pass) {
      bool changed = false;
      for (const auto& [a, b] : arcs)
        if (layer[b] < layer[a] + 1 && layer[a] + 1 < cap) {
          layer[b] = layer[a] + 1;
          changed = true;
        }
      if (!changed) break;
    }

    // Free-floating change arrows get a slot in the first layer.
    for (const auto& [id, e] : d_.edges())
      if (e.solitary() && e.kind != EdgeKind::Time) floating_.push_back(id);

    std::map<int, std::vector<std::string>> columns;
    for (const auto& id : roots) columns[layer[id]].push_back(id);
    double x = fixed_right;
    bool first = true;
    for (auto& [l, ids] : columns) {
      double y = top, col_w = 0;
      for (const auto& id : ids) {
        place(id, x, y);
        y += size_[id].h + kPad * 2 + binding_lines(id) * (o_.font_size + 4);
        col_w = std::max(col_w, size_[id].w);
      }
      if (first) {
        for (const auto& id : floating_) {
          slot_[id] = {x, y, 100, 20};
          y += 40 + binding_lines(id) * (o_.font_size + 4);
          col_w = std::max(col_w, 100.0);
        }
        first = false;
      }
      extent_.y = std::max(extent_.y, y);
      x += col_w + kLayerGap;
    }
    if (columns.empty()) {
      double y = top;
      for (const auto& id : floating_) {
        slot_[id] = {x, y, 100, 20};
        y += 40;
        extent_.x = std::max(extent_.x, x + 100);
        extent_.y = std::max(extent_.y, y);
      }
    }

    double axis_len = std::max(240.0, extent_.y - top);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      double ax = kMargin + static_cast<double>(i) * kAxisGap + 10;
      axis_[axes[i]] = {ax, top, 0, axis_len};
      extent_.x = std::max(extent_.x, ax + 20);
    }
    extent_.y = std::max(extent_.y, top + axis_len + 20);
    for (const auto& id : axes) scale_axis(id);

    for (const auto& [id, e] : d_.elements())
      if (!abs_.count(id)) draw_order_.push_back(id);
  }

  void scale_axis(const std::string& axis) {
    double lo = 0, hi = 0;
    for (const auto& [id, e] : d_.elements()) {
      auto t = std::get_if<TimeAnchorPayload>(&e.payload);
      if (!t || t->axis != axis) continue;
      lo = std::min(lo, t->offset);
      hi = std::max(hi, t->offset);
      if (t->end && std::isfinite(*t->end)) hi = std::max(hi, *t->end);
    }
    if (hi - lo < 1) hi = lo + 1;
    range_[axis] = {lo, hi};
  }

  double axis_y(const std::string& axis, double offset) const {
    const auto& a = axis_.at(axis);
    auto [lo, hi] = range_.at(axis);
    if (!std::isfinite(offset)) return a.bottom() - 8;
    return a.y + 20 + (offset - lo) / (hi - lo) * (a.h - 50);
  }

  // ---- drawing ------------------------------------------------------------

  std::string fill_for(const Element& e) const {
    if (!o_.color) return "white";
    const auto& id = e.id;
    if (id == "agent" || id == "subject" || id == "actor") return "#b8e6b8";
    if (id == "object" || id == "minor") return "#f6c2c2";
    if (id == "recipient") return "#c2d6f6";
    return "white";
  }

  void text(std::ostream& out, double x, double y, std::string_view s, const char* anchor = "middle",
            const char* cls = "label") const {
    if (s.empty()) return;
    out << "<text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
        << "\">" << escape(s) << "</text>\n";
  }

  std::optional<Rect> bounds_of(const std::string& id) const {
    if (auto it = abs_.find(id); it != abs_.end()) return it->second;
    if (auto it = slot_.find(id); it != slot_.end()) return it->second;
    if (auto it = mid_.find(id); it != mid_.end()) return Rect{it->second.x - 4, it->second.y - 4, 8, 8};
    return std::nullopt;
  }

  bool round(const std::string& id) const {
    auto e = d_.find_element(id);
    return e && (is_object_circle(e->kind) || e->kind == ElementKind::StateCircle || e->kind == ElementKind::DataPoint);
  }

  void draw_edge(std::ostream& out, const Edge& e) {
    std::string cls = "edge " + std::string(to_string(e.kind));
    out << "<g id=\"" << escape(e.id) << "\" class=\"" << escape(cls) << "\">\n";

    if (auto a = axis_.find(e.id); a != axis_.end()) {
      const Rect& r = a->second;
      out << "<line x1=\"" << num(r.x) << "\" y1=\"" << num(r.y) << "\" x2=\"" << num(r.x) << "\" y2=\""
          << num(r.bottom()) << "\" stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#_arrow)\"/>\n";
      double y0 = axis_y(e.id, 0);
      out << "<line class=\"tick now\" x1=\"" << num(r.x - 6) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(r.x + 6)
          << "\" y2=\"" << num(y0) << "\" stroke=\"black\"/>\n";
      text(out, r.x - 10, y0 + o_.font_size / 3, "0", "end", "tick-label");
      text(out, r.x, r.y - 6, e.label);
      mid_[e.id] = {r.x, (r.y + r.bottom()) / 2};
      out << "</g>\n";
      return;
    }

    Point p, q;
    auto src = e.source ? bounds_of(*e.source) : std::nullopt;
    auto dst = e.target ? bounds_of(*e.target) : std::nullopt;
    if (e.self_loop() && src) {
      Rect r = *src;
      double x = r.right() - 4, y = r.y + 4;
      out << "<path d=\"M" << num(x) << ',' << num(y) << " C" << num(x + 40) << ',' << num(y - 40) << ' '
          << num(x + 40) << ',' << num(y + 40) << ' ' << num(r.right()) << ',' << num(r.cy())
          << "\" fill=\"none\" " << stroke(e.kind) << " marker-end=\"url(#_arrow)\"/>\n";
      mid_[e.id] = {x + 30, y};
      text(out, x + 44, y, e.label, "start");
      out << "</g>\n";
      return;
    }
    if (src && dst) {
      p = clip(*src, round(*e.source), {dst->cx(), dst->cy()});
      q = clip(*dst, round(*e.target), {src->cx(), src->cy()});
    } else if (src) {
      p = {src->right(), src->cy()};
      q = {src->right() + 80, src->cy()};
    } else if (dst) {
      p = {dst->x - 80, dst->cy()};
      q = {dst->x, dst->cy()};
    } else {
      Rect s = slot_.count(e.id) ? slot_[e.id] : Rect{kMargin, kMargin, 100, 20};
      p = {s.x, s.cy()};
      q = {s.right(), s.cy()};
    }
    Point m{(p.x + q.x) / 2, (p.y + q.y) / 2};
    mid_[e.id] = m;

    if (e.kind == EdgeKind::Relationship) {
      // Dotted with the arrowhead at the center.
      out << "<path d=\"M" << num(p.x) << ',' << num(p.y) << " L" << num(m.x) << ',' << num(m.y) << " L"
          << num(q.x) << ',' << num(q.y) << "\" fill=\"none\" " << stroke(e.kind)
          << " marker-mid=\"url(#_arrow-mid)\"/>\n";
    } else {
      const char* head = e.kind == EdgeKind::Tube ? "url(#_arrow-tube)" : "url(#_arrow)";
      out << "<line x1=\"" << num(p.x) << "\" y1=\"" << num(p.y) << "\" x2=\"" << num(q.x) << "\" y2=\"" << num(q.y)
          << "\" " << stroke(e.kind) << " marker-end=\"" << head << "\"/>\n";
    }
    std::string caption = e.label;
    if (!e.moves.empty() && e.source && e.moves != *e.source) {
      auto moved = d_.find_element(e.moves);
      std::string what = moved && !moved->label.empty() ? moved->label : e.moves;
      caption = caption.empty() ? "[" + what + "]" : caption + " [" + what + "]";
    }
    if (e.kind == EdgeKind::Force && e.role != ForceRole::None)
      caption += caption.empty() ? std::string(to_string(e.role)) : " (" + std::string(to_string(e.role)) + ")";
    if (!e.attribute.empty()) caption += caption.empty() ? e.attribute : " : " + e.attribute;
    text(out, m.x, m.y - 6, caption);
    out << "</g>\n";
  }

  static std::string stroke(EdgeKind k) {
    switch (k) {
      case EdgeKind::Time: return "stroke=\"black\" stroke-width=\"2\"";
      case EdgeKind::Motion: return "stroke=\"black\" stroke-width=\"2\"";
      case EdgeKind::Force: return "stroke=\"black\" stroke-width=\"4\"";
      case EdgeKind::Causation: return "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"8,4\"";
      case EdgeKind::Tube: return "stroke=\"#bbb\" stroke-width=\"10\" stroke-linecap=\"round\"";
      case EdgeKind::Relationship: return "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"2,4\"";
    }
    return {};
  }

  void draw_group(std::ostream& out, const Group& g) {
    out << "<g id=\"" << escape(g.id) << "\" class=\"group " << to_string(g.kind) << "\">\n";
    if (g.kind == GroupKind::StateDiagram) {
      std::optional<Rect> box;
      for (const auto& m : g.members) {
        auto r = bounds_of(m);
        if (!r) continue;
        if (!box) {
          box = *r;
          continue;
        }
        double x0 = std::min(box->x, r->x), y0 = std::min(box->y, r->y);
        double x1 = std::max(box->right(), r->right()), y1 = std::max(box->bottom(), r->bottom());
        box = Rect{x0, y0, x1 - x0, y1 - y0};
      }
      if (box) {
        out << "<rect x=\"" << num(box->x - 10) << "\" y=\"" << num(box->y - 10) << "\" width=\"" << num(box->w + 20)
            << "\" height=\"" << num(box->h + 20) << "\" rx=\"12\" fill=\"none\" stroke=\"#666\" "
            << "stroke-dasharray=\"6,3\"/>\n";
      }
      if (auto r = g.marker.empty() ? std::nullopt : bounds_of(g.marker)) {
        out << "<rect class=\"state-marker\" x=\"" << num(r->cx() - 4) << "\" y=\"" << num(r->y + 4)
            << "\" width=\"8\" height=\"8\" fill=\"black\"/>\n";
      }
    } else {
      auto trunk = axis_.find(g.trunk);
      if (trunk != axis_.end()) {
        Point from{trunk->second.x, trunk->second.bottom()};
        for (const auto& m : g.members) {
          auto br = axis_.find(m);
          if (br == axis_.end()) continue;
          out << "<line x1=\"" << num(from.x) << "\" y1=\"" << num(from.y) << "\" x2=\"" << num(br->second.x)
              << "\" y2=\"" << num(br->second.y) << "\" stroke=\"black\" stroke-dasharray=\"3,3\"/>\n";
        }
      }
      for (std::size_t i = 0; i < g.probs.size() && i < g.members.size(); ++i)
        if (auto r = bounds_of(g.members[i])) text(out, r->cx() + 8, r->y + 40, "p=" + num(g.probs[i]), "start");
    }
    out << "</g>\n";
  }

  void rect(std::ostream& out, const Rect& r, const std::string& attrs) const {
    out << "<rect x=\"" << num(r.x) << "\" y=\"" << num(r.y) << "\" width=\"" << num(r.w) << "\" height=\""
        << num(r.h) << "\" " << attrs << "/>\n";
  }

  void draw_element(std::ostream& out, const Element& e) {
    out << "<g id=\"" << escape(e.id) << "\" class=\"element " << to_string(e.kind) << "\">\n";
    if (is_overlay(d_, e)) {
      draw_overlay(out, e);
      out << "</g>\n";
      return;
    }
    Rect r = abs_.count(e.id) ? abs_[e.id] : Rect{kMargin, kMargin, 20, 20};
    double ty = r.cy() + o_.font_size / 3;
    auto fill = fill_for(e);
    switch (e.kind) {
      case ElementKind::PhysicalObjectCircle:
      case ElementKind::DataObjectCircle:
      case ElementKind::CAObjectCircle:
      case ElementKind::StateCircle: {
        std::string dash = e.kind == ElementKind::DataObjectCircle ? " stroke-dasharray=\"2,3\"" : "";
        std::string width = e.kind == ElementKind::StateCircle ? "3" : "2";
        out << "<circle cx=\"" << num(r.cx()) << "\" cy=\"" << num(r.cy()) << "\" r=\"" << num(r.w / 2)
            << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"" << width << "\"" << dash << "/>\n";
        if (e.kind == ElementKind::CAObjectCircle) text(out, r.cx(), r.y + o_.font_size + 2, "C-A", "middle", "tag");
        text(out, r.cx(), ty, e.label);
        break;
      }
      case ElementKind::DataPoint:
        rect(out, r, "rx=\"5\" fill=\"black\"");
        text(out, r.right() + 4, ty, e.label, "start");
        break;
      case ElementKind::Cell: {
        bool on = std::get<CellPayload>(e.payload).active;
        rect(out, r, std::string("fill=\"") + (on ? "black" : "white") + "\" stroke=\"black\"");
        text(out, r.cx(), r.bottom() + o_.font_size + 2, e.label);
        break;
      }
      case ElementKind::SensorBar:
        rect(out, r, "fill=\"url(#_hatch-neg45)\" stroke=\"black\" data-hatch=\"-45\"");
        text(out, r.cx(), r.bottom() + o_.font_size + 2, e.label);
        break;
      case ElementKind::Marker0D:
        rect(out, {r.cx() - 4, r.cy() - 4, 8, 8}, "fill=\"black\"");
        text(out, r.cx(), r.bottom() + o_.font_size, e.label);
        break;
      case ElementKind::Marker1D:
        out << "<line x1=\"" << num(r.x) << "\" y1=\"" << num(r.bottom()) << "\" x2=\"" << num(r.right())
            << "\" y2=\"" << num(r.y) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        text(out, r.right() + 2, r.y, e.label, "start");
        break;
      case ElementKind::Marker2D:
        rect(out, r, "fill=\"url(#_hatch-pos45)\" stroke=\"none\" data-hatch=\"45\"");
        text(out, r.cx(), r.bottom() + o_.font_size, e.label);
        break;
      case ElementKind::VerbatimBox:
        rect(out, r, "fill=\"" + fill + "\" stroke=\"black\"");
        rect(out, {r.x + 4, r.y + 4, r.w - 8, r.h - 8}, "fill=\"none\" stroke=\"black\"");
        text(out, r.x + 8, r.y + o_.font_size + 4, e.label, "start");
        break;
      case ElementKind::DescriptiveBox:
        rect(out, r, "fill=\"" + fill + "\" stroke=\"black\"");
        text(out, r.x + 8, r.y + o_.font_size + 4, e.label, "start");
        break;
      case ElementKind::AggregationBox:
      case ElementKind::CAAggregationBox:
        rect(out, r, "rx=\"10\" fill=\"" + (fill == "white" ? std::string("none") : fill) + "\" stroke=\"black\"");
        text(out, r.x + 8, r.y + o_.font_size + 4,
             (e.kind == ElementKind::CAAggregationBox ? "C-A " : "") + e.label, "start");
        break;
      case ElementKind::XorBox:
        rect(out, r, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
        text(out, r.x + 8, r.y + o_.font_size + 4, e.label.empty() ? "XOR" : "XOR " + e.label, "start");
        break;
      case ElementKind::DataSetBox:
        rect(out, r, "fill=\"none\" stroke=\"black\" stroke-dasharray=\"2,3\"");
        text(out, r.x + 8, r.y + o_.font_size + 4, e.label, "start");
        break;
      case ElementKind::SwirlyArray:
        draw_array(out, std::get<SwirlyArrayPayload>(e.payload), r);
        text(out, r.cx(), r.bottom() + o_.font_size, e.label);
        break;
      case ElementKind::ModalVerbIcon: {
        const auto& mv = std::get<ModalVerbIconPayload>(e.payload);
        Rect a{r.x, r.y, r.w, r.h - o_.font_size - 4};
        rect(out, a, "rx=\"" + num(a.w / 2) + "\" fill=\"none\" stroke=\"black\"");
        draw_array(out, mv.array, a);
        std::string caption = e.label.empty() ? mv.verb : e.label;
        if (!mv.meaning.empty()) caption += " (" + mv.meaning + ")";
        text(out, r.cx(), r.bottom(), caption);
        break;
      }
      case ElementKind::ValueBar: {
        const auto& vb = std::get<ValueBarPayload>(e.payload);
        rect(out, r, "fill=\"none\" stroke=\"black\"");
        text(out, r.cx(), ty, (vb.attribute.empty() ? "" : vb.attribute + " ") + format_value(vb.value));
        text(out, r.cx(), r.y - 4, e.label);
        break;
      }
      case ElementKind::CorrelationBox: {
        const auto& c = std::get<CorrelationBoxPayload>(e.payload);
        rect(out, r, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
        double y = r.y + kPad + o_.font_size;
        text(out, r.x + kPad, y, e.label.empty() ? "correlation" : e.label, "start");
        for (const auto& eq : c.equations) {
          y += o_.font_size + 4;
          text(out, r.x + kPad, y, format_equation(eq), "start", "equation");
        }
        break;
      }
      case ElementKind::LabelString: text(out, r.x + 5, ty, e.label, "start"); break;
      case ElementKind::TimeAnchor: {
        const auto& t = std::get<TimeAnchorPayload>(e.payload);
        out << "<line x1=\"" << num(r.x) << "\" y1=\"" << num(r.cy()) << "\" x2=\"" << num(r.x + 12) << "\" y2=\""
            << num(r.cy()) << "\" stroke=\"black\"/>\n";
        text(out, r.x + 16, ty, e.label.empty() ? num(t.offset) : e.label, "start");
        break;
      }
      case ElementKind::AttendRing:
        out << "<ellipse cx=\"" << num(r.cx()) << "\" cy=\"" << num(r.cy()) << "\" rx=\"16\" ry=\"10\" fill=\"none\" "
            << "stroke=\"black\" stroke-width=\"2\"/>\n";
        break;
      case ElementKind::MotivationTriangle: {
        out << "<polygon points=\"" << num(r.cx()) << ',' << num(r.y) << ' ' << num(r.right()) << ','
            << num(r.bottom()) << ' ' << num(r.x) << ',' << num(r.bottom())
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const auto& mt = std::get<MotivationTrianglePayload>(e.payload);
        for (const auto& mk : mt.markers) {
          double y = r.bottom() - (static_cast<double>(mk.level) + 0.5) * r.h / 4;
          text(out, r.cx(), y + o_.font_size / 3, std::string(to_string(mk.valence)), "middle", "motivation");
        }
        text(out, r.cx(), r.bottom() + o_.font_size + 2, e.label);
        break;
      }
      case ElementKind::RobinsonIcon: {
        std::ostringstream pts;
        for (int i = 0; i < 6; ++i) {
          double a = M_PI / 3 * i;
          pts << (i ? " " : "") << num(r.cx() + r.w / 2 * std::cos(a)) << ',' << num(r.cy() + r.h / 2 * std::sin(a));
        }
        out << "<polygon points=\"" << pts.str() << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const auto& rb = std::get<RobinsonIconPayload>(e.payload);
        for (auto cat : rb.active) {
          double a = M_PI / 3 * static_cast<double>(cat) + M_PI / 6;
          rect(out, {r.cx() + r.w / 3 * std::cos(a) - 3, r.cy() + r.h / 3 * std::sin(a) - 3, 6, 6}, "fill=\"black\"");
        }
        text(out, r.cx(), ty, std::string(to_string(rb.valence)));
        text(out, r.cx(), r.bottom() + o_.font_size + 2, e.label);
        break;
      }
      case ElementKind::ZoomBoxPair: {
        Rect small{r.x, r.y + r.h / 3, r.w / 4, r.h / 3};
        Rect big{r.x + r.w / 2, r.y, r.w / 2, r.h};
        rect(out, small, "fill=\"none\" stroke=\"black\"");
        rect(out, big, "fill=\"none\" stroke=\"black\"");
        for (double dy : {0.0, 1.0})
          out << "<line x1=\"" << num(small.right()) << "\" y1=\"" << num(small.y + dy * small.h) << "\" x2=\""
              << num(big.x) << "\" y2=\"" << num(big.y + dy * big.h) << "\" stroke=\"#666\"/>\n";
        text(out, big.x + 8, big.y + o_.font_size + 4, e.label, "start");
        break;
      }
    }
    out << "</g>\n";
  }

  // Cell coordinates are scaled to fit the icon, keeping their aspect.
  void draw_array(std::ostream& out, const SwirlyArrayPayload& a, const Rect& r) const {
    if (a.cells.empty()) return;
    double x0 = HUGE_VAL, y0 = HUGE_VAL, x1 = -HUGE_VAL, y1 = -HUGE_VAL;
    for (const auto& c : a.cells) {
      x0 = std::min(x0, c.x);
      y0 = std::min(y0, c.y);
      x1 = std::max(x1, c.x);
      y1 = std::max(y1, c.y);
    }
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double side = std::min(r.w, r.h) - 24;
    double ox = r.cx() - (x1 - x0) / span * side / 2, oy = r.cy() - (y1 - y0) / span * side / 2;
    for (const auto& c : a.cells) {
      double x = ox + (c.x - x0) / span * side, y = oy + (c.y - y0) / span * side;
      rect(out, {x - 3, y - 3, 6, 6}, std::string("fill=\"") + (a.is_active(c.id) ? "black" : "white") +
                                          "\" stroke=\"black\"");
    }
  }

  void draw_overlay(std::ostream& out, const Element& e) {
    if (auto t = std::get_if<TimeAnchorPayload>(&e.payload)) {
      const Rect& ax = axis_.at(t->axis);
      double y = axis_y(t->axis, t->offset);
      if (t->end) {
        double y2 = axis_y(t->axis, *t->end);
        rect(out, {ax.x - 4, y, 8, std::max(2.0, y2 - y)}, "fill=\"#999\" stroke=\"black\"");
      } else {
        out << "<line x1=\"" << num(ax.x - 8) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ax.x + 8) << "\" y2=\""
            << num(y) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      }
      text(out, ax.x + 12, y + o_.font_size / 3, e.label, "start");
      return;
    }
    if (auto ring = std::get_if<AttendRingPayload>(&e.payload)) {
      auto m = mid_.count(ring->edge) ? mid_[ring->edge] : Point{kMargin, kMargin};
      out << "<ellipse cx=\"" << num(m.x) << "\" cy=\"" << num(m.y) << "\" rx=\"14\" ry=\"9\" fill=\"none\" "
          << "stroke=\"black\" stroke-width=\"2\"/>\n";
      return;
    }
    const auto& mk = std::get<MarkerPayload>(e.payload);
    Rect r = bounds_of(mk.on).value_or(Rect{kMargin, kMargin, 8, 8});
    std::string caption = e.label;
    if (!mk.attribute.empty()) caption += (caption.empty() ? "" : " ") + mk.attribute + " = DK";
    switch (e.kind) {
      case ElementKind::Marker0D:
        rect(out, {r.cx() - 4, r.cy() - 4, 8, 8}, "fill=\"black\"");
        text(out, r.cx() + 8, r.cy() - 6, caption, "start");
        break;
      case ElementKind::Marker1D:
        // Slanted so it stands out against horizontal and vertical lines.
        out << "<line x1=\"" << num(r.right()) << "\" y1=\"" << num(r.y) << "\" x2=\"" << num(r.right() + 30)
            << "\" y2=\"" << num(r.y - 30) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        text(out, r.right() + 32, r.y - 32, caption, "start");
        break;
      default:
        rect(out, r, "fill=\"url(#_hatch-pos45)\" stroke=\"none\" data-hatch=\"45\"");
        text(out, r.cx(), r.bottom() - 4, caption);
        break;
    }
  }

  void draw_bindings(std::ostream& out) {
    std::map<std::string, int> count;
    for (const auto& b : d_.bindings()) {
      auto r = bounds_of(b.owner);
      if (!r) continue;
      int i = count[b.owner]++;
      double line = o_.font_size + 4;
      double x = r->right() + 24, y = r->y + line * (i + 1);
      if (d_.find_edge(b.owner)) {
        x = r->cx() + 10;
        y = r->cy() + line * (i + 1);
      }
      out << "<line class=\"attribute-line\" x1=\"" << num(r->right()) << "\" y1=\"" << num(r->cy()) << "\" x2=\""
          << num(x - 2) << "\" y2=\"" << num(y - o_.font_size / 3) << "\" stroke=\"#444\"/>\n";
      text(out, x, y, binding_text(b.binding), "start", "binding");
    }
  }

  const Diagram& d_;
  RenderOptions o_;
  std::map<std::string, Rect> size_, local_, abs_, slot_, axis_;
  std::map<std::string, Point> mid_;
  std::map<std::string, std::pair<double, double>> range_;
  std::vector<std::string> draw_order_, floating_;
  Point extent_;
};

}  // namespace svg

// Renders a valid diagram as an SVG document. Output is a pure function of the input.
inline std::string render(const Diagram& d, const RenderOptions& o = {}, const LegalityTable& table = default_legality()) {
  if (!(o.width > 0 && o.height > 0 && o.font_size > 0 && o.hatch_spacing > 0) || !std::isfinite(o.width) ||
      !std::isfinite(o.height) || !std::isfinite(o.font_size) || !std::isfinite(o.hatch_spacing))
    throw Error(ErrorCode::InvalidValue, "render options need positive dimensions");
  auto v = validate(d, table);
  if (!v.empty())
    throw Error(ErrorCode::InvalidDiagram, std::to_string(v.size()) + " violation(s), first: " + format_violation(v[0]));
  return svg::Renderer(d, o).run();
}

}  // namespace tumbug
