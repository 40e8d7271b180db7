#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/diagram.hpp"
#include "tumbug/error.hpp"

namespace tumbug {

// Line-oriented text format:
//
//   meta title="The quick brown fox"
//   elem fox PhysicalObjectCircle label="fox"
//   contain fox box
//   edge m1 Motion fox -> fox label="run"
//   group sd StateDiagram members=s1,s2,t1 marker=s1
//   attr fox speed="quick"

struct SourceSpan {
  int line = 1;
  int begin = 1;  // 1-based columns, inclusive
  int end = 1;
  bool operator==(const SourceSpan&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found)
      : Error(ErrorCode::Parse, "line " + std::to_string(span.line) + ":" + std::to_string(span.begin) + ": expected " +
                                    expected + ", found " + found),
        span_(span),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const SourceSpan& span() const noexcept { return span_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

namespace detail {

// ---------------------------------------------------------------------------
// Shared item codecs (also used inside repeated payload keys)

inline std::string format_attribute_name(const std::optional<std::string>& a) {
  if (!a) return "DK";
  if (is_identifier(*a) && !wildcard_from_string(*a)) return *a;
  return quote(*a);
}

inline std::string format_binding(const AttributeBinding& b) {
  return format_attribute_name(b.attribute) + "=" + format_value(b.value);
}

// Position of the first `c` outside double quotes.
inline std::size_t find_unquoted(std::string_view s, char c) {
  bool in = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in && s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '"') in = !in;
    else if (!in && s[i] == c) return i;
  }
  return std::string_view::npos;
}

inline std::optional<std::string> parse_attribute_name(std::string_view s) {
  if (s == "DK") return std::nullopt;
  if (!s.empty() && s.front() == '"') {
    std::size_t pos = 0;
    auto text = read_quoted(s, pos);
    if (!text || pos != s.size()) throw Error(ErrorCode::InvalidBinding, "malformed attribute name");
    if (text->empty()) throw Error(ErrorCode::InvalidBinding, "empty attribute name");
    return *text;
  }
  if (!is_identifier(s)) throw Error(ErrorCode::InvalidBinding, "bad attribute name: " + std::string(s));
  return std::string(s);
}

inline AttributeBinding parse_binding(std::string_view s) {
  auto eq = find_unquoted(s, '=');
  if (eq == std::string_view::npos) throw Error(ErrorCode::InvalidBinding, "binding needs '='");
  AttributeBinding b{parse_attribute_name(s.substr(0, eq)), parse_value(s.substr(eq + 1))};
  check_binding(b);
  return b;
}

inline std::vector<double> parse_numbers(std::string_view s, std::size_t count, bool allow_infinite = false) {
  auto parts = split(s, ',');
  if (parts.size() != count) throw Error(ErrorCode::InvalidValue, "expected " + std::to_string(count) + " numbers");
  std::vector<double> out;
  for (auto p : parts) {
    auto v = parse_number(p, allow_infinite);
    if (!v) throw Error(ErrorCode::InvalidValue, "bad number: " + std::string(p));
    out.push_back(*v);
  }
  return out;
}

inline std::string format_numbers(std::initializer_list<double> xs) {
  std::string out;
  for (double x : xs) {
    if (!out.empty()) out += ',';
    out += format_number(x);
  }
  return out;
}

inline std::string checked_id(std::string_view s) {
  if (!is_identifier(s)) throw Error(ErrorCode::InvalidId, "bad id: " + std::string(s));
  return std::string(s);
}

inline bool parse_flag(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(ErrorCode::InvalidValue, "expected true or false");
}

// ---------------------------------------------------------------------------
// Payload <-> key/value pairs

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline void emit_array(KeyValues& kv, const SwirlyArrayPayload& a) {
  for (const auto& c : a.cells) kv.emplace_back("cell", c.id + "," + format_numbers({c.x, c.y}));
  for (const auto& id : a.active) kv.emplace_back("active", id);
}

inline bool apply_array(SwirlyArrayPayload& a, const std::string& key, std::string_view v) {
  if (key == "cell") {
    auto comma = v.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::InvalidPayload, "cell needs id,x,y");
    auto xy = parse_numbers(v.substr(comma + 1), 2);
    a.cells.push_back(ArrayCell{checked_id(v.substr(0, comma)), xy[0], xy[1]});
  } else if (key == "active") {
    a.active.push_back(checked_id(v));
  } else {
    return false;
  }
  return true;
}

inline KeyValues emit_payload(const Payload& payload) {
  KeyValues kv;
  auto opt = [&](const char* k, const std::string& v) {
    if (!v.empty()) kv.emplace_back(k, v);
  };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ObjectPayload>) {
          opt("part_of", p.part_of);
          opt("part_role", p.part_role);
        } else if constexpr (std::is_same_v<T, CAPayload>) {
          for (const auto& b : p.forced) kv.emplace_back("forced", format_binding(b));
          for (const auto& b : p.detected) kv.emplace_back("detected", format_binding(b));
          if (p.open_ended) kv.emplace_back("open_ended", "true");
        } else if constexpr (std::is_same_v<T, CellPayload>) {
          if (p.active) kv.emplace_back("active", "true");
        } else if constexpr (std::is_same_v<T, MarkerPayload>) {
          opt("on", p.on);
          opt("attr", p.attribute);
        } else if constexpr (std::is_same_v<T, BoxPayload>) {
          for (const auto& c : p.constraints) kv.emplace_back("constraint", c);
        } else if constexpr (std::is_same_v<T, SwirlyArrayPayload>) {
          emit_array(kv, p);
        } else if constexpr (std::is_same_v<T, ValueBarPayload>) {
          opt("attribute", p.attribute);
          kv.emplace_back("value", format_value(p.value));
        } else if constexpr (std::is_same_v<T, CorrelationBoxPayload>) {
          for (const auto& s : p.slots) kv.emplace_back("slot", s.name + "," + s.element + "," + s.attribute);
          for (const auto& e : p.equations) kv.emplace_back("eq", format_equation(e));
        } else if constexpr (std::is_same_v<T, TimeAnchorPayload>) {
          opt("axis", p.axis);
          kv.emplace_back("offset", format_number(p.offset));
          if (p.end) kv.emplace_back("end", format_number(*p.end));
          opt("role", p.role);
        } else if constexpr (std::is_same_v<T, AttendRingPayload>) {
          opt("edge", p.edge);
        } else if constexpr (std::is_same_v<T, MotivationTrianglePayload>) {
          for (const auto& m : p.markers)
            kv.emplace_back("marker", std::string(to_string(m.level)) + std::string(to_string(m.valence)));
          opt("robinson", p.robinson);
        } else if constexpr (std::is_same_v<T, RobinsonIconPayload>) {
          for (auto c : p.active) kv.emplace_back("category", std::string(to_string(c)));
          kv.emplace_back("valence", std::string(to_string(p.valence)));
          opt("subnode", p.subnode);
          opt("cathected", p.cathected_target);
        } else if constexpr (std::is_same_v<T, ModalVerbIconPayload>) {
          opt("verb", p.verb);
          opt("meaning", p.meaning);
          emit_array(kv, p.array);
        } else if constexpr (std::is_same_v<T, ZoomBoxPayload>) {
          opt("focus", p.focus);
          kv.emplace_back("magnification", format_number(p.magnification));
        }
      },
      payload);
  return kv;
}

// Applies one key to a payload; false when the key does not belong to it.
inline bool apply_payload_key(Payload& payload, const std::string& key, std::string_view v) {
  return std::visit(
      [&](auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ObjectPayload>) {
          if (key == "part_of") p.part_of = checked_id(v);
          else if (key == "part_role") p.part_role = std::string(v);
          else return false;
        } else if constexpr (std::is_same_v<T, CAPayload>) {
          if (key == "forced") p.forced.push_back(parse_binding(v));
          else if (key == "detected") p.detected.push_back(parse_binding(v));
          else if (key == "open_ended") p.open_ended = parse_flag(v);
          else return false;
        } else if constexpr (std::is_same_v<T, CellPayload>) {
          if (key == "active") p.active = parse_flag(v);
          else return false;
        } else if constexpr (std::is_same_v<T, MarkerPayload>) {
          if (key == "on") p.on = checked_id(v);
          else if (key == "attr") p.attribute = std::string(v);
          else return false;
        } else if constexpr (std::is_same_v<T, BoxPayload>) {
          if (key == "constraint") p.constraints.emplace_back(v);
          else return false;
        } else if constexpr (std::is_same_v<T, SwirlyArrayPayload>) {
          return apply_array(p, key, v);
        } else if constexpr (std::is_same_v<T, ValueBarPayload>) {
          if (key == "attribute") p.attribute = std::string(v);
          else if (key == "value") p.value = parse_value(v);
          else return false;
        } else if constexpr (std::is_same_v<T, CorrelationBoxPayload>) {
          if (key == "slot") {
            auto parts = split(v, ',');
            if (parts.size() != 3) throw Error(ErrorCode::InvalidPayload, "slot needs name,element,attribute");
            if (!parts[1].empty()) checked_id(parts[1]);
            p.slots.push_back(CorrelationSlot{std::string(parts[0]), std::string(parts[1]), std::string(parts[2])});
          } else if (key == "eq") {
            p.equations.push_back(parse_equation(v));
          } else {
            return false;
          }
        } else if constexpr (std::is_same_v<T, TimeAnchorPayload>) {
          if (key == "axis") p.axis = checked_id(v);
          else if (key == "offset") p.offset = parse_numbers(v, 1)[0];
          else if (key == "end") p.end = parse_numbers(v, 1, true)[0];
          else if (key == "role") p.role = std::string(v);
          else return false;
        } else if constexpr (std::is_same_v<T, AttendRingPayload>) {
          if (key == "edge") p.edge = checked_id(v);
          else return false;
        } else if constexpr (std::is_same_v<T, MotivationTrianglePayload>) {
          if (key == "marker") {
            if (v.empty()) throw Error(ErrorCode::InvalidPayload, "empty marker");
            auto level = motivation_level_from_string(v.substr(0, v.size() - 1));
            auto val = valence_from_string(v.substr(v.size() - 1));
            if (!level || !val) throw Error(ErrorCode::InvalidPayload, "marker is <level><+|->");
            p.markers.push_back(MotivationMarker{*level, *val});
          } else if (key == "robinson") {
            p.robinson = checked_id(v);
          } else {
            return false;
          }
        } else if constexpr (std::is_same_v<T, RobinsonIconPayload>) {
          if (key == "category") {
            auto c = emotion_category_from_string(v);
            if (!c) throw Error(ErrorCode::InvalidPayload, "unknown emotion category");
            p.active.push_back(*c);
          } else if (key == "valence") {
            auto val = valence_from_string(v);
            if (!val) throw Error(ErrorCode::InvalidPayload, "valence is + or -");
            p.valence = *val;
          } else if (key == "subnode") {
            p.subnode = std::string(v);
          } else if (key == "cathected") {
            p.cathected_target = checked_id(v);
          } else {
            return false;
          }
        } else if constexpr (std::is_same_v<T, ModalVerbIconPayload>) {
          if (key == "verb") p.verb = std::string(v);
          else if (key == "meaning") p.meaning = std::string(v);
          else return apply_array(p.array, key, v);
        } else if constexpr (std::is_same_v<T, ZoomBoxPayload>) {
          if (key == "focus") p.focus = checked_id(v);
          else if (key == "magnification") p.magnification = parse_numbers(v, 1)[0];
          else return false;
        } else {
          return false;
        }
        return true;
      },
      payload);
}

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Type { Word, Str, Eq, End };
  Type type = Type::End;
  std::string text;
  SourceSpan span;
};

inline std::string describe(const Token& t) {
  switch (t.type) {
    case Token::Type::Word: return "'" + t.text + "'";
    case Token::Type::Str: return "string " + quote(t.text);
    case Token::Type::Eq: return "'='";
    default: return "end of line";
  }
}

inline std::vector<Token> lex_line(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [](std::size_t at) { return static_cast<int>(at) + 1; };
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '=') {
      out.push_back(Token{Token::Type::Eq, "=", {line_no, col(i), col(i)}});
      ++i;
    } else if (c == '"') {
      auto start = i;
      auto text = read_quoted(line, i);
      if (!text) {
        SourceSpan span{line_no, col(start), col(std::max(start, std::min(i, line.size() - 1)))};
        throw ParseError(span, "closed string literal", "malformed string");
      }
      out.push_back(Token{Token::Type::Str, *text, {line_no, col(start), col(i - 1)}});
    } else {
      auto start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '"' &&
             line[i] != '=')
        ++i;
      out.push_back(Token{Token::Type::Word, std::string(line.substr(start, i - start)), {line_no, col(start), col(i - 1)}});
    }
  }
  int end_col = static_cast<int>(line.size()) + 1;
  out.push_back(Token{Token::Type::End, "", {line_no, end_col, end_col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class DslParser {
 public:
  Diagram run(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++line_no;
      toks_ = lex_line(line, line_no);
      at_ = 0;
      if (toks_.front().type != Token::Type::End) record();
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    return std::move(d_);
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) { throw ParseError(t.span, expected, describe(t)); }

  const Token& word(const std::string& expected) {
    const auto& t = next();
    if (t.type != Token::Type::Word) fail(t, expected);
    return t;
  }

  std::string id(const std::string& what) {
    const auto& t = word(what);
    if (!is_identifier(t.text)) fail(t, what);
    return t.text;
  }

  void end() {
    if (peek().type != Token::Type::End) fail(peek(), "end of line");
  }

  struct Pair {
    Token key;
    Token value;
  };

  std::vector<Pair> pairs() {
    std::vector<Pair> out;
    while (peek().type != Token::Type::End) {
      auto key = word("key=value");
      if (next().type != Token::Type::Eq) fail(toks_[at_ - 1], "'=' after " + key.text);
      const auto& val = next();
      if (val.type != Token::Type::Word && val.type != Token::Type::Str) fail(val, "value for " + key.text);
      out.push_back(Pair{key, val});
    }
    return out;
  }

  // Runs a model mutation, reporting library errors at `t`.
  template <class F>
  auto guard(const Token& t, const std::string& expected, F&& f) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(t.span, expected, e.what());
    }
  }

  void record() {
    const auto& head = word("record keyword");
    if (head.text == "meta") meta();
    else if (head.text == "elem") elem();
    else if (head.text == "contain") contain();
    else if (head.text == "edge") edge();
    else if (head.text == "group") group();
    else if (head.text == "attr") attr();
    else fail(head, "one of meta, elem, contain, edge, group, attr");
  }

  void meta() {
    auto key = id("meta key");
    const auto& eq = next();
    if (eq.type != Token::Type::Eq) fail(eq, "'='");
    const auto& val = next();
    if (val.type != Token::Type::Str) fail(val, "quoted meta text");
    end();
    if (d_.meta().count(key)) fail(val, "meta key defined once");
    d_.set_meta(key, val.text);
  }

  void elem() {
    const auto& id_tok = peek();
    auto eid = id("element id");
    const auto& kind_tok = word("element kind");
    auto kind = element_kind_from_string(kind_tok.text);
    if (!kind) fail(kind_tok, "element kind");
    Element e = make_element(*kind, {}, eid);
    std::set<std::string> seen;
    for (const auto& [key, val] : pairs()) {
      bool repeatable = key.text == "constraint" || key.text == "forced" || key.text == "detected" ||
                        key.text == "cell" || key.text == "slot" || key.text == "eq" || key.text == "marker" ||
                        key.text == "category" || (key.text == "active" && *kind != ElementKind::Cell);
      if (!repeatable && !seen.insert(key.text).second) fail(key, "each key at most once");
      guard(val, "valid " + key.text, [&] {
        if (key.text == "label") {
          e.label = val.text;
        } else if (key.text == "pos") {
          auto n = parse_numbers(val.text, 4);
          e.position = Placement{n[0], n[1], n[2], n[3]};
        } else if (!apply_payload_key(e.payload, key.text, val.text)) {
          throw ParseError(key.span, "key valid for " + std::string(to_string(*kind)), "'" + key.text + "'");
        }
      });
    }
    end();
    guard(id_tok, "unique element id and well-formed payload", [&] { return d_.add_element(std::move(e)); });
  }

  void contain() {
    const auto& child_tok = peek();
    auto child = id("child id");
    auto parent = id("parent id");
    end();
    if (d_.parent_of(child)) fail(child_tok, "one contain record per child");
    guard(child_tok, "containable child in a container", [&] { d_.contain(child, parent); });
  }

  void edge() {
    const auto& id_tok = peek();
    Edge e;
    e.id = id("edge id");
    const auto& kind_tok = word("edge kind");
    auto kind = edge_kind_from_string(kind_tok.text);
    if (!kind) fail(kind_tok, "edge kind");
    e.kind = *kind;
    if (peek().type == Token::Type::Word && peek().text != "->") e.source = id("source id");
    const auto& arrow = word("'->'");
    if (arrow.text != "->") fail(arrow, "'->'");
    if (peek().type == Token::Type::Word && (at_ + 1 >= toks_.size() || toks_[at_ + 1].type != Token::Type::Eq))
      e.target = id("target id");
    std::set<std::string> seen;
    for (const auto& [key, val] : pairs()) {
      if (!seen.insert(key.text).second) fail(key, "each key at most once");
      if (key.text == "label") {
        e.label = val.text;
      } else if (key.text == "role") {
        auto r = force_role_from_string(val.text);
        if (!r) fail(val, "exerts or acted-upon");
        e.role = *r;
      } else if (key.text == "moves") {
        if (!is_identifier(val.text)) fail(val, "element id");
        e.moves = val.text;
      } else if (key.text == "attr") {
        e.attribute = val.text;
      } else {
        fail(key, "one of label, role, moves, attr");
      }
    }
    end();
    guard(id_tok, "unique edge id with existing endpoints", [&] { return d_.add_edge(std::move(e)); });
  }

  void group() {
    const auto& id_tok = peek();
    Group g;
    g.id = id("group id");
    const auto& kind_tok = word("group kind");
    auto kind = group_kind_from_string(kind_tok.text);
    if (!kind) fail(kind_tok, "StateDiagram or SplitTime");
    g.kind = *kind;
    std::set<std::string> seen;
    for (const auto& [key, val] : pairs()) {
      if (!seen.insert(key.text).second) fail(key, "each key at most once");
      auto ref = [&](std::string& slot) {
        if (!is_identifier(val.text)) fail(val, "id");
        slot = val.text;
      };
      if (key.text == "members") {
        if (!val.text.empty())
          for (auto m : split(val.text, ',')) {
            if (!is_identifier(m)) fail(val, "comma-separated ids");
            g.members.emplace_back(m);
          }
      } else if (key.text == "marker") {
        ref(g.marker);
      } else if (key.text == "owner") {
        ref(g.owner);
      } else if (key.text == "trunk") {
        ref(g.trunk);
      } else if (key.text == "junction") {
        ref(g.junction);
      } else if (key.text == "probs") {
        for (auto p : split(val.text, ',')) {
          auto v = parse_number(p);
          if (!v) fail(val, "comma-separated numbers");
          g.probs.push_back(*v);
        }
      } else {
        fail(key, "one of members, marker, owner, trunk, junction, probs");
      }
    }
    end();
    if (!seen.count("members")) fail(peek(), "members=");
    guard(id_tok, "unique group id with existing members", [&] { return d_.insert_group_unchecked(std::move(g)); });
  }

  void attr() {
    const auto& owner_tok = peek();
    auto owner = id("owner id");
    const auto& name = next();
    std::optional<std::string> attribute;
    if (name.type == Token::Type::Word) {
      if (name.text != "DK") {
        if (!is_identifier(name.text)) fail(name, "attribute name");
        attribute = name.text;
      }
    } else if (name.type == Token::Type::Str) {
      if (name.text.empty()) fail(name, "non-empty attribute name");
      attribute = name.text;
    } else {
      fail(name, "attribute name");
    }
    const auto& eq = next();
    if (eq.type != Token::Type::Eq) fail(eq, "'='");
    const auto& val = next();
    Value v;
    if (val.type == Token::Type::Str) v = Text{val.text};
    else if (val.type == Token::Type::Word) v = guard(val, "value", [&] { return parse_value(val.text); });
    else fail(val, "value");
    end();
    guard(owner_tok, "existing owner and a legal binding",
          [&] { d_.insert_binding_unchecked(owner, AttributeBinding{attribute, v}); });
  }

  Diagram d_;
  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

}  // namespace detail

// Parses DSL text. Throws ParseError carrying the first offending span.
inline Diagram parse(std::string_view text) { return detail::DslParser().run(text); }

// Canonical text: meta, elem, contain, edge, group, attr; each sorted; one record per line.
inline std::string serialize(const Diagram& d) {
  using detail::quote;
  std::string out;
  for (const auto& [k, v] : d.meta()) out += "meta " + k + "=" + quote(v) + "\n";
  for (const auto& [id, e] : d.elements()) {
    out += "elem " + id + " " + std::string(to_string(e.kind));
    if (!e.label.empty()) out += " label=" + quote(e.label);
    if (e.position)
      out += " pos=" + quote(detail::format_numbers({e.position->x, e.position->y, e.position->w, e.position->h}));
    for (const auto& [k, v] : detail::emit_payload(e.payload)) out += " " + k + "=" + quote(v);
    out += "\n";
  }
  for (const auto& [child, parent] : d.containment()) out += "contain " + child + " " + parent + "\n";
  for (const auto& [id, e] : d.edges()) {
    out += "edge " + id + " " + std::string(to_string(e.kind));
    if (e.source) out += " " + *e.source;
    out += " ->";
    if (e.target) out += " " + *e.target;
    if (!e.label.empty()) out += " label=" + quote(e.label);
    if (e.role != ForceRole::None) out += " role=" + std::string(to_string(e.role));
    if (!e.moves.empty()) out += " moves=" + e.moves;
    if (!e.attribute.empty()) out += " attr=" + quote(e.attribute);
    out += "\n";
  }
  for (const auto& [id, g] : d.groups()) {
    out += "group " + id + " " + std::string(to_string(g.kind));
    out += g.members.empty() ? std::string(" members=\"\"") : " members=" + detail::join(g.members, ",");
    if (!g.marker.empty()) out += " marker=" + g.marker;
    if (!g.owner.empty()) out += " owner=" + g.owner;
    if (!g.trunk.empty()) out += " trunk=" + g.trunk;
    if (!g.junction.empty()) out += " junction=" + g.junction;
    if (!g.probs.empty()) {
      std::vector<std::string> ps;
      for (double p : g.probs) ps.push_back(detail::format_number(p));
      out += " probs=" + detail::join(ps, ",");
    }
    out += "\n";
  }
  for (const auto& b : d.bindings()) out += "attr " + b.owner + " " + detail::format_binding(b.binding) + "\n";
  return out;
}

}  // namespace tumbug
