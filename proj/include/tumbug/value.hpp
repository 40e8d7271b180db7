#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/error.hpp"

namespace tumbug {

enum class Wildcard { Star, Plus, Opt, DK, DC, DNE };

inline std::string_view to_string(Wildcard w) {
  switch (w) {
    case Wildcard::Star: return "STAR";
    case Wildcard::Plus: return "PLUS";
    case Wildcard::Opt: return "OPT";
    case Wildcard::DK: return "DK";
    case Wildcard::DC: return "DC";
    case Wildcard::DNE: return "DNE";
  }
  return "?";
}

inline std::optional<Wildcard> wildcard_from_string(std::string_view s) {
  for (auto w : {Wildcard::Star, Wildcard::Plus, Wildcard::Opt, Wildcard::DK, Wildcard::DC, Wildcard::DNE})
    if (to_string(w) == s) return w;
  return std::nullopt;
}

enum class Cap { Inclusive, Exclusive };

struct Scalar {
  double value = 0;
  std::string unit;  // uninterpreted tag, empty when unitless
  bool operator==(const Scalar&) const = default;
};

struct Text {
  std::string text;
  bool operator==(const Text&) const = default;
};

struct ExistenceLevel {
  double level = 1;
  bool operator==(const ExistenceLevel&) const = default;
};

// Unbounded ends are represented by infinities.
struct Range {
  double lo = -HUGE_VAL;
  double hi = HUGE_VAL;
  Cap lo_cap = Cap::Inclusive;
  Cap hi_cap = Cap::Inclusive;

  bool contains(double x) const {
    if (std::isnan(x)) return false;
    bool above = lo_cap == Cap::Inclusive ? x >= lo : x > lo;
    bool below = hi_cap == Cap::Inclusive ? x <= hi : x < hi;
    return above && below;
  }

  // Whether every point of `inner` lies in this range.
  bool covers(const Range& inner) const {
    auto lo_ok = inner.lo > lo || (inner.lo == lo && (lo_cap == Cap::Inclusive || inner.lo_cap == Cap::Exclusive));
    auto hi_ok = inner.hi < hi || (inner.hi == hi && (hi_cap == Cap::Inclusive || inner.hi_cap == Cap::Exclusive));
    return lo_ok && hi_ok;
  }

  bool operator==(const Range&) const = default;
};

// The rolling ball: one unknown point somewhere inside the range.
struct BallInRange {
  Range range;
  bool operator==(const BallInRange&) const = default;
};

// Triangular membership function. lo == peak or peak == hi gives a shoulder.
struct Triangle {
  double lo = 0;
  double peak = 0;
  double hi = 0;

  double membership(double x) const {
    if (x == peak) return 1.0;
    if (x < lo || x > hi) return 0.0;
    if (x < peak) return (x - lo) / (peak - lo);
    return (hi - x) / (hi - peak);
  }

  bool operator==(const Triangle&) const = default;
};

struct FuzzyLabel {
  std::string name;
  Triangle membership;
  bool operator==(const FuzzyLabel&) const = default;
};

using Value = std::variant<Scalar, Text, ExistenceLevel, Range, BallInRange, FuzzyLabel, Wildcard>;

inline bool is_wildcard(const Value& v, Wildcard w) {
  auto p = std::get_if<Wildcard>(&v);
  return p && *p == w;
}

inline void check_range(const Range& r) {
  if (std::isnan(r.lo) || std::isnan(r.hi)) throw Error(ErrorCode::InvalidValue, "range bound is NaN");
  if (r.lo > r.hi) throw Error(ErrorCode::InvalidValue, "range lo exceeds hi");
  if (r.lo == HUGE_VAL || r.hi == -HUGE_VAL) throw Error(ErrorCode::InvalidValue, "range bound points the wrong way");
}

// Throws InvalidValue when a value breaks its own invariants.
inline void check_value(const Value& v) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          if (!std::isfinite(x.value)) throw Error(ErrorCode::InvalidValue, "scalar must be finite");
          if (!x.unit.empty() && !detail::is_identifier(x.unit) && x.unit != "%")
            throw Error(ErrorCode::InvalidValue, "unit must be an identifier: " + x.unit);
        } else if constexpr (std::is_same_v<T, ExistenceLevel>) {
          if (!(x.level >= 0.0 && x.level <= 1.0))
            throw Error(ErrorCode::InvalidValue, "existence level outside [0,1]");
        } else if constexpr (std::is_same_v<T, Range>) {
          check_range(x);
        } else if constexpr (std::is_same_v<T, BallInRange>) {
          check_range(x.range);
        } else if constexpr (std::is_same_v<T, FuzzyLabel>) {
          if (!detail::is_identifier(x.name)) throw Error(ErrorCode::InvalidValue, "fuzzy label name: " + x.name);
          const auto& t = x.membership;
          if (!std::isfinite(t.lo) || !std::isfinite(t.peak) || !std::isfinite(t.hi) || t.lo > t.peak ||
              t.peak > t.hi)
            throw Error(ErrorCode::InvalidValue, "triangle must satisfy lo <= peak <= hi");
        }
      },
      v);
}

// An attribute paired with its value. A missing attribute name is the DK wildcard.
struct AttributeBinding {
  std::optional<std::string> attribute;
  Value value;

  bool attribute_unknown() const { return !attribute.has_value(); }
  bool operator==(const AttributeBinding&) const = default;
};

inline AttributeBinding bind(std::string attribute, Value value) {
  return AttributeBinding{std::move(attribute), std::move(value)};
}

inline void check_binding(const AttributeBinding& b) {
  check_value(b.value);
  if (b.attribute_unknown() && is_wildcard(b.value, Wildcard::DK))
    throw Error(ErrorCode::InvalidBinding, "attribute and value cannot both be DK");
  if (b.attribute && b.attribute->empty()) throw Error(ErrorCode::InvalidBinding, "empty attribute name");
}

// ---------------------------------------------------------------------------
// Matching

enum class Match { No, Yes, Unknown };

inline std::string_view to_string(Match m) {
  return m == Match::Yes ? "yes" : m == Match::No ? "no" : "unknown";
}

// Matches an observed value (absent = nullopt) against a pattern.
// STAR/OPT accept absence, PLUS needs a value, DNE needs absence, DC accepts
// everything and DK never decides (Unknown).
inline Match wildcard_matches(const Value& pattern, const std::optional<Value>& observed) {
  bool absent = !observed || is_wildcard(*observed, Wildcard::DNE);
  if (auto w = std::get_if<Wildcard>(&pattern)) {
    switch (*w) {
      case Wildcard::DC:
      case Wildcard::Star:
      case Wildcard::Opt: return Match::Yes;
      case Wildcard::DK: return Match::Unknown;
      case Wildcard::DNE: return absent ? Match::Yes : Match::No;
      case Wildcard::Plus: return absent ? Match::No : Match::Yes;
    }
  }
  if (absent) return Match::No;
  if (is_wildcard(*observed, Wildcard::DC)) return Match::Yes;
  if (std::holds_alternative<Wildcard>(*observed)) return Match::Unknown;

  if (auto r = std::get_if<Range>(&pattern)) {
    if (auto s = std::get_if<Scalar>(&*observed)) return r->contains(s->value) ? Match::Yes : Match::No;
    if (auto b = std::get_if<BallInRange>(&*observed)) return r->covers(b->range) ? Match::Yes : Match::No;
    if (auto o = std::get_if<Range>(&*observed)) return r->covers(*o) ? Match::Yes : Match::No;
    return Match::No;
  }
  if (auto b = std::get_if<BallInRange>(&pattern)) {
    if (auto s = std::get_if<Scalar>(&*observed)) return b->range.contains(s->value) ? Match::Yes : Match::No;
    if (auto o = std::get_if<BallInRange>(&*observed)) return b->range.covers(o->range) ? Match::Yes : Match::No;
    return Match::No;
  }
  if (auto f = std::get_if<FuzzyLabel>(&pattern)) {
    if (auto s = std::get_if<Scalar>(&*observed))
      return f->membership.membership(s->value) > 0 ? Match::Yes : Match::No;
    if (auto t = std::get_if<Text>(&*observed)) return t->text == f->name ? Match::Yes : Match::No;
    if (auto o = std::get_if<FuzzyLabel>(&*observed)) return o->name == f->name ? Match::Yes : Match::No;
    return Match::No;
  }
  return pattern == *observed ? Match::Yes : Match::No;
}

// ---------------------------------------------------------------------------
// Fuzzy quantity words

struct FuzzyBands {
  std::vector<FuzzyLabel> ratio_bands;
  // Count-form words, e.g. "multiple" applies to counts >= 2.
  std::vector<std::pair<std::string, long>> count_bands;
};

// Shipped defaults for few/many/most/all. These are tunable configuration, not
// authoritative thresholds.
inline FuzzyBands default_fuzzy_bands() {
  return FuzzyBands{
      {
          {"few", {0.0, 0.15, 0.35}},
          {"many", {0.4, 0.7, 1.0}},
          {"most", {0.5, 0.9, 1.0}},
          {"all", {0.95, 1.0, 1.0}},
      },
      {{"multiple", 2}},
  };
}

inline void check_bands(const FuzzyBands& bands) {
  for (const auto& b : bands.ratio_bands) check_value(b);
}

// Membership of a ratio in each configured band, in configuration order.
inline std::vector<std::pair<std::string, double>> classify_ratio(double r,
                                                                  const FuzzyBands& bands = default_fuzzy_bands()) {
  if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::OutOfDomain, "ratio must lie in [0,1]");
  check_bands(bands);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(bands.ratio_bands.size());
  for (const auto& b : bands.ratio_bands) out.emplace_back(b.name, b.membership.membership(r));
  return out;
}

// Count-form words whose threshold the count reaches.
inline std::vector<std::string> classify_count(long count, const FuzzyBands& bands = default_fuzzy_bands()) {
  if (count < 0) throw Error(ErrorCode::OutOfDomain, "count must be non-negative");
  std::vector<std::string> out;
  for (const auto& [name, min] : bands.count_bands)
    if (count >= min) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text form, shared by the DSL and the CLI.

namespace detail {

inline std::string format_bound_pair(const Range& r) {
  std::string s;
  s += r.lo_cap == Cap::Inclusive ? '[' : '(';
  s += format_number(r.lo);
  s += ',';
  s += format_number(r.hi);
  s += r.hi_cap == Cap::Inclusive ? ']' : ')';
  return s;
}

}  // namespace detail

inline std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          auto s = detail::format_number(x.value);
          if (!x.unit.empty()) s += ":" + x.unit;
          return s;
        } else if constexpr (std::is_same_v<T, Text>) {
          return detail::quote(x.text);
        } else if constexpr (std::is_same_v<T, ExistenceLevel>) {
          return "exist(" + detail::format_number(x.level) + ")";
        } else if constexpr (std::is_same_v<T, Range>) {
          return "range" + detail::format_bound_pair(x);
        } else if constexpr (std::is_same_v<T, BallInRange>) {
          return "ball" + detail::format_bound_pair(x.range);
        } else if constexpr (std::is_same_v<T, FuzzyLabel>) {
          return "fuzzy(" + x.name + ":" + detail::format_number(x.membership.lo) + "," +
                 detail::format_number(x.membership.peak) + "," + detail::format_number(x.membership.hi) + ")";
        } else {
          return std::string(to_string(x));
        }
      },
      v);
}

namespace detail {

inline std::optional<Range> parse_bound_pair(std::string_view s) {
  if (s.size() < 5) return std::nullopt;
  Range r;
  if (s.front() == '[') r.lo_cap = Cap::Inclusive;
  else if (s.front() == '(') r.lo_cap = Cap::Exclusive;
  else return std::nullopt;
  if (s.back() == ']') r.hi_cap = Cap::Inclusive;
  else if (s.back() == ')') r.hi_cap = Cap::Exclusive;
  else return std::nullopt;
  auto inner = s.substr(1, s.size() - 2);
  auto parts = split(inner, ',');
  if (parts.size() != 2) return std::nullopt;
  auto lo = parse_number(parts[0], true);
  auto hi = parse_number(parts[1], true);
  if (!lo || !hi) return std::nullopt;
  r.lo = *lo;
  r.hi = *hi;
  return r;
}

}  // namespace detail

// Parses the canonical text form of a value. Throws InvalidValue on bad syntax or
// on a value that breaks its invariants.
inline Value parse_value(std::string_view s) {
  auto fail = [&](const char* why) -> Value {
    throw Error(ErrorCode::InvalidValue, std::string(why) + ": " + std::string(s));
  };
  if (s.empty()) return fail("empty value");
  Value out;
  if (s.front() == '"') {
    std::size_t pos = 0;
    auto text = detail::read_quoted(s, pos);
    if (!text || pos != s.size()) return fail("malformed string");
    out = Text{*text};
  } else if (auto w = wildcard_from_string(s)) {
    out = *w;
  } else if (s.rfind("range", 0) == 0) {
    auto r = detail::parse_bound_pair(s.substr(5));
    if (!r) return fail("malformed range");
    out = *r;
  } else if (s.rfind("ball", 0) == 0) {
    auto r = detail::parse_bound_pair(s.substr(4));
    if (!r) return fail("malformed ball");
    out = BallInRange{*r};
  } else if (s.rfind("exist(", 0) == 0 && s.back() == ')') {
    auto n = detail::parse_number(s.substr(6, s.size() - 7));
    if (!n) return fail("malformed existence level");
    out = ExistenceLevel{*n};
  } else if (s.rfind("fuzzy(", 0) == 0 && s.back() == ')') {
    auto inner = s.substr(6, s.size() - 7);
    auto colon = inner.find(':');
    if (colon == std::string_view::npos) return fail("malformed fuzzy label");
    auto nums = detail::split(inner.substr(colon + 1), ',');
    if (nums.size() != 3) return fail("fuzzy label needs lo,peak,hi");
    auto a = detail::parse_number(nums[0]), b = detail::parse_number(nums[1]), c = detail::parse_number(nums[2]);
    if (!a || !b || !c) return fail("malformed fuzzy bound");
    out = FuzzyLabel{std::string(inner.substr(0, colon)), {*a, *b, *c}};
  } else {
    auto colon = s.find(':');
    auto num = detail::parse_number(s.substr(0, colon));
    if (!num) return fail("unrecognized value");
    Scalar sc{*num, {}};
    if (colon != std::string_view::npos) {
      sc.unit = std::string(s.substr(colon + 1));
      if (sc.unit.empty()) return fail("empty unit");
    }
    out = sc;
  }
  check_value(out);
  return out;
}

}  // namespace tumbug
