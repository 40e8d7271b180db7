#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace tumbug::detail {

// Shortest decimal text that reads back to the identical double.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Whole-string numeric parse; rejects NaN and trailing junk. Accepts inf/-inf only if allowed.
inline std::optional<double> parse_number(std::string_view s, bool allow_infinite = false) {
  if (allow_infinite) {
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  if (s.empty()) return std::nullopt;
  // from_chars does not take a leading '+'; canonical text never has one either.
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

inline bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

// Element/edge/group ids and bare attribute names: [A-Za-z][A-Za-z0-9_-]*
inline bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

// Double-quoted string with C-like escapes; non-printing bytes become \xHH.
inline std::string quote(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
  return out;
}

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Reads a quoted string starting at s[pos] == '"'. On success advances pos past the
// closing quote. Returns nullopt on malformed input (pos then marks the problem).
inline std::optional<std::string> read_quoted(std::string_view s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '"') return std::nullopt;
  std::string out;
  ++pos;
  while (pos < s.size()) {
    char c = s[pos];
    if (c == '"') {
      ++pos;
      return out;
    }
    if (c == '\n' || c == '\r') return std::nullopt;
    if (c == '\\') {
      if (pos + 1 >= s.size()) return std::nullopt;
      char e = s[pos + 1];
      switch (e) {
        case '"': out.push_back('"'); pos += 2; break;
        case '\\': out.push_back('\\'); pos += 2; break;
        case 'n': out.push_back('\n'); pos += 2; break;
        case 't': out.push_back('\t'); pos += 2; break;
        case 'r': out.push_back('\r'); pos += 2; break;
        case 'x': {
          if (pos + 3 >= s.size()) return std::nullopt;
          int hi = hex_digit(s[pos + 2]), lo = hex_digit(s[pos + 3]);
          if (hi < 0 || lo < 0) return std::nullopt;
          out.push_back(static_cast<char>(hi * 16 + lo));
          pos += 4;
          break;
        }
        default: return std::nullopt;
      }
      continue;
    }
    out.push_back(c);
    ++pos;
  }
  return std::nullopt;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class Range>
std::string join(const Range& items, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& it : items) {
    if (!first) out += sep;
    out += it;
    first = false;
  }
  return out;
}

}  // namespace tumbug::detail
