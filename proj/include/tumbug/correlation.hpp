#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tumbug/detail/text.hpp"
#include "tumbug/error.hpp"

namespace tumbug {

// Rational arithmetic over named slots.
struct Expr {
  enum class Op { Const, Slot, Add, Sub, Mul, Div };

  Op op = Op::Const;
  double value = 0;
  std::string slot;
  std::vector<Expr> args;

  static Expr constant(double v) { return Expr{Op::Const, v, {}, {}}; }
  static Expr var(std::string name) { return Expr{Op::Slot, 0, std::move(name), {}}; }
  static Expr binary(Op op, Expr a, Expr b) { return Expr{op, 0, {}, {std::move(a), std::move(b)}}; }

  bool operator==(const Expr& o) const {
    if (op != o.op) return false;
    if (op == Op::Const) return value == o.value;
    if (op == Op::Slot) return slot == o.slot;
    return args == o.args;
  }
};

inline Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Op::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Op::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Op::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Op::Div, std::move(a), std::move(b)); }

struct CorrelationSlot {
  std::string name;
  std::string element;    // owning element id, may be empty for free-floating slots
  std::string attribute;  // attribute of that element
  bool operator==(const CorrelationSlot&) const = default;
};

struct Equation {
  std::string target;
  Expr expr;
  bool operator==(const Equation&) const = default;
};

struct CorrelationBoxPayload {
  std::vector<CorrelationSlot> slots;
  std::vector<Equation> equations;
  bool operator==(const CorrelationBoxPayload&) const = default;
};

// ---------------------------------------------------------------------------

namespace detail {

inline bool is_slot_name(std::string_view s) {
  if (s.empty() || !(is_ident_start(s.front()) || s.front() == '_')) return false;
  for (char c : s)
    if (!(is_ident_start(c) || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

inline int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub: return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div: return 2;
    default: return 3;
  }
}

inline char op_char(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return '+';
    case Expr::Op::Sub: return '-';
    case Expr::Op::Mul: return '*';
    default: return '/';
  }
}

inline void collect_slots(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Expr::Op::Slot) out.push_back(e.slot);
  for (const auto& a : e.args) collect_slots(a, out);
}

inline std::size_t count_slot(const Expr& e, std::string_view name) {
  if (e.op == Expr::Op::Slot) return e.slot == name ? 1 : 0;
  std::size_t n = 0;
  for (const auto& a : e.args) n += count_slot(a, name);
  return n;
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    auto e = parse_sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const char* why) {
    throw Error(ErrorCode::InvalidPayload,
                std::string("expression: ") + why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    auto lhs = parse_product();
    while (true) {
      if (eat('+')) lhs = lhs + parse_product();
      else if (eat('-')) lhs = lhs - parse_product();
      else return lhs;
    }
  }

  Expr parse_product() {
    auto lhs = parse_primary();
    while (true) {
      if (eat('*')) lhs = lhs * parse_primary();
      else if (eat('/')) lhs = lhs / parse_primary();
      else return lhs;
    }
  }

  Expr parse_primary() {
    if (++depth_ > 200) fail("nesting too deep");
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    Expr out;
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      out = parse_sum();
      if (!eat(')')) fail("expected ')'");
    } else if (c == '-' || (c >= '0' && c <= '9') || c == '.') {
      auto start = pos_;
      if (c == '-') ++pos_;
      while (pos_ < s_.size()) {
        char d = s_[pos_];
        if ((d >= '0' && d <= '9') || d == '.') {
          ++pos_;
        } else if ((d == 'e' || d == 'E') && pos_ + 1 < s_.size()) {
          ++pos_;
          if (s_[pos_] == '+' || s_[pos_] == '-') ++pos_;
        } else {
          break;
        }
      }
      auto text = s_.substr(start, pos_ - start);
      if (!text.empty() && text.front() == '+') fail("bad number");
      auto v = parse_number(text);
      if (!v) fail("bad number");
      out = Expr::constant(*v);
    } else if (is_ident_start(c) || c == '_') {
      auto start = pos_;
      while (pos_ < s_.size() && (is_ident_start(s_[pos_]) || (s_[pos_] >= '0' && s_[pos_] <= '9') || s_[pos_] == '_'))
        ++pos_;
      out = Expr::var(std::string(s_.substr(start, pos_ - start)));
    } else {
      fail("expected operand");
    }
    --depth_;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline std::string format_expr(const Expr& e) {
  switch (e.op) {
    case Expr::Op::Const: {
      auto s = detail::format_number(e.value);
      return e.value < 0 || (e.value == 0 && std::signbit(e.value)) ? "(" + s + ")" : s;
    }
    case Expr::Op::Slot: return e.slot;
    default: break;
  }
  int p = detail::precedence(e.op);
  auto side = [&](const Expr& child, bool right) {
    int cp = detail::precedence(child.op);
    auto s = format_expr(child);
    return (cp < p || (right && cp == p)) ? "(" + s + ")" : s;
  };
  return side(e.args[0], false) + " " + detail::op_char(e.op) + " " + side(e.args[1], true);
}

inline Expr parse_expr(std::string_view s) { return detail::ExprParser(s).parse_all(); }

inline std::string format_equation(const Equation& eq) { return eq.target + " = " + format_expr(eq.expr); }

inline Equation parse_equation(std::string_view s) {
  auto at = s.find('=');
  if (at == std::string_view::npos) throw Error(ErrorCode::InvalidPayload, "equation needs '='");
  auto target = detail::trim(s.substr(0, at));
  if (!detail::is_slot_name(target)) throw Error(ErrorCode::InvalidPayload, "bad equation target");
  return Equation{std::string(target), parse_expr(s.substr(at + 1))};
}

inline void check_correlation(const CorrelationBoxPayload& c) {
  std::set<std::string> names;
  for (const auto& s : c.slots) {
    if (!detail::is_slot_name(s.name)) throw Error(ErrorCode::InvalidPayload, "bad slot name: " + s.name);
    if (!names.insert(s.name).second) throw Error(ErrorCode::InvalidPayload, "duplicate slot: " + s.name);
  }
  for (const auto& eq : c.equations) {
    if (!names.count(eq.target)) throw Error(ErrorCode::InvalidPayload, "equation target not a slot: " + eq.target);
    std::vector<std::string> used;
    detail::collect_slots(eq.expr, used);
    for (const auto& u : used)
      if (!names.count(u)) throw Error(ErrorCode::InvalidPayload, "equation references undeclared slot: " + u);
  }
}

namespace detail {

inline double divide(double a, double b) {
  if (b == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
  return a / b;
}

inline double eval(const Expr& e, const std::map<std::string, double>& env) {
  switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Slot: return env.at(e.slot);
    case Expr::Op::Add: return eval(e.args[0], env) + eval(e.args[1], env);
    case Expr::Op::Sub: return eval(e.args[0], env) - eval(e.args[1], env);
    case Expr::Op::Mul: return eval(e.args[0], env) * eval(e.args[1], env);
    case Expr::Op::Div: return divide(eval(e.args[0], env), eval(e.args[1], env));
  }
  return 0;
}

// Solves e(free) == want where `free` occurs exactly once in e.
inline double invert(const Expr& e, double want, const std::string& free, const std::map<std::string, double>& env) {
  if (e.op == Expr::Op::Slot) return want;
  bool left = count_slot(e.args[0], free) == 1;
  const Expr& inner = left ? e.args[0] : e.args[1];
  double other = eval(left ? e.args[1] : e.args[0], env);
  switch (e.op) {
    case Expr::Op::Add: return invert(inner, want - other, free, env);
    case Expr::Op::Sub: return invert(inner, left ? want + other : other - want, free, env);
    case Expr::Op::Mul: return invert(inner, divide(want, other), free, env);
    case Expr::Op::Div: return invert(inner, left ? want * other : divide(other, want), free, env);
    default: return want;
  }
}

inline bool solvable_by(const Equation& eq, const std::string& slot) {
  if (eq.target == slot) return count_slot(eq.expr, slot) == 0;
  return count_slot(eq.expr, slot) == 1;
}

}  // namespace detail

// Whether every slot can be solved for from the others.
inline bool invertible(const CorrelationBoxPayload& c) {
  for (const auto& s : c.slots) {
    bool ok = false;
    for (const auto& eq : c.equations) ok = ok || detail::solvable_by(eq, s.name);
    if (!ok) return false;
  }
  return !c.slots.empty();
}

// Value of `free` given every other slot.
inline double evaluate_correlation(const CorrelationBoxPayload& c, const std::map<std::string, double>& bound,
                                   const std::string& free) {
  check_correlation(c);
  bool declared = false;
  std::vector<std::string> missing;
  std::map<std::string, double> env;
  for (const auto& s : c.slots) {
    if (s.name == free) {
      declared = true;
      continue;
    }
    auto it = bound.find(s.name);
    if (it == bound.end()) missing.push_back(s.name);
    else env[s.name] = it->second;
  }
  if (!declared) throw Error(ErrorCode::NoEquationForSlot, "not a slot: " + free);
  if (!missing.empty()) throw Error(ErrorCode::UnboundSlots, detail::join(missing, ","));

  for (const auto& eq : c.equations)
    if (eq.target == free && detail::count_slot(eq.expr, free) == 0) return detail::eval(eq.expr, env);
  for (const auto& eq : c.equations)
    if (eq.target != free && detail::count_slot(eq.expr, free) == 1)
      return detail::invert(eq.expr, env.at(eq.target), free, env);
  throw Error(ErrorCode::NoEquationForSlot, "no equation solves " + free);
}

}  // namespace tumbug
