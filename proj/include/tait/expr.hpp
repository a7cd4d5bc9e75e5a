#pragma once

// Arithmetic expressions in one variable `t`.
//
// Grammar (see docs/grammar.md):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | tan | exp | log | sqrt | atan
//
// Exponents must be constant (free of `t`). There is no implicit
// multiplication: "2t" is a syntax error.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "tait/error.hpp"
#include "tait/taylor.hpp"

namespace tait {

enum class NodeKind { variable, literal, constant, negate, add, subtract, multiply, divide, power, function };

enum class Function { sin, cos, tan, exp, log, sqrt, atan };

inline std::string_view function_name(Function f) {
  switch (f) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::tan: return "tan";
    case Function::exp: return "exp";
    case Function::log: return "log";
    case Function::sqrt: return "sqrt";
    case Function::atan: return "atan";
  }
  return "?";
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::literal;
  double value = 0.0;              // literal or constant value
  std::string name;                // constant name ("pi", "e")
  Function function = Function::sin;
  NodePtr lhs;                     // unary operand or left child
  NodePtr rhs;                     // right child of binary nodes
};

// Immutable expression tree. Copies share structure.
class Expression {
 public:
  Expression() = default;
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& node() const { return root_; }
  bool empty() const { return !root_; }

  static Expression variable() { return Expression(make(NodeKind::variable)); }
  static Expression literal(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::literal;
    n->value = v;
    return Expression(std::move(n));
  }
  static Expression unary(NodeKind kind, const Expression& a) { return Expression(make(kind, a.root_)); }
  static Expression binary(NodeKind kind, const Expression& a, const Expression& b) {
    return Expression(make(kind, a.root_, b.root_));
  }
  static Expression call(Function f, const Expression& a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::function;
    n->function = f;
    n->lhs = a.root_;
    return Expression(std::move(n));
  }

 private:
  static NodePtr make(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr root_;
};

inline Expression operator+(const Expression& a, const Expression& b) {
  return Expression::binary(NodeKind::add, a, b);
}
inline Expression operator-(const Expression& a, const Expression& b) {
  return Expression::binary(NodeKind::subtract, a, b);
}
inline Expression operator*(const Expression& a, const Expression& b) {
  return Expression::binary(NodeKind::multiply, a, b);
}
inline Expression operator/(const Expression& a, const Expression& b) {
  return Expression::binary(NodeKind::divide, a, b);
}
inline Expression pow(const Expression& a, double exponent) {
  return Expression::binary(NodeKind::power, a, Expression::literal(exponent));
}

namespace detail {

inline bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::variable: return true;
    case NodeKind::literal: return a.value == b.value;
    case NodeKind::constant: return a.name == b.name;
    case NodeKind::function: return a.function == b.function && same_tree(*a.lhs, *b.lhs);
    case NodeKind::negate: return same_tree(*a.lhs, *b.lhs);
    default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

inline bool depends_on_t(const Node& n) {
  switch (n.kind) {
    case NodeKind::variable: return true;
    case NodeKind::literal:
    case NodeKind::constant: return false;
    case NodeKind::negate:
    case NodeKind::function: return depends_on_t(*n.lhs);
    default: return depends_on_t(*n.lhs) || depends_on_t(*n.rhs);
  }
}

// Shortest decimal form that reads back to the same double.
inline std::string format_number(double v) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace detail

// Structural equality.
inline bool operator==(const Expression& a, const Expression& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return detail::same_tree(a.root(), b.root());
}

inline bool is_constant(const Expression& e) { return !detail::depends_on_t(e.root()); }

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("empty expression", 0);
    Expression e = parse_sum();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw SyntaxError(std::string("expected '") + c + "' before end of input", pos_);
      throw SyntaxError(std::string("expected '") + c + "' but found '" + text_[pos_] + "'", pos_);
    }
  }

  Expression parse_sum() {
    Expression lhs = parse_product();
    for (;;) {
      if (accept('+'))
        lhs = lhs + parse_product();
      else if (accept('-'))
        lhs = lhs - parse_product();
      else
        return lhs;
    }
  }

  Expression parse_product() {
    Expression lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = lhs * parse_unary();
      else if (accept('/'))
        lhs = lhs / parse_unary();
      else
        return lhs;
    }
  }

  Expression parse_unary() {
    if (accept('-')) return Expression::unary(NodeKind::negate, parse_unary());
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      Expression exponent = parse_unary();
      if (!is_constant(exponent)) throw SyntaxError("exponent must be constant", at);
      return Expression::binary(NodeKind::power, base, exponent);
    }
    return base;
  }

  Expression parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Expression parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError("malformed number", start);
    // Exponent only when followed by digits, so "2*e" and friends stay intact.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw SyntaxError("malformed number", start);
    return Expression::literal(value);
  }

  Expression parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    static constexpr std::array<Function, 7> functions = {Function::sin, Function::cos,  Function::tan, Function::exp,
                                                          Function::log, Function::sqrt, Function::atan};
    for (Function f : functions) {
      if (id == function_name(f)) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '(')
          throw SyntaxError("function '" + std::string(id) + "' requires '('", pos_);
        ++pos_;
        Expression arg = parse_sum();
        expect(')');
        return Expression::call(f, arg);
      }
    }
    if (id == "t") return Expression::variable();
    if (id == "pi" || id == "e") {
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::constant;
      n->name = std::string(id);
      n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
      return Expression(std::move(n));
    }
    throw SyntaxError("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength used by the unparser.
inline int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::add:
    case NodeKind::subtract: return 1;
    case NodeKind::multiply:
    case NodeKind::divide: return 2;
    case NodeKind::negate: return 3;
    case NodeKind::power: return 4;
    default: return 5;
  }
}

inline void unparse_into(const Node& n, std::string& out);

inline void unparse_child(const Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  unparse_into(child, out);
  if (parens) out += ')';
}

inline void unparse_into(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::variable: out += 't'; return;
    case NodeKind::literal: out += format_number(n.value); return;
    case NodeKind::constant: out += n.name; return;
    case NodeKind::function:
      out += function_name(n.function);
      unparse_child(*n.lhs, true, out);
      return;
    case NodeKind::negate:
      out += '-';
      unparse_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case NodeKind::power:
      unparse_child(*n.lhs, precedence(*n.lhs) <= 4, out);
      out += '^';
      unparse_child(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      const int p = precedence(n);
      static constexpr char ops[] = {'+', '-', '*', '/'};
      const char op = ops[static_cast<int>(n.kind) - static_cast<int>(NodeKind::add)];
      unparse_child(*n.lhs, precedence(*n.lhs) < p, out);
      out += ' ';
      out += op;
      out += ' ';
      unparse_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

inline void describe_into(const Node& n, std::string& out) {
  auto two = [&](const char* name) {
    out += name;
    out += '(';
    describe_into(*n.lhs, out);
    out += ", ";
    describe_into(*n.rhs, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::variable: out += "Var t"; return;
    case NodeKind::literal: out += "Lit " + format_number(n.value); return;
    case NodeKind::constant: out += "Const " + n.name; return;
    case NodeKind::negate:
      out += "Neg(";
      describe_into(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::function: {
      std::string name(function_name(n.function));
      name[0] = static_cast<char>(std::toupper(name[0]));
      out += name + "(";
      describe_into(*n.lhs, out);
      out += ')';
      return;
    }
    case NodeKind::add: two("Add"); return;
    case NodeKind::subtract: two("Sub"); return;
    case NodeKind::multiply: two("Mul"); return;
    case NodeKind::divide: two("Div"); return;
    case NodeKind::power:
      if (n.rhs->kind == NodeKind::literal) {  // Pow(Var t, 2)
        out += "Pow(";
        describe_into(*n.lhs, out);
        out += ", " + format_number(n.rhs->value) + ')';
        return;
      }
      two("Pow");
      return;
  }
}

}  // namespace detail

inline Expression parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

// Minimal-parenthesis text form; parse(unparse(e)) == e.
inline std::string unparse(const Expression& e) {
  std::string out;
  detail::unparse_into(e.root(), out);
  return out;
}

// Tree dump such as "Add(Mul(Sin(Var t), Var t), Lit 1)".
inline std::string describe(const Expression& e) {
  std::string out;
  detail::describe_into(e.root(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline std::string node_text(const Node& n) {
  std::string out;
  unparse_into(n, out);
  return out;
}

template <int N>
Taylor<N> evaluate_node(const Node& n, const Taylor<N>& t);

template <int N>
Taylor<N> checked(const Node& n, Taylor<N> r) {
  if (!r.finite()) throw DomainError("non-finite result in '" + node_text(n) + "'");
  return r;
}

template <int N>
Taylor<N> evaluate_power(const Node& n, const Taylor<N>& t) {
  const Taylor<N> base = evaluate_node<N>(*n.lhs, t);
  const double exponent = evaluate_node<0>(*n.rhs, Taylor<0>(0.0)).value();
  const double rounded = std::round(exponent);
  if (rounded == exponent && std::abs(exponent) <= 64.0) {
    if (exponent < 0 && base.value() == 0.0) throw DomainError("division by zero in '" + node_text(n) + "'");
    return powi(base, static_cast<long>(rounded));
  }
  if (!(base.value() > 0.0))
    throw DomainError("non-integer power of non-positive value in '" + node_text(n) + "'");
  return pow(base, exponent);
}

template <int N>
Taylor<N> evaluate_function(const Node& n, const Taylor<N>& t) {
  const Taylor<N> a = evaluate_node<N>(*n.lhs, t);
  switch (n.function) {
    case Function::sin: return sin(a);
    case Function::cos: return cos(a);
    case Function::tan:
      if (std::cos(a.value()) == 0.0) throw DomainError("tan pole in '" + node_text(n) + "'");
      return tan(a);
    case Function::exp: return exp(a);
    case Function::log:
      if (!(a.value() > 0.0)) throw DomainError("log of non-positive value in '" + node_text(n) + "'");
      return log(a);
    case Function::sqrt:
      if (a.value() < 0.0) throw DomainError("sqrt of negative value in '" + node_text(n) + "'");
      if (a.value() == 0.0 && N > 0) throw DomainError("sqrt is not differentiable at 0 in '" + node_text(n) + "'");
      return sqrt(a);
    case Function::atan: return atan(a);
  }
  return a;
}

template <int N>
Taylor<N> evaluate_node(const Node& n, const Taylor<N>& t) {
  switch (n.kind) {
    case NodeKind::variable: return t;
    case NodeKind::literal:
    case NodeKind::constant: return Taylor<N>(n.value);
    case NodeKind::negate: return -evaluate_node<N>(*n.lhs, t);
    case NodeKind::add: return checked(n, evaluate_node<N>(*n.lhs, t) + evaluate_node<N>(*n.rhs, t));
    case NodeKind::subtract: return checked(n, evaluate_node<N>(*n.lhs, t) - evaluate_node<N>(*n.rhs, t));
    case NodeKind::multiply: return checked(n, evaluate_node<N>(*n.lhs, t) * evaluate_node<N>(*n.rhs, t));
    case NodeKind::divide: {
      const Taylor<N> num = evaluate_node<N>(*n.lhs, t);
      const Taylor<N> den = evaluate_node<N>(*n.rhs, t);
      if (den.value() == 0.0) throw DomainError("division by zero in '" + node_text(n) + "'");
      return checked(n, num / den);
    }
    case NodeKind::power: return checked(n, evaluate_power<N>(n, t));
    case NodeKind::function: return checked(n, evaluate_function<N>(n, t));
  }
  return t;
}

}  // namespace detail

// Truncated Taylor series of `expr` around t0, seeded with (t0; 1, 0, ...).
template <int N>
Taylor<N> evaluate_series(const Expression& expr, double t0) {
  return detail::evaluate_node<N>(expr.root(), Taylor<N>::variable(t0));
}

inline double evaluate(const Expression& expr, double t0) { return evaluate_series<0>(expr, t0).value(); }

// Value and derivatives 1..4 at a point.
struct Jet {
  double value = 0.0;
  std::array<double, 4> derivs{};
};

inline Jet to_jet(const Taylor<4>& s) {
  Jet j;
  j.value = s.value();
  for (int k = 1; k <= 4; ++k) j.derivs[k - 1] = s.derivative(k);
  return j;
}

inline Jet evaluate_jet(const Expression& expr, double t0) { return to_jet(evaluate_series<4>(expr, t0)); }

}  // namespace tait
