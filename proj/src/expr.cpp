#include "mdcutfem/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

enum class Op { Number, X, Y, R, Theta, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos, Sqrt, Abs };

struct Expr::Node {
  Op op = Op::Number;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_leaf(Op op, double value = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = value;
  return n;
}

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct Vars {
  double x, y;
};

double eval(const Expr::Node& n, const Vars& v) {
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::X: return v.x;
    case Op::Y: return v.y;
    case Op::R: return std::hypot(v.x, v.y);
    case Op::Theta: return std::atan2(v.y, v.x);
    case Op::Neg: return -eval(*n.lhs, v);
    case Op::Add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case Op::Sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case Op::Mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case Op::Div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case Op::Pow: return std::pow(eval(*n.lhs, v), eval(*n.rhs, v));
    case Op::Exp: return std::exp(eval(*n.lhs, v));
    case Op::Sin: return std::sin(eval(*n.lhs, v));
    case Op::Cos: return std::cos(eval(*n.lhs, v));
    case Op::Sqrt: return std::sqrt(eval(*n.lhs, v));
    case Op::Abs: return std::abs(eval(*n.lhs, v));
  }
  return 0.0;
}

bool constant_tree(const Expr::Node& n) {
  switch (n.op) {
    case Op::Number: return true;
    case Op::X:
    case Op::Y:
    case Op::R:
    case Op::Theta: return false;
    default:
      return constant_tree(*n.lhs) && (!n.rhs || constant_tree(*n.rhs));
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0) return "(" + s + ")";
  return s;
}

void print(const Expr::Node& n, std::string& out) {
  auto binary = [&](const char* sym) {
    out += '(';
    print(*n.lhs, out);
    out += sym;
    print(*n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print(*n.lhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::Number: out += format_number(n.value); break;
    case Op::X: out += 'x'; break;
    case Op::Y: out += 'y'; break;
    case Op::R: out += 'r'; break;
    case Op::Theta: out += "theta"; break;
    case Op::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      break;
    case Op::Add: binary("+"); break;
    case Op::Sub: binary("-"); break;
    case Op::Mul: binary("*"); break;
    case Op::Div: binary("/"); break;
    case Op::Pow: binary("^"); break;
    case Op::Exp: call("exp"); break;
    case Op::Sin: call("sin"); break;
    case Op::Cos: call("cos"); break;
    case Op::Sqrt: call("sqrt"); break;
    case Op::Abs: call("abs"); break;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    NodePtr n = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return n;
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

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_node(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr lhs = primary();
    while (accept('^')) lhs = make_node(Op::Pow, lhs, exponent());
    return lhs;
  }

  NodePtr exponent() {
    if (accept('-')) return make_node(Op::Neg, exponent());
    if (accept('+')) return exponent();
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        pos_ = p;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token == ".") throw ParseError("malformed number", start);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) throw ParseError("malformed number '" + token + "'", start);
    return make_leaf(Op::Number, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return make_leaf(Op::X);
    if (name == "y") return make_leaf(Op::Y);
    if (name == "r") return make_leaf(Op::R);
    if (name == "theta") return make_leaf(Op::Theta);
    if (name == "pi") return make_leaf(Op::Number, std::numbers::pi);

    Op fn;
    if (name == "exp") {
      fn = Op::Exp;
    } else if (name == "sin") {
      fn = Op::Sin;
    } else if (name == "cos") {
      fn = Op::Cos;
    } else if (name == "sqrt") {
      fn = Op::Sqrt;
    } else if (name == "abs") {
      fn = Op::Abs;
    } else {
      throw ParseError("unknown identifier '" + name + "'", start);
    }
    if (!accept('(')) throw ParseError("expected '(' after " + name, pos_);
    NodePtr arg = expr();
    if (!accept(')')) throw ParseError("expected ')'", pos_);
    return make_node(fn, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : root_(make_leaf(Op::Number, 0.0)) {}

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse()); }

Expr Expr::constant(double value) { return Expr(make_leaf(Op::Number, value)); }

double Expr::operator()(double x, double y) const { return eval(*root_, Vars{x, y}); }

std::string Expr::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool Expr::is_constant() const { return constant_tree(*root_); }

}  // namespace mdcutfem
