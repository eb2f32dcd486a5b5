#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace mdcutfem {

/// Analytic scalar expression in the ambient coordinates.
///
/// Grammar (all binary operators are left associative):
///
///     expr     := term  (('+' | '-') term)*
///     term     := unary (('*' | '/') unary)*
///     unary    := ('-' | '+') unary | power
///     power    := primary ('^' exponent)*
///     exponent := ('-' | '+') exponent | primary
///     primary  := number | variable | function '(' expr ')' | '(' expr ')'
///
/// Variables are `x`, `y`, `r = sqrt(x^2+y^2)`, `theta = atan2(y,x)` and the
/// constant `pi`. Functions: exp, sin, cos, sqrt, abs. So `-x^2` is `-(x^2)`
/// and `2^3^2` is `(2^3)^2`.
class Expr {
 public:
  /// The constant zero.
  Expr();

  static Expr parse(std::string_view text);
  static Expr constant(double value);

  double operator()(double x, double y) const;

  /// Fully parenthesized text that parses back to an expression with the same values.
  std::string str() const;

  bool is_constant() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

}  // namespace mdcutfem
