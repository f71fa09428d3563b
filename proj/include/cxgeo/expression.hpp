#pragma once

#include "cxgeo/tensor.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cxgeo {

// Closed-form real expression over x1..xn, t1..tn.
//
// Grammar (whitespace insignificant):
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := "-" unary | power
//   power      := primary [ "^" unary ]          (right associative)
//   primary    := number | variable | "pi" | function "(" expression ")"
//               | "(" expression ")"
//   variable   := ("x" | "t") digit { digit }    (1-based, <= dimension)
//   function   := "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh"
//   number     := digit { digit } [ "." { digit } ] [ ("e" | "E") [ "+" | "-" ] digit { digit } ]
//               | "." digit { digit } [ exponent ]
//
// So "-x1^2" is -(x1^2) and "2^3^2" is 2^(3^2).
class Expression {
 public:
  enum class Kind { constant, x_var, t_var, negate, add, subtract, multiply, divide, power, function };
  enum class Function { sin, cos, exp, log, sqrt, tanh };

  struct Node {
    Kind kind = Kind::constant;
    double value = 0.0;
    int index = 0;  // 0-based coordinate index for variables
    Function function = Function::sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  Expression() = default;
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expression constant(double v);

  const Node& root() const { return *root_; }
  bool empty() const { return !root_; }

  // Throws DomainError for log/sqrt outside their domain, division by zero or
  // any other non-finite intermediate.
  double evaluate(const Vector& x, const Vector& t) const;

  // Fully parenthesized text that reparses to an equivalent tree.
  std::string to_string() const;

  // Largest variable index referenced (1-based), 0 for constants.
  int max_index() const;

  bool depends_on_t() const;

 private:
  std::shared_ptr<const Node> root_;
};

// Throws SyntaxError, UnknownIdentifier or IndexOutOfRange (variable index
// outside 1..dimension).
Expression parse_expression(std::string_view src, int dimension);

}  // namespace cxgeo
