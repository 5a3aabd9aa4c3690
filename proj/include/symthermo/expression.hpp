#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "symthermo/dual.hpp"
#include "symthermo/errors.hpp"

namespace symthermo {

/**
 * Minimal arithmetic expression language over named variables:
 * +, -, *, /, ^, unary minus, exp, ln, numeric literals. Used for
 * user-specified process components; evaluable at plain and dual scalars.
 *
 * x^c with a literal exponent c is differentiated as a monomial and admits
 * negative bases (integer powers); a variable exponent uses exp(y ln x) and
 * requires a positive base.
 */
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ExprNum {
  double value;
};
struct ExprVar {
  std::size_t index;
};
struct ExprNeg {
  ExprPtr arg;
};
struct ExprBin {
  char op;  // one of + - * / ^
  ExprPtr lhs;
  ExprPtr rhs;
};
struct ExprCall {
  bool is_exp;  // exp if true, ln otherwise
  ExprPtr arg;
};

struct Expr {
  std::variant<ExprNum, ExprVar, ExprNeg, ExprBin, ExprCall> node;
};

/// Parses `text` over the given variable names. Throws ConfigError on any
/// syntax problem or unknown identifier.
ExprPtr parse_expression(const std::string& text, const std::vector<std::string>& variables);

template <class S>
S eval_expr(const Expr& e, const std::vector<S>& vars) {
  return std::visit(
      [&](const auto& n) -> S {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExprNum>) {
          return constant_like<S>(n.value);
        } else if constexpr (std::is_same_v<T, ExprVar>) {
          return vars[n.index];
        } else if constexpr (std::is_same_v<T, ExprNeg>) {
          return -eval_expr(*n.arg, vars);
        } else if constexpr (std::is_same_v<T, ExprBin>) {
          const S l = eval_expr(*n.lhs, vars);
          if (n.op == '^') {
            if (const auto* c = std::get_if<ExprNum>(&n.rhs->node)) return pow(l, c->value);
            return pow(l, eval_expr(*n.rhs, vars));
          }
          const S r = eval_expr(*n.rhs, vars);
          switch (n.op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            default: return l / r;
          }
        } else {
          const S a = eval_expr(*n.arg, vars);
          return n.is_exp ? exp(a) : log(a);
        }
      },
      e.node);
}

}  // namespace symthermo
