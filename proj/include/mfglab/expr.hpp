#pragma once

#include <memory>
#include <string>

namespace mfglab {

/// Variables available to config expressions.
struct EvalCtx {
  double x1 = 0, x2 = 0, t = 0, z1 = 0, z2 = 0, y2 = 0;
};

/// Closed-form expression over x1, x2, t, z1, z2, y2.
///
/// Grammar (config coefficient strings):
///   expr    := term (('+'|'-') term)*
///   term    := unary (('*'|'/') unary)*
///   unary   := '-' unary | primary
///   primary := number | 'pi' | variable | fn '(' expr ')' | '(' expr ')'
///   fn      := sin | cos | tanh | exp
class Expr {
 public:
  virtual ~Expr() = default;
  virtual double eval(const EvalCtx& c) const = 0;
  /// Exact symbolic derivative with respect to one variable name.
  virtual std::shared_ptr<const Expr> diff(const std::string& var) const = 0;
  virtual std::string str() const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws std::invalid_argument with position info on malformed input.
ExprPtr parse_expr(const std::string& text);

ExprPtr expr_constant(double v);

}  // namespace mfglab
