#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace idect {

/// Immutable expression tree over a single real variable.
///
/// Grammar (usual precedence, `^` binds tighter than unary minus and is
/// right-associative, no implicit multiplication):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'pi' | variable | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// The variable may be spelled t, x, s or u; all denote the same argument.
/// Functions: exp log sqrt sin cos tan sinh cosh tanh erf abs pow(a,b)
/// besselj(nu, z) and besseljx(nu, p, z) = J_nu(z)/z^p. The integer orders
/// of the Bessel functions must be numeric literals.
class Expr {
 public:
  struct Node;

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  double operator()(double t) const;
  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;
  /// True if the variable does not appear.
  bool is_constant() const;

  const Node& root() const { return *root_; }

 private:
  std::shared_ptr<const Node> root_;
};

struct Expr::Node {
  enum class Kind { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Call };

  Kind kind = Kind::Number;
  double value = 0.0;  // Number
  std::string name;  // Variable or Call
  std::vector<std::shared_ptr<const Node>> children;
};

/// Throws SyntaxError (with byte offset and expected tokens),
/// UnknownFunction or ArityError.
Expr parse(std::string_view source);

/// Throws EvalError on domain violations (log of a non-positive number,
/// division by zero, ...).
double eval_expr(const Expr& e, double t);

}  // namespace idect
