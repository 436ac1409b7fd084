#pragma once

// Expression trees in one dual variable `x`, evaluated by analytic lifting:
// a primitive g applied to x1 + x2 eps yields g(x1) + x2 g'(x1) eps.
//
// Grammar (whitespace insensitive):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" integer)? | "-" factor
//   atom   := number | number "eps" | "eps" | "x" | func "(" expr ")" | "(" expr ")"
//   func   := "sin" | "cos" | "exp" | "log"

#include <memory>
#include <string>
#include <string_view>

#include "dualcalc/dual.hpp"

namespace dualcalc {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log };

struct Node;

/// Immutable handle to an expression tree. Copies share structure.
class Expr {
 public:
  /// The variable x.
  Expr();

  NodeKind kind() const noexcept;
  /// Constant nodes only.
  DualReal value() const noexcept;
  /// Pow nodes only.
  int exponent() const noexcept;
  /// Left operand of binary nodes, sole operand of unary nodes and Pow base.
  Expr lhs() const noexcept;
  /// Right operand of binary nodes.
  Expr rhs() const noexcept;
  std::size_t size() const noexcept;

  const Node* node() const noexcept { return node_.get(); }

  static Expr constant(DualReal c);
  static Expr variable();
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr unary(NodeKind kind, Expr operand);
  static Expr pow(Expr base, int exponent);

 private:
  explicit Expr(std::shared_ptr<const Node> node) noexcept : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::Variable;
  DualReal value;
  int exponent = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

bool is_binary(NodeKind kind) noexcept;
bool is_unary(NodeKind kind) noexcept;

inline Expr operator+(Expr a, Expr b) { return Expr::binary(NodeKind::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(NodeKind::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(NodeKind::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(NodeKind::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::unary(NodeKind::Neg, std::move(a)); }
inline Expr sin(Expr a) { return Expr::unary(NodeKind::Sin, std::move(a)); }
inline Expr cos(Expr a) { return Expr::unary(NodeKind::Cos, std::move(a)); }
inline Expr exp(Expr a) { return Expr::unary(NodeKind::Exp, std::move(a)); }
inline Expr log(Expr a) { return Expr::unary(NodeKind::Log, std::move(a)); }
inline Expr pow(Expr a, int n) { return Expr::pow(std::move(a), n); }

/// Throws SyntaxError with the byte offset of the problem.
Expr parse_expr(std::string_view text);
/// Minimal-parenthesis text that parses back to the same tree.
std::string to_string(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b) noexcept;

/// Tree-walking lifted evaluation. Throws DomainError naming the failing node.
DualReal eval_lifted(const Expr& e, DualReal x);
/// Plain real evaluation using only the real parts of constants.
double eval_real(const Expr& e, double x);

/// Derivative with light algebraic cleanup (0 and 1 folding). Test oracle only;
/// not used by the numerical paths it checks.
Expr symbolic_derivative(const Expr& e);

// Lifted primitives, shared by the tree walker and the compiled evaluator.
DualReal lifted_sin(DualReal x);
DualReal lifted_cos(DualReal x);
DualReal lifted_exp(DualReal x);
/// Throws DomainError when Re x <= 0.
DualReal lifted_log(DualReal x);
/// Integer power; negative exponents require Re x != 0.
DualReal lifted_pow(DualReal x, int n);

}  // namespace dualcalc
