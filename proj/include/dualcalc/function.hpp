#pragma once

// Dual-valued functions f(x) = u(x1, x2) + v(x1, x2) eps, either as a lifted
// expression tree or as an explicit pair of real component callables.

#include <functional>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "dualcalc/dual.hpp"
#include "dualcalc/expr.hpp"

namespace dualcalc {

/// Real component u and zero-divisor component v. Both must be pure.
struct ComponentPair {
  std::function<double(double, double)> u;
  std::function<double(double, double)> v;
};

/// Flattened postfix form of an Expr. Evaluates exactly like eval_lifted (same
/// operations in the same order) without the tree walk.
class Program {
 public:
  explicit Program(const Expr& e);

  DualReal eval(DualReal x) const;
  std::size_t stack_depth() const noexcept { return max_depth_; }

 private:
  enum class Op : unsigned char { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Log };
  struct Instr {
    Op op;
    int exponent;
    DualReal value;
    const Node* origin;
  };

  void emit(const Expr& e);
  DualReal run(DualReal x, DualReal* stack) const;

  Expr source_;  // keeps `origin` pointers alive
  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
  std::size_t height_ = 0;  // stack height while emitting
};

class DualFunction {
 public:
  DualFunction(Expr e);  // NOLINT(google-explicit-constructor)
  DualFunction(ComponentPair components);  // NOLINT(google-explicit-constructor)

  static DualFunction parse(std::string_view text) { return DualFunction(parse_expr(text)); }
  static DualFunction constant(DualReal k) { return DualFunction(Expr::constant(k)); }

  bool is_ast() const noexcept { return std::holds_alternative<Expr>(repr_); }
  /// nullptr for the Components variant.
  const Expr* ast() const noexcept { return std::get_if<Expr>(&repr_); }
  const ComponentPair* components() const noexcept { return std::get_if<ComponentPair>(&repr_); }

  /// Throws DomainError / NonFiniteError when f is undefined at x.
  DualReal operator()(DualReal x) const;

 private:
  std::variant<Expr, ComponentPair> repr_;
  std::shared_ptr<const Program> program_;
};

/// u(x1, x2) = Re f(x1 + x2 eps), v likewise. Identity on the Components variant.
ComponentPair components_of(const DualFunction& f);

DualFunction operator+(const DualFunction& f, const DualFunction& g);
DualFunction operator-(const DualFunction& f, const DualFunction& g);
/// k * f for a dual constant k.
DualFunction operator*(DualReal k, const DualFunction& f);

}  // namespace dualcalc
