#include "dualcalc/function.hpp"

#include <array>
#include <cmath>

#include "dualcalc/errors.hpp"

namespace dualcalc {

Program::Program(const Expr& e) : source_(e) {
  code_.reserve(e.size());
  emit(e);
}

void Program::emit(const Expr& e) {
  auto push = [this](Op op, DualReal value = DualReal(), int exponent = 0,
                     const Node* origin = nullptr) { code_.push_back({op, exponent, value, origin}); };
  auto grow = [this] {
    ++height_;
    if (height_ > max_depth_) max_depth_ = height_;
  };

  switch (e.kind()) {
    case NodeKind::Constant:
      push(Op::Const, e.value());
      grow();
      return;
    case NodeKind::Variable:
      push(Op::Var);
      grow();
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      emit(e.lhs());
      emit(e.rhs());
      const Op op = e.kind() == NodeKind::Add   ? Op::Add
                    : e.kind() == NodeKind::Sub ? Op::Sub
                    : e.kind() == NodeKind::Mul ? Op::Mul
                                                : Op::Div;
      push(op, DualReal(), 0, e.node());
      --height_;
      return;
    }
    case NodeKind::Pow:
      emit(e.lhs());
      push(Op::Pow, DualReal(), e.exponent(), e.node());
      return;
    case NodeKind::Neg:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Log: {
      emit(e.lhs());
      const Op op = e.kind() == NodeKind::Neg   ? Op::Neg
                    : e.kind() == NodeKind::Sin ? Op::Sin
                    : e.kind() == NodeKind::Cos ? Op::Cos
                    : e.kind() == NodeKind::Exp ? Op::Exp
                                                : Op::Log;
      push(op, DualReal(), 0, e.node());
      return;
    }
  }
}

namespace {

// Finds the subtree rooted at `target` so errors can print it.
const Expr* find_subtree(const Expr& root, const Node* target, Expr& scratch) {
  if (root.node() == target) {
    scratch = root;
    return &scratch;
  }
  if (root.kind() == NodeKind::Constant || root.kind() == NodeKind::Variable) return nullptr;
  if (const Expr* hit = find_subtree(root.lhs(), target, scratch)) return hit;
  if (is_binary(root.kind())) return find_subtree(root.rhs(), target, scratch);
  return nullptr;
}

[[noreturn]] void raise_domain(const Expr& source, const Node* origin, const std::string& what) {
  Expr scratch;
  const Expr* sub = find_subtree(source, origin, scratch);
  const std::string text = sub ? to_string(*sub) : std::string();
  throw DomainError(what + " in " + text, text);
}

}  // namespace

DualReal Program::run(DualReal x, DualReal* stack) const {
  std::size_t top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const: stack[top++] = in.value; break;
      case Op::Var: stack[top++] = x; break;
      case Op::Add:
        --top;
        stack[top - 1] = stack[top - 1] + stack[top];
        break;
      case Op::Sub:
        --top;
        stack[top - 1] = stack[top - 1] - stack[top];
        break;
      case Op::Mul:
        --top;
        stack[top - 1] = stack[top - 1] * stack[top];
        break;
      case Op::Div:
        --top;
        if (stack[top].re() == 0.0) {
          raise_domain(source_, in.origin, "division by non-invertible " + to_string(stack[top]));
        }
        stack[top - 1] = stack[top - 1] / stack[top];
        break;
      case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
      case Op::Pow:
        try {
          stack[top - 1] = lifted_pow(stack[top - 1], in.exponent);
        } catch (const DomainError& err) {
          raise_domain(source_, in.origin, err.what());
        }
        break;
      case Op::Sin: stack[top - 1] = lifted_sin(stack[top - 1]); break;
      case Op::Cos: stack[top - 1] = lifted_cos(stack[top - 1]); break;
      case Op::Exp: stack[top - 1] = lifted_exp(stack[top - 1]); break;
      case Op::Log:
        try {
          stack[top - 1] = lifted_log(stack[top - 1]);
        } catch (const DomainError& err) {
          raise_domain(source_, in.origin, err.what());
        }
        break;
    }
  }
  return stack[0];
}

DualReal Program::eval(DualReal x) const {
  constexpr std::size_t kInline = 32;
  if (max_depth_ <= kInline) {
    std::array<DualReal, kInline> stack;
    return run(x, stack.data());
  }
  thread_local std::vector<DualReal> stack;
  if (stack.size() < max_depth_) stack.resize(max_depth_);
  return run(x, stack.data());
}

DualFunction::DualFunction(Expr e) : repr_(e), program_(std::make_shared<const Program>(e)) {}

DualFunction::DualFunction(ComponentPair components) : repr_(std::move(components)) {
  const auto& pair = std::get<ComponentPair>(repr_);
  if (!pair.u || !pair.v) throw InvalidArgument("component pair needs both u and v");
}

DualReal DualFunction::operator()(DualReal x) const {
  if (program_) return program_->eval(x);
  const auto& pair = std::get<ComponentPair>(repr_);
  const double u = pair.u(x.re(), x.ze());
  const double v = pair.v(x.re(), x.ze());
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw DomainError("component function is not finite at " + to_string(x), "");
  }
  return DualReal(u, v);
}

ComponentPair components_of(const DualFunction& f) {
  if (const ComponentPair* pair = f.components()) return *pair;
  return ComponentPair{
      [f](double x1, double x2) { return f(DualReal(x1, x2)).re(); },
      [f](double x1, double x2) { return f(DualReal(x1, x2)).ze(); },
  };
}

DualFunction operator+(const DualFunction& f, const DualFunction& g) {
  if (f.is_ast() && g.is_ast()) return DualFunction(*f.ast() + *g.ast());
  return DualFunction(ComponentPair{
      [f, g](double x1, double x2) { return f(DualReal(x1, x2)).re() + g(DualReal(x1, x2)).re(); },
      [f, g](double x1, double x2) { return f(DualReal(x1, x2)).ze() + g(DualReal(x1, x2)).ze(); },
  });
}

DualFunction operator-(const DualFunction& f, const DualFunction& g) {
  if (f.is_ast() && g.is_ast()) return DualFunction(*f.ast() - *g.ast());
  return DualFunction(ComponentPair{
      [f, g](double x1, double x2) { return f(DualReal(x1, x2)).re() - g(DualReal(x1, x2)).re(); },
      [f, g](double x1, double x2) { return f(DualReal(x1, x2)).ze() - g(DualReal(x1, x2)).ze(); },
  });
}

DualFunction operator*(DualReal k, const DualFunction& f) {
  if (f.is_ast()) return DualFunction(Expr::constant(k) * *f.ast());
  return DualFunction(ComponentPair{
      [k, f](double x1, double x2) { return (k * f(DualReal(x1, x2))).re(); },
      [k, f](double x1, double x2) { return (k * f(DualReal(x1, x2))).ze(); },
  });
}

}  // namespace dualcalc
