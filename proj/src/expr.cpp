#include "dualcalc/expr.hpp"

#include <cctype>
#include <cmath>

#include "dualcalc/errors.hpp"
#include "lexing.hpp"

namespace dualcalc {

namespace {

std::shared_ptr<const Node> make_node(NodeKind kind, DualReal value, int exponent,
                                      std::shared_ptr<const Node> lhs,
                                      std::shared_ptr<const Node> rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = value;
  n->exponent = exponent;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

const std::shared_ptr<const Node>& variable_node() {
  static const std::shared_ptr<const Node> var =
      make_node(NodeKind::Variable, DualReal(), 0, nullptr, nullptr);
  return var;
}

}  // namespace

Expr::Expr() : node_(variable_node()) {}

NodeKind Expr::kind() const noexcept { return node_->kind; }
DualReal Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
Expr Expr::lhs() const noexcept { return Expr(node_->lhs); }
Expr Expr::rhs() const noexcept { return Expr(node_->rhs); }

std::size_t Expr::size() const noexcept {
  std::size_t n = 1;
  if (node_->lhs) n += lhs().size();
  if (node_->rhs) n += rhs().size();
  return n;
}

Expr Expr::constant(DualReal c) { return Expr(make_node(NodeKind::Constant, c, 0, nullptr, nullptr)); }

Expr Expr::variable() { return Expr(); }

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw InvalidArgument("not a binary node kind");
  return Expr(make_node(kind, DualReal(), 0, std::move(lhs.node_), std::move(rhs.node_)));
}

Expr Expr::unary(NodeKind kind, Expr operand) {
  if (!is_unary(kind)) throw InvalidArgument("not a unary node kind");
  return Expr(make_node(kind, DualReal(), 0, std::move(operand.node_), nullptr));
}

Expr Expr::pow(Expr base, int exponent) {
  return Expr(make_node(NodeKind::Pow, DualReal(), exponent, std::move(base.node_), nullptr));
}

bool is_binary(NodeKind kind) noexcept {
  return kind == NodeKind::Add || kind == NodeKind::Sub || kind == NodeKind::Mul ||
         kind == NodeKind::Div;
}

bool is_unary(NodeKind kind) noexcept {
  return kind == NodeKind::Neg || kind == NodeKind::Sin || kind == NodeKind::Cos ||
         kind == NodeKind::Exp || kind == NodeKind::Log;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : cur_(text) {}

  Expr parse() {
    Expr e = expr();
    cur_.skip_space();
    if (!cur_.at_end()) throw SyntaxError("unexpected input", cur_.offset());
    return e;
  }

 private:
  Expr expr() {
    Expr lhs = term();
    for (;;) {
      cur_.skip_space();
      const char c = cur_.peek();
      if (c != '+' && c != '-') return lhs;
      cur_.advance();
      lhs = Expr::binary(c == '+' ? NodeKind::Add : NodeKind::Sub, lhs, term());
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      cur_.skip_space();
      const char c = cur_.peek();
      if (c != '*' && c != '/') return lhs;
      cur_.advance();
      lhs = Expr::binary(c == '*' ? NodeKind::Mul : NodeKind::Div, lhs, factor());
    }
  }

  Expr factor() {
    cur_.skip_space();
    if (cur_.peek() == '-') {
      cur_.advance();
      return Expr::unary(NodeKind::Neg, factor());
    }
    Expr base = atom();
    cur_.skip_space();
    if (cur_.peek() != '^') return base;
    cur_.advance();
    return Expr::pow(base, integer_exponent());
  }

  int integer_exponent() {
    cur_.skip_space();
    const std::size_t start = cur_.offset();
    double sign = 1.0;
    if (cur_.peek() == '-' || cur_.peek() == '+') {
      sign = cur_.peek() == '-' ? -1.0 : 1.0;
      cur_.advance();
    }
    if (!detail::starts_number(cur_)) throw SyntaxError("expected integer exponent", cur_.offset());
    const double value = sign * detail::lex_number(cur_);
    if (value != std::floor(value)) throw SyntaxError("non-integer exponent", start);
    if (std::abs(value) > 1e6) throw SyntaxError("exponent out of range", start);
    return static_cast<int>(value);
  }

  Expr atom() {
    cur_.skip_space();
    const std::size_t start = cur_.offset();
    if (cur_.at_end()) throw SyntaxError("unexpected end of input", start);
    if (detail::starts_number(cur_)) {
      const double v = detail::lex_number(cur_);
      cur_.skip_space();
      if (cur_.consume_word("eps")) return Expr::constant(DualReal(0.0, v));
      return Expr::constant(DualReal(v, 0.0));
    }
    if (cur_.peek() == '(') {
      cur_.advance();
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(cur_.peek()))) {
      std::size_t len = 0;
      while (std::isalnum(static_cast<unsigned char>(cur_.peek(len))) || cur_.peek(len) == '_') ++len;
      const std::string_view word = cur_.rest().substr(0, len);
      cur_.advance(len);
      if (word == "x") return Expr::variable();
      if (word == "eps") return Expr::constant(DualReal::eps());
      NodeKind kind;
      if (word == "sin") {
        kind = NodeKind::Sin;
      } else if (word == "cos") {
        kind = NodeKind::Cos;
      } else if (word == "exp") {
        kind = NodeKind::Exp;
      } else if (word == "log") {
        kind = NodeKind::Log;
      } else {
        throw SyntaxError("unknown identifier '" + std::string(word) + "'", start);
      }
      expect('(');
      Expr arg = expr();
      expect(')');
      return Expr::unary(kind, arg);
    }
    throw SyntaxError(std::string("unexpected character '") + cur_.peek() + "'", start);
  }

  void expect(char c) {
    cur_.skip_space();
    if (cur_.peek() != c) throw SyntaxError(std::string("expected '") + c + "'", cur_.offset());
    cur_.advance();
  }

  detail::Cursor cur_;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels matching the grammar: sums, products, unary minus, powers, atoms.
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

bool prints_bare(DualReal c) {
  if (c.ze() == 0.0) return c.re() >= 0.0;
  return c.re() == 0.0 && c.ze() > 0.0;
}

int precedence(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Sub: return kSum;
    case NodeKind::Mul:
    case NodeKind::Div: return kProduct;
    case NodeKind::Neg: return kUnary;
    case NodeKind::Pow: return kPower;
    default: return kAtom;
  }
}

void print(const Expr& e, std::string& out);

void print_at_least(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) >= min_prec) {
    print(e, out);
    return;
  }
  out += '(';
  print(e, out);
  out += ')';
}

const char* function_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Sin: return "sin";
    case NodeKind::Cos: return "cos";
    case NodeKind::Exp: return "exp";
    case NodeKind::Log: return "log";
    default: return "";
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant:
      if (prints_bare(e.value())) {
        out += to_string(e.value());
      } else {
        out += '(';
        out += to_string(e.value());
        out += ')';
      }
      return;
    case NodeKind::Variable: out += 'x'; return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const int prec = precedence(e);
      print_at_least(e.lhs(), prec, out);
      switch (e.kind()) {
        case NodeKind::Add: out += " + "; break;
        case NodeKind::Sub: out += " - "; break;
        case NodeKind::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      // left associative: an equal-precedence right operand needs parentheses
      print_at_least(e.rhs(), prec + 1, out);
      return;
    }
    case NodeKind::Neg:
      out += '-';
      print_at_least(e.lhs(), kUnary, out);
      return;
    case NodeKind::Pow:
      print_at_least(e.lhs(), kAtom, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Log:
      out += function_name(e.kind());
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) noexcept {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Constant: return a.value() == b.value();
    case NodeKind::Variable: return true;
    case NodeKind::Pow:
      return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
    default:
      if (is_binary(a.kind())) {
        return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
      }
      return structurally_equal(a.lhs(), b.lhs());
  }
}

// ---------------------------------------------------------------------------
// Evaluation

DualReal lifted_sin(DualReal x) {
  return DualReal(std::sin(x.re()), x.ze() * std::cos(x.re()));
}

DualReal lifted_cos(DualReal x) {
  return DualReal(std::cos(x.re()), -x.ze() * std::sin(x.re()));
}

DualReal lifted_exp(DualReal x) {
  const double e = std::exp(x.re());
  return DualReal(e, x.ze() * e);
}

DualReal lifted_log(DualReal x) {
  if (!(x.re() > 0.0)) throw DomainError("log requires a positive real part, got " + to_string(x), "");
  return DualReal(std::log(x.re()), x.ze() / x.re());
}

DualReal lifted_pow(DualReal x, int n) {
  if (n == 0) return DualReal::one();
  if (n < 0 && x.re() == 0.0) {
    throw DomainError("negative power of " + to_string(x) + " (not invertible)", "");
  }
  return DualReal(std::pow(x.re(), n), n * std::pow(x.re(), n - 1) * x.ze());
}

namespace {

[[noreturn]] void rethrow_at(const DomainError& err, const Expr& e) {
  if (!err.subexpression().empty()) throw err;
  throw DomainError(std::string(err.what()) + " in " + to_string(e), to_string(e));
}

}  // namespace

DualReal eval_lifted(const Expr& e, DualReal x) {
  switch (e.kind()) {
    case NodeKind::Constant: return e.value();
    case NodeKind::Variable: return x;
    case NodeKind::Add: return eval_lifted(e.lhs(), x) + eval_lifted(e.rhs(), x);
    case NodeKind::Sub: return eval_lifted(e.lhs(), x) - eval_lifted(e.rhs(), x);
    case NodeKind::Mul: return eval_lifted(e.lhs(), x) * eval_lifted(e.rhs(), x);
    case NodeKind::Div: {
      const DualReal num = eval_lifted(e.lhs(), x);
      const DualReal den = eval_lifted(e.rhs(), x);
      if (den.re() == 0.0) {
        throw DomainError("division by non-invertible " + to_string(den) + " in " + to_string(e),
                          to_string(e));
      }
      return num / den;
    }
    case NodeKind::Neg: return -eval_lifted(e.lhs(), x);
    case NodeKind::Pow:
      try {
        return lifted_pow(eval_lifted(e.lhs(), x), e.exponent());
      } catch (const DomainError& err) {
        rethrow_at(err, e);
      }
    case NodeKind::Sin: return lifted_sin(eval_lifted(e.lhs(), x));
    case NodeKind::Cos: return lifted_cos(eval_lifted(e.lhs(), x));
    case NodeKind::Exp: return lifted_exp(eval_lifted(e.lhs(), x));
    case NodeKind::Log:
      try {
        return lifted_log(eval_lifted(e.lhs(), x));
      } catch (const DomainError& err) {
        rethrow_at(err, e);
      }
  }
  return DualReal();
}

double eval_real(const Expr& e, double x) {
  switch (e.kind()) {
    case NodeKind::Constant: return e.value().re();
    case NodeKind::Variable: return x;
    case NodeKind::Add: return eval_real(e.lhs(), x) + eval_real(e.rhs(), x);
    case NodeKind::Sub: return eval_real(e.lhs(), x) - eval_real(e.rhs(), x);
    case NodeKind::Mul: return eval_real(e.lhs(), x) * eval_real(e.rhs(), x);
    case NodeKind::Div: {
      const double den = eval_real(e.rhs(), x);
      if (den == 0.0) throw DomainError("division by zero in " + to_string(e), to_string(e));
      return eval_real(e.lhs(), x) / den;
    }
    case NodeKind::Neg: return -eval_real(e.lhs(), x);
    case NodeKind::Pow: {
      const double base = eval_real(e.lhs(), x);
      if (e.exponent() < 0 && base == 0.0) {
        throw DomainError("negative power of zero in " + to_string(e), to_string(e));
      }
      return e.exponent() == 0 ? 1.0 : std::pow(base, e.exponent());
    }
    case NodeKind::Sin: return std::sin(eval_real(e.lhs(), x));
    case NodeKind::Cos: return std::cos(eval_real(e.lhs(), x));
    case NodeKind::Exp: return std::exp(eval_real(e.lhs(), x));
    case NodeKind::Log: {
      const double arg = eval_real(e.lhs(), x);
      if (!(arg > 0.0)) throw DomainError("log of non-positive value in " + to_string(e), to_string(e));
      return std::log(arg);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Symbolic derivative

namespace {

bool is_const(const Expr& e, double re, double ze = 0.0) {
  return e.kind() == NodeKind::Constant && e.value() == DualReal(re, ze);
}

bool both_const(const Expr& a, const Expr& b) {
  return a.kind() == NodeKind::Constant && b.kind() == NodeKind::Constant;
}

Expr mk_add(Expr a, Expr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (both_const(a, b)) return Expr::constant(a.value() + b.value());
  return a + b;
}

Expr mk_neg(Expr a) {
  if (a.kind() == NodeKind::Constant) return Expr::constant(-a.value());
  if (a.kind() == NodeKind::Neg) return a.lhs();
  return -a;
}

Expr mk_sub(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return mk_neg(b);
  if (both_const(a, b)) return Expr::constant(a.value() - b.value());
  return a - b;
}

Expr mk_mul(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(DualReal());
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (both_const(a, b)) return Expr::constant(a.value() * b.value());
  return a * b;
}

Expr mk_div(Expr a, Expr b) {
  if (is_const(a, 0.0)) return Expr::constant(DualReal());
  if (is_const(b, 1.0)) return a;
  return a / b;
}

}  // namespace

Expr symbolic_derivative(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant: return Expr::constant(DualReal());
    case NodeKind::Variable: return Expr::constant(DualReal::one());
    case NodeKind::Add: return mk_add(symbolic_derivative(e.lhs()), symbolic_derivative(e.rhs()));
    case NodeKind::Sub: return mk_sub(symbolic_derivative(e.lhs()), symbolic_derivative(e.rhs()));
    case NodeKind::Mul: {
      const Expr f = e.lhs();
      const Expr g = e.rhs();
      return mk_add(mk_mul(symbolic_derivative(f), g), mk_mul(f, symbolic_derivative(g)));
    }
    case NodeKind::Div: {
      const Expr f = e.lhs();
      const Expr g = e.rhs();
      const Expr num =
          mk_sub(mk_mul(symbolic_derivative(f), g), mk_mul(f, symbolic_derivative(g)));
      return mk_div(num, Expr::pow(g, 2));
    }
    case NodeKind::Neg: return mk_neg(symbolic_derivative(e.lhs()));
    case NodeKind::Pow: {
      const int n = e.exponent();
      if (n == 0) return Expr::constant(DualReal());
      const Expr f = e.lhs();
      return mk_mul(mk_mul(Expr::constant(DualReal(n)), Expr::pow(f, n - 1)),
                    symbolic_derivative(f));
    }
    case NodeKind::Sin: return mk_mul(cos(e.lhs()), symbolic_derivative(e.lhs()));
    case NodeKind::Cos: return mk_mul(mk_neg(sin(e.lhs())), symbolic_derivative(e.lhs()));
    case NodeKind::Exp: return mk_mul(e, symbolic_derivative(e.lhs()));
    case NodeKind::Log: return mk_div(symbolic_derivative(e.lhs()), e.lhs());
  }
  return Expr::constant(DualReal());
}

}  // namespace dualcalc
