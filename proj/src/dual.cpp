#include "dualcalc/dual.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "dualcalc/errors.hpp"
#include "lexing.hpp"

namespace dualcalc {

namespace {

DualReal checked(double re, double ze, const char* op) {
  if (!std::isfinite(re) || !std::isfinite(ze)) {
    throw NonFiniteError(std::string("non-finite result in ") + op);
  }
  return DualReal(re, ze);
}

}  // namespace

DualReal::DualReal(double re, double ze) : re_(re), ze_(ze) {
  if (!std::isfinite(re) || !std::isfinite(ze)) {
    throw NonFiniteError("dual number parts must be finite");
  }
}

DualReal add(DualReal x, DualReal y) { return checked(x.re() + y.re(), x.ze() + y.ze(), "add"); }

DualReal sub(DualReal x, DualReal y) { return checked(x.re() - y.re(), x.ze() - y.ze(), "sub"); }

DualReal mul(DualReal x, DualReal y) {
  return checked(x.re() * y.re(), x.re() * y.ze() + x.ze() * y.re(), "mul");
}

DualReal negate(DualReal x) noexcept {
  // Negating a finite value stays finite.
  return DualReal(-x.re(), -x.ze());
}

DualReal scale(double a, DualReal x) { return checked(a * x.re(), a * x.ze(), "scale"); }

DualReal inverse(DualReal x) {
  if (x.re() == 0.0) {
    throw ZeroDivisorError("cannot invert " + to_string(x) + ": real part is zero");
  }
  const double r = 1.0 / x.re();
  return checked(r, -x.ze() * r * r, "inverse");
}

DualReal divide(DualReal x, DualReal y) { return mul(x, inverse(y)); }

double norm(DualReal x) noexcept {
  return std::sqrt(2.0 * x.re() * x.re() + x.ze() * x.ze());
}

AlgebraClass classify(DualReal x) noexcept {
  if (x.re() != 0.0) return AlgebraClass::Invertible;
  return x.ze() == 0.0 ? AlgebraClass::Zero : AlgebraClass::ZeroDivisor;
}

std::string_view to_string(AlgebraClass c) noexcept {
  switch (c) {
    case AlgebraClass::Zero: return "zero";
    case AlgebraClass::ZeroDivisor: return "zero-divisor";
    case AlgebraClass::Invertible: return "invertible";
  }
  return "unknown";
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string to_string(DualReal x) {
  if (x.ze() == 0.0) return format_real(x.re());
  if (x.re() == 0.0) return format_real(x.ze()) + "eps";
  std::string out = format_real(x.re());
  if (x.ze() > 0.0) out += '+';
  out += format_real(x.ze());
  out += "eps";
  return out;
}

std::ostream& operator<<(std::ostream& os, DualReal x) { return os << to_string(x); }

DualReal parse_dual(std::string_view text) {
  detail::Cursor cur(text);

  struct Term {
    double value;
    bool is_eps;
  };
  auto parse_term = [&cur](bool sign_required) -> Term {
    cur.skip_space();
    double sign = 1.0;
    if (cur.peek() == '+' || cur.peek() == '-') {
      sign = cur.peek() == '-' ? -1.0 : 1.0;
      cur.advance();
      cur.skip_space();
    } else if (sign_required) {
      throw SyntaxError("expected '+' or '-'", cur.offset());
    }
    double magnitude = 1.0;
    bool has_number = false;
    if (detail::starts_number(cur)) {
      magnitude = detail::lex_number(cur);
      has_number = true;
      cur.skip_space();
    }
    if (cur.consume_word("eps")) return {sign * magnitude, true};
    if (!has_number) throw SyntaxError("expected a number or 'eps'", cur.offset());
    return {sign * magnitude, false};
  };

  Term first = parse_term(false);
  cur.skip_space();
  if (cur.at_end()) {
    return first.is_eps ? DualReal(0.0, first.value) : DualReal(first.value, 0.0);
  }
  if (first.is_eps) throw SyntaxError("eps term must come last", cur.offset());
  const std::size_t second_at = cur.offset();
  Term second = parse_term(true);
  if (!second.is_eps) throw SyntaxError("second term must be an eps term", second_at);
  cur.skip_space();
  if (!cur.at_end()) throw SyntaxError("unexpected trailing input", cur.offset());
  return DualReal(first.value, second.value);
}

}  // namespace dualcalc
