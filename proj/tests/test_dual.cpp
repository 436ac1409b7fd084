#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dualcalc/dual.hpp"
#include "dualcalc/errors.hpp"

using namespace dualcalc;

TEST_CASE("addition") {
  CHECK(DualReal(1, 0) + DualReal(0, 1) == DualReal(1, 1));
  CHECK(DualReal(2, 3) + DualReal(-2, -3) == DualReal(0, 0));
  CHECK(DualReal(0.5, 1.25) + DualReal(0.25, -0.25) == DualReal(0.75, 1.0));
}

TEST_CASE("multiplication") {
  CHECK(DualReal::eps() * DualReal::eps() == DualReal(0, 0));
  CHECK(DualReal(1, 0) * DualReal(-3.5, 7) == DualReal(-3.5, 7));
  CHECK(DualReal(2, 3) * DualReal(4, 5) == DualReal(8, 22));
}

TEST_CASE("inverse and division") {
  CHECK(inverse(DualReal(1, 0)) == DualReal(1, 0));
  CHECK(inverse(DualReal(2, 4)) == DualReal(0.5, -1.0));
  CHECK(DualReal(2, 4) * inverse(DualReal(2, 4)) == DualReal(1, 0));
  CHECK_THROWS_AS(inverse(DualReal(0, 1)), ZeroDivisorError);
  CHECK_THROWS_AS(inverse(DualReal(0, 0)), ZeroDivisorError);
  CHECK_THROWS_AS(DualReal(1, 1) / DualReal(0, 2), ZeroDivisorError);
  CHECK(DualReal(8, 22) / DualReal(4, 5) == DualReal(2, 3));
}

TEST_CASE("norm") {
  CHECK(norm(DualReal(1, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(norm(DualReal(0, 1)) == 1.0);
  CHECK(norm(DualReal(3, 4)) == doctest::Approx(std::sqrt(34.0)).epsilon(1e-15));
  CHECK(norm(DualReal()) == 0.0);
}

TEST_CASE("classification") {
  CHECK(classify(DualReal(0, 0)) == AlgebraClass::Zero);
  CHECK(classify(DualReal(0, -2)) == AlgebraClass::ZeroDivisor);
  CHECK(classify(DualReal(-3, 7)) == AlgebraClass::Invertible);
  CHECK(to_string(AlgebraClass::ZeroDivisor) == "zero-divisor");
}

TEST_CASE("non-finite values are rejected") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DualReal(inf, 0), NonFiniteError);
  CHECK_THROWS_AS(DualReal(0, std::nan("")), NonFiniteError);
  CHECK_THROWS_AS(DualReal(1e308, 0) + DualReal(1e308, 0), NonFiniteError);
  CHECK_THROWS_AS(DualReal(1e200, 1) * DualReal(1e200, 1), NonFiniteError);
}

TEST_CASE("literal printing") {
  CHECK(to_string(DualReal(4, 0)) == "4");
  CHECK(to_string(DualReal(2.5, 3)) == "2.5+3eps");
  CHECK(to_string(DualReal(2.5, -3)) == "2.5-3eps");
  CHECK(to_string(DualReal(0, -1)) == "-1eps");
  CHECK(to_string(DualReal(0, 0)) == "0");
  CHECK(to_string(DualReal(-0.0, 0)) == "0");
  CHECK(to_string(DualReal(1e-20, 0)) == "1e-20");
}

TEST_CASE("literal parsing") {
  CHECK(parse_dual("4") == DualReal(4, 0));
  CHECK(parse_dual("2.5+3eps") == DualReal(2.5, 3));
  CHECK(parse_dual("2.5-3eps") == DualReal(2.5, -3));
  CHECK(parse_dual("-1eps") == DualReal(0, -1));
  CHECK(parse_dual("eps") == DualReal(0, 1));
  CHECK(parse_dual(" 1 + eps ") == DualReal(1, 1));
  CHECK(parse_dual("1e-3-2e2eps") == DualReal(1e-3, -200));
  CHECK_THROWS_AS(parse_dual(""), SyntaxError);
  CHECK_THROWS_AS(parse_dual("1+"), SyntaxError);
  CHECK_THROWS_AS(parse_dual("1+2"), SyntaxError);
  CHECK_THROWS_AS(parse_dual("abc"), SyntaxError);
  CHECK_THROWS_AS(parse_dual("1e999"), SyntaxError);
  CHECK_THROWS_AS(parse_dual("1 2"), SyntaxError);
}

TEST_CASE("literal round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const DualReal x(d(rng), d(rng));
    CHECK(parse_dual(to_string(x)) == x);
  }
  // Values with at most 15 significant digits print and reparse exactly.
  CHECK(parse_dual(to_string(DualReal(123456789.012345, -0.1))) == DualReal(123456789.012345, -0.1));
}

TEST_CASE("norm axioms on random pairs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 5000; ++i) {
    const DualReal x(d(rng), d(rng));
    const DualReal y(d(rng), d(rng));
    const double a = d(rng);
    CHECK(norm(x) >= 0.0);
    CHECK(std::abs(norm(a * x) - std::abs(a) * norm(x)) <= 1e-12 * (1 + std::abs(a) * norm(x)));
    CHECK(norm(x + y) <= norm(x) + norm(y) + 1e-12);
    CHECK(norm(x * y) <= norm(x) * norm(y) + 1e-12);
  }
}

TEST_CASE("ring laws") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-10, 10);
  auto close = [](DualReal p, DualReal q) {
    return norm(p - q) <= 1e-12 * (1 + std::max(norm(p), norm(q)));
  };
  for (int i = 0; i < 5000; ++i) {
    const DualReal x(d(rng), d(rng));
    const DualReal y(d(rng), d(rng));
    const DualReal z(d(rng), d(rng));
    CHECK(x * y == y * x);
    CHECK(close((x * y) * z, x * (y * z)));
    CHECK(close(x * (y + z), x * y + x * z));
    if (std::abs(x.re()) >= 1e-6) CHECK(norm(x * inverse(x) - DualReal::one()) <= 1e-9);
  }
}
