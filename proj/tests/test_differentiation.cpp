#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dualcalc/differentiation.hpp"
#include "dualcalc/errors.hpp"
#include "support/random_expr.hpp"

using namespace dualcalc;

namespace {

DualFunction not_differentiable() {
  return DualFunction(ComponentPair{[](double, double x2) { return x2; }, [](double, double) { return 0.0; }});
}

// u = x1, v = x2 + phi(x1 - c1, x2 - c2) where phi is min(|p|, |q|) when p and q
// have opposite signs and 0 otherwise. The Cauchy-Riemann equations hold at c
// and the remainder vanishes on the type-1 neighborhood but not on the type-2 one.
DualFunction cone_witness(DualReal c) {
  const double c1 = c.re();
  const double c2 = c.ze();
  return DualFunction(ComponentPair{
      [](double x1, double) { return x1; },
      [c1, c2](double x1, double x2) {
        const double p = x1 - c1;
        const double q = x2 - c2;
        return x2 + (p * q < 0.0 ? std::min(std::abs(p), std::abs(q)) : 0.0);
      },
  });
}

}  // namespace

TEST_CASE("exact derivative of expressions") {
  const DerivativeReport r = derivative_at(DualFunction::parse("x^2"), DualReal(1, 1), 1e-6);
  CHECK(r.differentiable);
  CHECK(r.method == DerivativeMethod::ExactLifted);
  CHECK(*r.derivative == DualReal(2, 2));
  CHECK(r.cr_residuals.u_x2 == 0.0);
  CHECK(r.cr_residuals.u_x1_minus_v_x2 == 0.0);
  CHECK(*derivative_at(DualFunction::parse("3-eps"), DualReal(5, 1), 1e-6).derivative == DualReal(0, 0));
}

TEST_CASE("finite differences reject u = x2") {
  for (const DualReal c : {DualReal(0, 0), DualReal(1, -2), DualReal(-3, 0.5)}) {
    const DerivativeReport r = derivative_at(not_differentiable(), c, 1e-6);
    CHECK_FALSE(r.differentiable);
    CHECK_FALSE(r.derivative.has_value());
    CHECK(r.method == DerivativeMethod::FiniteDifference);
    CHECK(r.cr_residuals.u_x2 == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("finite differences agree with the exact derivative") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const DualReal c = testing::random_dual(rng, -1, 1);
    const Expr e = testing::conditioned_expr(rng, 4, {c});
    const DualFunction f(e);
    const DerivativeReport exact = derivative_at(f, c, 1e-6);
    const DerivativeReport fd = derivative_at(DualFunction(components_of(f)), c, 1e-6);
    REQUIRE_MESSAGE(fd.differentiable, to_string(e));
    CHECK(fd.cr_residuals.u_x2 <= 1e-6);
    CHECK(fd.cr_residuals.u_x1_minus_v_x2 <= 1e-6);
    CHECK(norm(*fd.derivative - *exact.derivative) <= std::max(1e-6, 1e-4 * norm(*exact.derivative)));
    // The reported derivative is assembled from the partials.
    CHECK(*fd.derivative == DualReal(fd.partials->u_x1, fd.partials->v_x1));
  }
}

TEST_CASE("finite-difference stencil errors propagate") {
  const DualFunction f(ComponentPair{[](double x1, double) { return std::log(x1); }, [](double, double) { return 0.0; }});
  CHECK_THROWS_AS(derivative_at(f, DualReal(0, 0), 1e-6), DomainError);
  CHECK_THROWS_AS(derivative_at(f, DualReal(1, 0), 1e-6, 0.0), InvalidArgument);
}

TEST_CASE("limit definition sampler") {
  const DualFunction sq = DualFunction::parse("x^2");
  CHECK(verify_limit_definition(sq, DualReal(1, 0), DualReal(2, 0), 0.1, 0.01, 1000, std::nullopt, 1).pass);
  CHECK_FALSE(verify_limit_definition(sq, DualReal(1, 0), DualReal(3, 0), 0.1, 0.001, 1000, std::nullopt, 1).pass);
  const LimitCheck id =
      verify_limit_definition(DualFunction::parse("x"), DualReal(-4, 2), DualReal(1, 0), 1e-9, 5.0, 500, std::nullopt, 2);
  CHECK(id.worst_ratio <= 1e-12);
  CHECK(id.pass);
  CHECK(id.samples == 500);
  CHECK_THROWS_AS(verify_limit_definition(sq, DualReal(), DualReal(), 0.1, 0.1, 0, std::nullopt, 0), InvalidArgument);
}

TEST_CASE("the sampler is reproducible under a fixed seed") {
  const DualFunction f = DualFunction::parse("sin(x)*x");
  const LimitCheck a = verify_limit_definition(f, DualReal(0.5, 0.2), DualReal(1, 1), 1e-3, 1e-2, 300, OrderKind::Type2, 44);
  const LimitCheck b = verify_limit_definition(f, DualReal(0.5, 0.2), DualReal(1, 1), 1e-3, 1e-2, 300, OrderKind::Type2, 44);
  CHECK(a.worst_ratio == b.worst_ratio);
}

TEST_CASE("random expressions satisfy the limit definition") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 30; ++i) {
    const DualReal c = testing::random_dual(rng, -0.7, 0.7);
    const DualFunction f(testing::conditioned_expr(rng, 3, {c}));
    const DualReal L = *derivative_at(f, c, 1e-6).derivative;
    CHECK(verify_limit_definition(f, c, L, 1e-3, 1e-4, 1000, std::nullopt, i).pass);
    CHECK_FALSE(verify_limit_definition(f, c, L + DualReal(0.1, 0), 1e-3, 1e-4, 1000, std::nullopt, i).pass);
  }
}

TEST_CASE("derivatives are unique") {
  const DualFunction f = DualFunction::parse("exp(x)");
  const DualReal c(0.3, -0.4);
  const DualReal L = *derivative_at(f, c, 1e-6).derivative;
  const DualReal other = L + DualReal(1e-3, 1e-3);
  const bool both = verify_limit_definition(f, c, L, 1e-6, 1e-5, 1000, std::nullopt, 3).pass &&
                    verify_limit_definition(f, c, other, 1e-6, 1e-5, 1000, std::nullopt, 3).pass;
  CHECK_FALSE(both);
  CHECK(verify_limit_definition(f, c, L, 1e-4, 1e-5, 1000, std::nullopt, 3).pass);
}

TEST_CASE("type-theta derivatives of differentiable functions") {
  const DerivativeReport r = type_theta_derivative_at(DualFunction::parse("x^2"), DualReal(0, 0), OrderKind::Type1, 1e-6);
  CHECK(r.differentiable);
  CHECK(*r.derivative == DualReal(0, 0));
  CHECK(*r.theta == OrderKind::Type1);

  const DualFunction f = DualFunction::parse("x*cos(x)");
  const DualReal c(0.4, 1.5);
  const DualReal full = *derivative_at(f, c, 1e-6).derivative;
  for (const OrderKind t : {OrderKind::Type1, OrderKind::Type2}) {
    CHECK(*type_theta_derivative_at(f, c, t, 1e-6).derivative == full);
    const DerivativeReport fd = type_theta_derivative_at(DualFunction(components_of(f)), c, t, 1e-6);
    REQUIRE(fd.differentiable);
    CHECK(fd.limit_check->pass);
    CHECK(norm(*fd.derivative - full) <= 1e-6);
  }
}

TEST_CASE("a function that is type-1 but not type-2 differentiable") {
  const DualReal c(0.5, -0.25);
  const DualFunction w = cone_witness(c);

  // The Cauchy-Riemann check at c cannot see the difference.
  const DerivativeReport cr = derivative_at(w, c, 1e-6);
  REQUIRE(cr.differentiable);
  CHECK(norm(*cr.derivative - DualReal(1, 0)) <= 1e-9);

  const DerivativeReport t1 = type_theta_derivative_at(w, c, OrderKind::Type1, 1e-6);
  CHECK(t1.differentiable);
  CHECK(t1.limit_check->worst_ratio <= 1e-9);

  const DerivativeReport t2 = type_theta_derivative_at(w, c, OrderKind::Type2, 1e-6);
  CHECK_FALSE(t2.differentiable);
  CHECK(t2.limit_check->worst_ratio > 0.3);

  // Full differentiability fails as well, at every radius.
  for (const double delta : {1e-1, 1e-3, 1e-6}) {
    CHECK_FALSE(verify_limit_definition(w, c, DualReal(1, 0), 1e-3, delta, 2000, std::nullopt, 8).pass);
    CHECK(verify_limit_definition(w, c, DualReal(1, 0), 1e-3, delta, 2000, OrderKind::Type1, 8).pass);
  }
}
