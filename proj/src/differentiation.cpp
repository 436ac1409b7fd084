#include "dualcalc/differentiation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dualcalc/errors.hpp"

namespace dualcalc {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be positive and finite");
  }
}

double finite_or_domain(double value, DualReal at) {
  if (!std::isfinite(value)) {
    throw DomainError("component function is not finite at " + to_string(at), "");
  }
  return value;
}

}  // namespace

double default_cr_tolerance(const DualFunction& f, DualReal c) { return 1e-6 * (1.0 + norm(f(c))); }

Partials central_partials(const ComponentPair& f, DualReal c, double h) {
  require_positive(h, "finite-difference step");
  const double x1 = c.re();
  const double x2 = c.ze();
  auto u = [&](double a, double b) { return finite_or_domain(f.u(a, b), DualReal(a, b)); };
  auto v = [&](double a, double b) { return finite_or_domain(f.v(a, b), DualReal(a, b)); };
  const double two_h = 2.0 * h;
  Partials p;
  p.u_x1 = (u(x1 + h, x2) - u(x1 - h, x2)) / two_h;
  p.u_x2 = (u(x1, x2 + h) - u(x1, x2 - h)) / two_h;
  p.v_x1 = (v(x1 + h, x2) - v(x1 - h, x2)) / two_h;
  p.v_x2 = (v(x1, x2 + h) - v(x1, x2 - h)) / two_h;
  return p;
}

DerivativeReport derivative_at(const DualFunction& f, DualReal c, double tol, double h) {
  require_positive(tol, "tolerance");
  require_positive(h, "finite-difference step");

  DerivativeReport report;
  if (const Expr* e = f.ast()) {
    report.method = DerivativeMethod::ExactLifted;
    report.differentiable = true;
    report.derivative = eval_lifted(symbolic_derivative(*e), c);
    return report;
  }

  report.method = DerivativeMethod::FiniteDifference;
  report.step = h;
  const Partials p = central_partials(*f.components(), c, h);
  report.partials = p;
  report.cr_residuals.u_x2 = std::abs(p.u_x2);
  report.cr_residuals.u_x1_minus_v_x2 = std::abs(p.u_x1 - p.v_x2);
  report.differentiable =
      report.cr_residuals.u_x2 <= tol && report.cr_residuals.u_x1_minus_v_x2 <= tol;
  if (report.differentiable) report.derivative = DualReal(p.u_x1, p.v_x1);
  return report;
}

DerivativeReport type_theta_derivative_at(const DualFunction& f, DualReal c, OrderKind theta,
                                          double tol, double h, const LimitSampling& sampling) {
  DerivativeReport report = derivative_at(f, c, tol, h);
  report.theta = theta;
  // Axis directions belong to both type-theta neighborhoods, so the partials
  // (and the Cauchy-Riemann necessity argument) carry over unchanged.
  if (report.method == DerivativeMethod::FiniteDifference && report.differentiable) {
    const LimitCheck check =
        verify_limit_definition(f, c, *report.derivative, sampling.eps, sampling.delta,
                                sampling.samples, theta, sampling.seed);
    report.limit_check = check;
    if (!check.pass) {
      report.differentiable = false;
      report.derivative.reset();
    }
  }
  return report;
}

LimitCheck verify_limit_definition(const DualFunction& f, DualReal c, DualReal derivative,
                                   double eps, double delta, std::size_t samples,
                                   std::optional<OrderKind> theta, std::uint64_t seed) {
  require_positive(eps, "eps");
  require_positive(delta, "delta");
  if (samples == 0) throw InvalidArgument("samples must be at least 1");

  const Neighborhood ball = make_neighborhood(c, delta, theta, /*deleted=*/true);
  std::mt19937_64 rng(seed);
  const DualReal fc = f(c);

  LimitCheck check;
  for (std::size_t i = 0; i < samples; ++i) {
    const DualReal x = sample_point(ball, rng);
    const DualReal step = x - c;
    const DualReal remainder = f(x) - fc - derivative * step;
    check.worst_ratio = std::max(check.worst_ratio, norm(remainder) / norm(step));
  }
  check.samples = samples;
  check.pass = check.worst_ratio < eps;
  return check;
}

}  // namespace dualcalc
