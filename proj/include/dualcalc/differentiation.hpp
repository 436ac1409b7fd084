#pragma once

// Differentiability of dual functions.
//
// f = u + v eps is differentiable at c when
//     u_x1 = v_x2   and   u_x2 = 0
// hold there (with continuous partials), and then f'(c) = u_x1(c) + v_x1(c) eps.
// Lifted expressions satisfy this identically, so their derivative is exact;
// component pairs are checked with central differences.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dualcalc/dual.hpp"
#include "dualcalc/function.hpp"
#include "dualcalc/order.hpp"

namespace dualcalc {

inline constexpr double kDefaultStep = 1e-5;

enum class DerivativeMethod { ExactLifted, FiniteDifference };

struct Partials {
  double u_x1 = 0.0;
  double u_x2 = 0.0;
  double v_x1 = 0.0;
  double v_x2 = 0.0;
};

struct CrResiduals {
  double u_x2 = 0.0;            // |u_x2|
  double u_x1_minus_v_x2 = 0.0;  // |u_x1 - v_x2|
};

struct LimitCheck {
  double worst_ratio = 0.0;
  bool pass = false;
  std::size_t samples = 0;
};

struct DerivativeReport {
  bool differentiable = false;
  std::optional<DualReal> derivative;  // present iff differentiable
  CrResiduals cr_residuals;
  DerivativeMethod method = DerivativeMethod::ExactLifted;
  double step = 0.0;
  std::optional<Partials> partials;      // FiniteDifference only
  std::optional<OrderKind> theta;        // set by type_theta_derivative_at
  std::optional<LimitCheck> limit_check;  // type-theta sampler result, when run
};

/// Sampler settings used to validate a type-theta derivative of a component pair.
struct LimitSampling {
  double eps = 1e-3;
  double delta = 1e-4;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

/// 1e-6 * (1 + norm(f(c))).
double default_cr_tolerance(const DualFunction& f, DualReal c);

/// Central differences of both components at c with step h.
Partials central_partials(const ComponentPair& f, DualReal c, double h);

/// Exact for expressions (derivative = symbolic derivative evaluated at c);
/// generalized Cauchy-Riemann check by central differences for component pairs.
DerivativeReport derivative_at(const DualFunction& f, DualReal c, double tol, double h = kDefaultStep);

/// Same computation as derivative_at. For component pairs that pass the
/// Cauchy-Riemann check the candidate derivative is also validated with the
/// limit sampler restricted to the deleted type-theta neighborhood.
DerivativeReport type_theta_derivative_at(const DualFunction& f, DualReal c, OrderKind theta,
                                          double tol, double h = kDefaultStep,
                                          const LimitSampling& sampling = {});

/// Draws `samples` points from the deleted (type-theta, when given) delta
/// neighborhood of c and reports max norm(f(x) - f(c) - L (x - c)) / norm(x - c).
/// pass = worst_ratio < eps.
LimitCheck verify_limit_definition(const DualFunction& f, DualReal c, DualReal derivative,
                                   double eps, double delta, std::size_t samples,
                                   std::optional<OrderKind> theta, std::uint64_t seed);

}  // namespace dualcalc
