#include "dualcalc/order.hpp"

#include <algorithm>
#include <cmath>

#include "dualcalc/errors.hpp"

namespace dualcalc {

OrderKind order_kind_from_int(int theta) {
  if (theta == 1) return OrderKind::Type1;
  if (theta == 2) return OrderKind::Type2;
  throw InvalidArgument("order type must be 1 or 2, got " + std::to_string(theta));
}

bool greater(DualReal x, DualReal y, OrderKind theta) noexcept {
  if (theta == OrderKind::Type1) {
    return (x.re() > y.re() && x.ze() >= y.ze()) || (x.re() == y.re() && x.ze() > y.ze());
  }
  return (x.re() > y.re() && y.ze() >= x.ze()) || (x.re() == y.re() && y.ze() > x.ze());
}

bool greater_equal(DualReal x, DualReal y, OrderKind theta) noexcept {
  if (theta == OrderKind::Type1) return x.re() >= y.re() && x.ze() >= y.ze();
  return x.re() >= y.re() && x.ze() <= y.ze();
}

bool comparable(DualReal x, DualReal y, OrderKind theta) noexcept {
  return greater_equal(x, y, theta) || greater_equal(y, x, theta);
}

bool greater_approx(DualReal x, DualReal y, OrderKind theta, double tol) noexcept {
  const bool re_gt = x.re() > y.re() + tol;
  const bool re_tie = std::abs(x.re() - y.re()) <= tol;
  // For type 2 the Ze comparison runs the other way.
  const double zx = theta == OrderKind::Type1 ? x.ze() : -x.ze();
  const double zy = theta == OrderKind::Type1 ? y.ze() : -y.ze();
  return (re_gt && zx >= zy - tol) || (re_tie && zx > zy + tol);
}

bool greater_equal_relaxed(DualReal x, DualReal y, OrderKind theta, double slack) noexcept {
  if (theta == OrderKind::Type1) return x.re() >= y.re() - slack && x.ze() >= y.ze() - slack;
  return x.re() >= y.re() - slack && x.ze() <= y.ze() + slack;
}

Relation classify_pair(DualReal x, DualReal y) noexcept {
  Relation r;
  if (x == y) return r.with(Relation::Equal);
  if (greater(x, y, OrderKind::Type1)) r = r.with(Relation::Greater1);
  if (greater(y, x, OrderKind::Type1)) r = r.with(Relation::Less1);
  if (greater(x, y, OrderKind::Type2)) r = r.with(Relation::Greater2);
  if (greater(y, x, OrderKind::Type2)) r = r.with(Relation::Less2);
  return r;
}

std::string describe(Relation r) {
  if (r.has(Relation::Equal)) return "equal";
  std::string out;
  auto append = [&out](const char* text) {
    if (!out.empty()) out += "; ";
    out += text;
  };
  if (r.has(Relation::Greater1)) append("greater (type 1)");
  if (r.has(Relation::Less1)) append("less (type 1)");
  if (r.has(Relation::Greater2)) append("greater (type 2)");
  if (r.has(Relation::Less2)) append("less (type 2)");
  return out;
}

Rect Rect::spanned_by(DualReal p, DualReal q) noexcept {
  return Rect{std::min(p.re(), q.re()), std::max(p.re(), q.re()), std::min(p.ze(), q.ze()),
              std::max(p.ze(), q.ze())};
}

TypedInterval make_interval(DualReal a, DualReal b, OrderKind theta) {
  if (!less(a, b, theta)) {
    throw InvalidIntervalError("interval endpoints " + to_string(a) + ", " + to_string(b) +
                               " are not strictly type " + std::to_string(to_int(theta)) +
                               " ordered");
  }
  return TypedInterval(a, b, theta);
}

bool contains(const TypedInterval& interval, DualReal x) noexcept {
  return less_equal(interval.lower(), x, interval.theta()) &&
         less_equal(x, interval.upper(), interval.theta());
}

Neighborhood make_neighborhood(DualReal center, double radius, std::optional<OrderKind> theta,
                               bool deleted) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("neighborhood radius must be positive and finite");
  }
  return Neighborhood{center, radius, theta, deleted};
}

bool in_neighborhood(const Neighborhood& n, DualReal x) noexcept {
  const double d1 = x.re() - n.center.re();
  const double d2 = x.ze() - n.center.ze();
  if (!(std::sqrt(2.0 * d1 * d1 + d2 * d2) < n.radius)) return false;
  if (n.deleted && x == n.center) return false;
  if (n.theta && !comparable(x, n.center, *n.theta)) return false;
  return true;
}

DualReal sample_point(const Neighborhood& n, std::mt19937_64& rng) {
  // norm(d) < r is the ellipse 2 d1^2 + d2^2 < r^2.
  std::uniform_real_distribution<double> re_offset(-n.radius / std::sqrt(2.0), n.radius / std::sqrt(2.0));
  std::uniform_real_distribution<double> ze_offset(-n.radius, n.radius);
  for (;;) {
    const double d1 = re_offset(rng);
    const double d2 = ze_offset(rng);
    const DualReal x(n.center.re() + d1, n.center.ze() + d2);
    if (in_neighborhood(n, x)) return x;
  }
}

}  // namespace dualcalc
