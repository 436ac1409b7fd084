#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dualcalc/errors.hpp"
#include "dualcalc/order.hpp"

using namespace dualcalc;

namespace {
constexpr OrderKind T1 = OrderKind::Type1;
constexpr OrderKind T2 = OrderKind::Type2;
}  // namespace

TEST_CASE("greater") {
  CHECK(greater(DualReal(1, 1), DualReal(0, 0), T1));
  CHECK_FALSE(greater(DualReal(1, 1), DualReal(0, 0), T2));
  for (const DualReal x : {DualReal(0, 0), DualReal(2, -3), DualReal(0, 5)}) {
    CHECK_FALSE(greater(x, x, T1));
    CHECK_FALSE(greater(x, x, T2));
  }
  CHECK(greater(DualReal(1, 2), DualReal(1, 1), T1));
  CHECK(greater(DualReal(1, 1), DualReal(1, 2), T2));
  CHECK(greater(DualReal(2, -1), DualReal(1, 0), T2));
}

TEST_CASE("classify_pair") {
  CHECK(classify_pair(DualReal(1, 1), DualReal(0, 0)) == Relation().with(Relation::Greater1));
  CHECK(classify_pair(DualReal(1, 0), DualReal(1, 1)) ==
        Relation().with(Relation::Less1).with(Relation::Greater2));
  CHECK(classify_pair(DualReal(2, 3), DualReal(2, 3)) == Relation().with(Relation::Equal));
  // Equal Ze parts, different Re parts: both orders agree.
  CHECK(classify_pair(DualReal(2, 5), DualReal(1, 5)) ==
        Relation().with(Relation::Greater1).with(Relation::Greater2));
  CHECK(describe(classify_pair(DualReal(1, 0), DualReal(1, 1))) == "less (type 1); greater (type 2)");
  CHECK(describe(classify_pair(DualReal(3, 3), DualReal(3, 3))) == "equal");
}

TEST_CASE("intervals") {
  const TypedInterval i1 = make_interval(DualReal(0, 0), DualReal(1, 1), T1);
  const Rect r = i1.rectangle();
  CHECK(r.re_min == 0);
  CHECK(r.re_max == 1);
  CHECK(r.ze_min == 0);
  CHECK(r.ze_max == 1);

  const TypedInterval i2 = make_interval(DualReal(0, 1), DualReal(1, 0), T2);
  CHECK(i2.rectangle().ze_min == 0);
  CHECK(i2.rectangle().ze_max == 1);

  CHECK_THROWS_AS(make_interval(DualReal(0, 0), DualReal(1, -1), T1), InvalidIntervalError);
  CHECK_THROWS_AS(make_interval(DualReal(0, 0), DualReal(0, 0), T1), InvalidIntervalError);
  CHECK_THROWS_AS(make_interval(DualReal(1, 0), DualReal(0, 0), T2), InvalidIntervalError);
  // Pure zero-divisor segment.
  CHECK_NOTHROW(make_interval(DualReal(1, 0), DualReal(1, 2), T1));
  CHECK_NOTHROW(make_interval(DualReal(1, 2), DualReal(1, 0), T2));

  CHECK(contains(i1, DualReal(0.5, 0.5)));
  CHECK_FALSE(contains(i1, DualReal(0.5, 2)));
  CHECK(contains(i1, i1.lower()));
  CHECK(contains(i1, i1.upper()));
  CHECK(contains(i2, i2.lower()));
  CHECK(contains(i2, i2.upper()));
  CHECK(i1.length() == DualReal(1, 1));
}

TEST_CASE("interval membership equals the rectangle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2, 2);
  std::uniform_int_distribution<int> snap(0, 3);
  for (int i = 0; i < 4000; ++i) {
    const OrderKind t = i % 2 ? T1 : T2;
    DualReal a(d(rng), d(rng));
    DualReal b(d(rng), d(rng));
    if (!less(a, b, t)) std::swap(a, b);
    if (!less(a, b, t)) continue;
    const TypedInterval iv = make_interval(a, b, t);
    // Snap some samples onto the boundary lines.
    double x1 = d(rng);
    double x2 = d(rng);
    if (snap(rng) == 0) x1 = a.re();
    if (snap(rng) == 0) x2 = b.ze();
    const DualReal x(x1, x2);
    CHECK(contains(iv, x) == iv.rectangle().contains(x));
  }
}

TEST_CASE("neighborhoods") {
  const DualReal c(0, 0);
  CHECK(in_neighborhood(make_neighborhood(c, 1.0), DualReal(0.5, 0)));
  CHECK_FALSE(in_neighborhood(make_neighborhood(c, 1.0, std::nullopt, true), c));
  CHECK(in_neighborhood(make_neighborhood(c, 1.0), c));
  CHECK_FALSE(in_neighborhood(make_neighborhood(c, 1.0, T2), DualReal(0.1, 0.5)));
  CHECK(in_neighborhood(make_neighborhood(c, 1.0, T1), DualReal(0.1, 0.5)));
  CHECK_FALSE(in_neighborhood(make_neighborhood(c, 1.0), DualReal(1, 0)));
  CHECK_THROWS_AS(make_neighborhood(c, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_neighborhood(c, -1.0), InvalidArgument);
}

TEST_CASE("sampled points lie in their neighborhood") {
  std::mt19937_64 rng(5);
  const DualReal c(0.3, -0.7);
  for (const auto theta : {std::optional<OrderKind>(), std::optional<OrderKind>(T1), std::optional<OrderKind>(T2)}) {
    const Neighborhood n = make_neighborhood(c, 0.01, theta, true);
    for (int i = 0; i < 500; ++i) {
      const DualReal x = sample_point(n, rng);
      CHECK(in_neighborhood(n, x));
    }
  }
}

TEST_CASE("the deleted ball is covered by the two deleted typed neighborhoods") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int i = 0; i < 3000; ++i) {
    const DualReal c(d(rng), d(rng));
    const double r = 0.1 + std::abs(d(rng));
    const DualReal x = sample_point(make_neighborhood(c, r, std::nullopt, true), rng);
    CHECK((in_neighborhood(make_neighborhood(c, r, T1, true), x) ||
           in_neighborhood(make_neighborhood(c, r, T2, true), x)));
  }
  // The center belongs to the ball but to neither deleted typed neighborhood.
  const DualReal c(1, 1);
  CHECK(in_neighborhood(make_neighborhood(c, 1.0), c));
  CHECK_FALSE(in_neighborhood(make_neighborhood(c, 1.0, T1, true), c));
  CHECK_FALSE(in_neighborhood(make_neighborhood(c, 1.0, T2, true), c));
}

TEST_CASE("order laws on random triples") {
  std::mt19937_64 rng(21);
  // Small integer grid so ties in either component are common.
  std::uniform_int_distribution<int> d(-3, 3);
  auto draw = [&] { return DualReal(d(rng), d(rng)); };
  for (int i = 0; i < 20000; ++i) {
    const DualReal x = draw(), y = draw(), z = draw();
    CHECK_FALSE(classify_pair(x, y).empty());
    for (const OrderKind t : {T1, T2}) {
      if (greater(x, y, t) && greater(y, z, t)) CHECK(greater(x, z, t));
      if (greater(x, y, t)) {
        CHECK(greater(x + z, y + z, t));
        CHECK(greater(-y, -x, t));
      }
      if (greater(x, DualReal(), t) && greater(y, DualReal(), t)) CHECK(greater_equal(x * y, DualReal(), t));
    }
    if (x.re() == y.re()) CHECK(greater(x, y, T1) == greater(y, x, T2));
    if (x.ze() == y.ze()) CHECK(greater(x, y, T1) == greater(x, y, T2));
  }
}

TEST_CASE("approximate comparisons") {
  CHECK(greater_approx(DualReal(1, 1e-13), DualReal(0, 0), T2, 1e-12));
  CHECK_FALSE(greater_approx(DualReal(1e-13, 1), DualReal(0, 0), T2, 1e-12));
  CHECK(greater_equal_relaxed(DualReal(1 - 1e-13, 0), DualReal(1, 0), T1, 1e-12));
  CHECK_FALSE(greater_equal_relaxed(DualReal(1 - 1e-9, 0), DualReal(1, 0), T1, 1e-12));
  CHECK_THROWS_AS(order_kind_from_int(3), InvalidArgument);
}
