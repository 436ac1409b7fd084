#pragma once

// The two generalized order relations on dual reals, type-theta intervals and
// epsilon-neighborhoods.
//
// Type 1: x > y  iff  (Re x > Re y and Ze x >= Ze y) or (Re x == Re y and Ze x > Ze y)
// Type 2: x > y  iff  (Re x > Re y and Ze y >= Ze x) or (Re x == Re y and Ze y > Ze x)
//
// Equivalently x >=_1 y is the componentwise order and x >=_2 y flips the Ze axis.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "dualcalc/dual.hpp"

namespace dualcalc {

enum class OrderKind { Type1 = 1, Type2 = 2 };

/// Throws InvalidArgument for anything other than 1 or 2.
OrderKind order_kind_from_int(int theta);
constexpr int to_int(OrderKind theta) noexcept { return static_cast<int>(theta); }

bool greater(DualReal x, DualReal y, OrderKind theta) noexcept;
inline bool less(DualReal x, DualReal y, OrderKind theta) noexcept { return greater(y, x, theta); }
bool greater_equal(DualReal x, DualReal y, OrderKind theta) noexcept;
inline bool less_equal(DualReal x, DualReal y, OrderKind theta) noexcept {
  return greater_equal(y, x, theta);
}
/// x >=_theta y or y >=_theta x.
bool comparable(DualReal x, DualReal y, OrderKind theta) noexcept;

/// Strict order where parts closer than `tol` count as tied.
bool greater_approx(DualReal x, DualReal y, OrderKind theta, double tol) noexcept;
/// x >=_theta y with each component comparison relaxed by `slack`.
bool greater_equal_relaxed(DualReal x, DualReal y, OrderKind theta, double slack) noexcept;

/// Every relation from {x >_1 y, x <_1 y, x >_2 y, x <_2 y, x == y} that holds.
/// Never empty; several flags may hold at once.
class Relation {
 public:
  enum Flag : std::uint8_t {
    Greater1 = 1U << 0,
    Less1 = 1U << 1,
    Greater2 = 1U << 2,
    Less2 = 1U << 3,
    Equal = 1U << 4,
  };

  constexpr Relation() noexcept = default;
  constexpr explicit Relation(std::uint8_t bits) noexcept : bits_(bits) {}

  constexpr bool has(Flag f) const noexcept { return (bits_ & f) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr Relation with(Flag f) const noexcept { return Relation(bits_ | f); }

  friend constexpr bool operator==(Relation, Relation) noexcept = default;

 private:
  std::uint8_t bits_ = 0;
};

Relation classify_pair(DualReal x, DualReal y) noexcept;
/// e.g. "less (type 1); greater (type 2)" or "equal".
std::string describe(Relation r);

/// Axis-aligned rectangle [re_min, re_max] x [ze_min, ze_max].
struct Rect {
  double re_min = 0.0;
  double re_max = 0.0;
  double ze_min = 0.0;
  double ze_max = 0.0;

  bool contains(DualReal x) const noexcept {
    return re_min <= x.re() && x.re() <= re_max && ze_min <= x.ze() && x.ze() <= ze_max;
  }
  static Rect spanned_by(DualReal p, DualReal q) noexcept;
};

/// The closed type-theta interval [a, b]_theta with a <_theta b. As a point set it
/// is the rectangle spanned by the endpoints.
class TypedInterval {
 public:
  DualReal lower() const noexcept { return a_; }
  DualReal upper() const noexcept { return b_; }
  OrderKind theta() const noexcept { return theta_; }
  /// b - a
  DualReal length() const { return b_ - a_; }
  Rect rectangle() const noexcept { return Rect::spanned_by(a_, b_); }

 private:
  friend TypedInterval make_interval(DualReal a, DualReal b, OrderKind theta);
  TypedInterval(DualReal a, DualReal b, OrderKind theta) noexcept : a_(a), b_(b), theta_(theta) {}

  DualReal a_;
  DualReal b_;
  OrderKind theta_ = OrderKind::Type1;
};

/// Throws InvalidIntervalError unless a <_theta b.
TypedInterval make_interval(DualReal a, DualReal b, OrderKind theta);
/// a <=_theta x <=_theta b
bool contains(const TypedInterval& interval, DualReal x) noexcept;

/// N(c; r), N*(c; r), N_theta(c; r) and N_theta*(c; r).
struct Neighborhood {
  DualReal center;
  double radius = 1.0;
  std::optional<OrderKind> theta;
  bool deleted = false;
};

/// Throws InvalidArgument unless radius > 0 and finite.
Neighborhood make_neighborhood(DualReal center, double radius,
                               std::optional<OrderKind> theta = std::nullopt,
                               bool deleted = false);
bool in_neighborhood(const Neighborhood& n, DualReal x) noexcept;

/// Uniform draw from the neighborhood: rejection from the bounding box of the
/// norm ball, then the theta filter and center exclusion when requested.
DualReal sample_point(const Neighborhood& n, std::mt19937_64& rng);

}  // namespace dualcalc
