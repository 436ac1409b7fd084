#pragma once

// Dual real numbers x = re + ze * eps with eps * eps = 0.

#include <iosfwd>
#include <string>
#include <string_view>

namespace dualcalc {

class DualReal {
 public:
  constexpr DualReal() noexcept = default;

  /// Throws NonFiniteError if either part is NaN or infinite.
  DualReal(double re, double ze = 0.0);

  static constexpr DualReal one() noexcept { return DualReal(1.0, 0.0, Unchecked{}); }
  static constexpr DualReal eps() noexcept { return DualReal(0.0, 1.0, Unchecked{}); }

  constexpr double re() const noexcept { return re_; }
  constexpr double ze() const noexcept { return ze_; }

  friend constexpr bool operator==(const DualReal& x, const DualReal& y) noexcept {
    return x.re_ == y.re_ && x.ze_ == y.ze_;
  }

 private:
  struct Unchecked {};
  constexpr DualReal(double re, double ze, Unchecked) noexcept : re_(re), ze_(ze) {}

  double re_ = 0.0;
  double ze_ = 0.0;
};

enum class AlgebraClass { Zero, ZeroDivisor, Invertible };

DualReal add(DualReal x, DualReal y);
DualReal sub(DualReal x, DualReal y);
DualReal mul(DualReal x, DualReal y);
DualReal negate(DualReal x) noexcept;
/// Real scalar times dual number.
DualReal scale(double a, DualReal x);
/// 1/Re x - (Ze x)/(Re x)^2 eps. Throws ZeroDivisorError when Re x == 0.
DualReal inverse(DualReal x);
/// x * inverse(y).
DualReal divide(DualReal x, DualReal y);

/// sqrt(2 (Re x)^2 + (Ze x)^2)
double norm(DualReal x) noexcept;
AlgebraClass classify(DualReal x) noexcept;

inline DualReal operator+(DualReal x, DualReal y) { return add(x, y); }
inline DualReal operator-(DualReal x, DualReal y) { return sub(x, y); }
inline DualReal operator*(DualReal x, DualReal y) { return mul(x, y); }
inline DualReal operator/(DualReal x, DualReal y) { return divide(x, y); }
inline DualReal operator-(DualReal x) noexcept { return negate(x); }
inline DualReal operator*(double a, DualReal x) { return scale(a, x); }
inline DualReal& operator+=(DualReal& x, DualReal y) { return x = add(x, y); }

// Literal format: `A`, `A+Beps`, `A-Beps`, `Beps` (also `eps`, `-eps`).
// Printing uses the shortest representation that reads back to the same double.

std::string to_string(DualReal x);
/// Throws SyntaxError on malformed text.
DualReal parse_dual(std::string_view text);
/// Shortest round-trip decimal form of a finite double; -0 prints as 0.
std::string format_real(double value);

std::ostream& operator<<(std::ostream& os, DualReal x);
std::string_view to_string(AlgebraClass c) noexcept;

}  // namespace dualcalc
