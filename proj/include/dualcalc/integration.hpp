#pragma once

// Type-theta Darboux integration over dual intervals.
//
// For a partition a = x(0) <_theta x(1) <_theta ... <_theta x(n) = b with cells
// [x(i-1), x(i)]_theta and dual lengths dx(i) = x(i) - x(i-1):
//
//   theta = 1:  U = sum (sup u + sup v eps) dx(i)    L = sum (inf u + inf v eps) dx(i)
//   theta = 2:  U = sum (sup u + inf v eps) dx(i)    L = sum (inf u + sup v eps) dx(i)
//
// with full dual multiplication. Cell sup/inf are approximated by sampling a
// lattice that always includes the cell corners.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dualcalc/dual.hpp"
#include "dualcalc/errors.hpp"
#include "dualcalc/expr.hpp"
#include "dualcalc/function.hpp"
#include "dualcalc/kernels.hpp"
#include "dualcalc/order.hpp"

namespace dualcalc {

inline constexpr std::size_t kDefaultGrid = 8;
inline constexpr std::size_t kDefaultMaxDepth = 12;

class Partition {
 public:
  /// Throws InvalidPartitionError unless points run from a to b, stay inside the
  /// interval and are strictly increasing in the interval's order.
  Partition(TypedInterval interval, std::vector<DualReal> points);

  const TypedInterval& interval() const noexcept { return interval_; }
  const std::vector<DualReal>& points() const noexcept { return points_; }
  std::size_t cells() const noexcept { return points_.size() - 1; }
  /// x(i+1) - x(i) for cell i (0-based).
  DualReal delta(std::size_t cell) const;
  Rect cell_rect(std::size_t cell) const;

 private:
  TypedInterval interval_;
  std::vector<DualReal> points_;
};

/// x(i) = a + (i/n)(b - a), with x(n) = b exactly.
Partition uniform_partition(const TypedInterval& interval, std::size_t n);
/// Inserts the midpoint of every cell.
Partition refine(const Partition& p);

struct CellSummary {
  Rect rect;
  DualReal delta;
  CellExtrema extrema;
};

struct DarbouxSums {
  DualReal lower;
  DualReal upper;
  OrderKind theta = OrderKind::Type1;
  std::vector<CellSummary> per_cell;
};

/// Sums over P with a grid x grid lattice per cell (grid >= 2). The sup/inf
/// swap follows the partition's interval order.
DarbouxSums darboux_sums(const DualFunction& f, const Partition& p, std::size_t grid = kDefaultGrid,
                         Execution execution = Execution::Parallel);

/// Assembles L and U from per-cell extrema (one entry per cell of p).
DarbouxSums assemble_sums(const Partition& p, const std::vector<CellExtrema>& extrema);

/// coarse.lower <= fine.lower <= fine.upper <= coarse.upper in the sums' order,
/// each comparison relaxed by `slack` per component.
bool refinement_chain_holds(const DarbouxSums& coarse, const DarbouxSums& fine, double slack);

/// Uniform partitions with 1, 2, 4, ... cells sampled on one global lattice of
/// (grid - 1) * 2^level steps per axis, so each level's sample points contain
/// the previous level's. Sums at a level combine the level's own samples with
/// those of every deeper level already sampled inside the same cell, which
/// keeps lower sums nondecreasing and upper sums nonincreasing along the ladder.
class RefinementLadder {
 public:
  RefinementLadder(DualFunction f, TypedInterval interval, std::size_t grid = kDefaultGrid,
                   Execution execution = Execution::Parallel);

  /// Deepest level sampled so far (0 after construction).
  std::size_t depth() const noexcept { return own_.size() - 1; }
  /// Samples the next level.
  void descend();

  const TypedInterval& interval() const noexcept { return interval_; }
  /// Equal to uniform_partition(interval, 2^level).
  Partition partition(std::size_t level) const;
  DarbouxSums sums(std::size_t level) const;

  std::size_t cells_sampled() const noexcept { return cells_sampled_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  CellLattice lattice(std::size_t level) const;
  std::vector<CellExtrema> aggregated(std::size_t level) const;

  DualFunction f_;
  TypedInterval interval_;
  std::size_t grid_;
  Execution execution_;
  std::vector<std::vector<CellExtrema>> own_;
  std::size_t cells_sampled_ = 0;
  std::size_t evaluations_ = 0;
};

struct IntegrationOptions {
  double tol = 1e-3;
  std::size_t max_depth = kDefaultMaxDepth;
  std::size_t grid = kDefaultGrid;
  Execution execution = Execution::Parallel;
};

struct IntegralEstimate {
  DualReal lower_integral;
  DualReal upper_integral;
  std::optional<DualReal> value;  // present iff gap_norm <= tol
  double gap_norm = 0.0;          // norm(upper - lower)
  std::size_t depth = 0;          // refinement levels used
  std::size_t cells_sampled = 0;  // cells over all levels
  std::size_t evaluations = 0;    // function evaluations over all levels
  OrderKind theta = OrderKind::Type1;
  bool chain_verified = true;  // refinement chain held at every step

  bool converged() const noexcept { return value.has_value(); }
  /// (lower + upper) / 2, whether or not the estimate converged.
  DualReal midpoint() const;
};

class MaxDepthExceeded : public Error {
 public:
  explicit MaxDepthExceeded(IntegralEstimate estimate);
  const IntegralEstimate& estimate() const noexcept { return estimate_; }

 private:
  IntegralEstimate estimate_;
};

/// Refines from the single-cell partition until norm(U - L) <= tol or
/// max_depth is reached. Never throws MaxDepthExceeded; check converged().
/// The interval is re-read in order `theta` (InvalidIntervalError if a <_theta b fails).
IntegralEstimate integrate(const DualFunction& f, const TypedInterval& interval, OrderKind theta,
                           const IntegrationOptions& options = {});

/// As integrate, but throws MaxDepthExceeded (carrying the estimate) when the
/// tolerance was not met.
IntegralEstimate estimate_integral(const DualFunction& f, const TypedInterval& interval,
                                   OrderKind theta, double tol,
                                   std::size_t max_depth = kDefaultMaxDepth,
                                   std::size_t grid = kDefaultGrid);

/// Midpoint of L and U on the uniform partition with 2^level cells, sampled directly.
IntegralEstimate integrate_at_level(const DualFunction& f, const TypedInterval& interval,
                                    OrderKind theta, std::size_t level,
                                    std::size_t grid = kDefaultGrid,
                                    Execution execution = Execution::Parallel);

/// First uniform 2^k partition with U - L <_theta eps, or nullopt past max_depth.
/// Throws InvalidEpsilonError unless eps >_theta 0 and Re(eps) Ze(eps) != 0.
std::optional<Partition> check_integrability(const DualFunction& f, const TypedInterval& interval,
                                             OrderKind theta, DualReal eps,
                                             std::size_t max_depth = kDefaultMaxDepth,
                                             std::size_t grid = kDefaultGrid);

// The algebraic checks below compare integral values through the midpoint of
// each estimate, which is accurate to second order in the cell size even when
// the Darboux gap itself has not reached the requested tolerance.

struct LinearityReport {
  bool pass = false;
  double sum_residual = 0.0;    // norm(int(f+g) - int f - int g)
  double scale_residual = 0.0;  // norm(int(kf) - k int f)
  DualReal integral_f;
  DualReal integral_g;
};

struct AdditivityReport {
  bool pass = false;
  double residual = 0.0;  // norm(int_a^b - int_a^c - int_c^b)
  DualReal whole;
  DualReal left;
  DualReal right;
};

struct MonotonicityReport {
  bool pass = false;
  DualReal integral_f;
  DualReal integral_g;
};

/// Estimates use tolerance tol / 4.
LinearityReport verify_linearity(const DualFunction& f, const DualFunction& g, DualReal k,
                                 const TypedInterval& interval, OrderKind theta, double tol,
                                 const IntegrationOptions& options = {});

/// Throws InvalidIntervalError unless a <_theta c <_theta b.
AdditivityReport verify_additivity(const DualFunction& f, DualReal a, DualReal c, DualReal b,
                                   OrderKind theta, double tol,
                                   const IntegrationOptions& options = {});

/// Throws PreconditionFailed if f >=_theta g fails anywhere on the level-4
/// sampling lattice (or the max_depth lattice when that is shallower).
MonotonicityReport verify_monotonicity(const DualFunction& f, const DualFunction& g,
                                       const TypedInterval& interval, OrderKind theta, double tol,
                                       const IntegrationOptions& options = {});

struct FtcPart1Options {
  std::size_t samples = 16;
  std::uint64_t seed = 0;
  std::size_t depth = 10;  // F(x) is the midpoint at this fixed level
  std::size_t grid = kDefaultGrid;
  Execution execution = Execution::Parallel;
};

struct FtcPart1Report {
  bool pass = false;
  double worst_error = 0.0;  // max norm(quotient - f(c))
  DualReal f_at_c;
  std::size_t quotients = 0;
  std::size_t skipped_zero_divisor = 0;  // x - c not invertible
  std::size_t skipped_outside = 0;       // x outside (a, b]_theta
};

/// F(x) = int_a^x f d_theta x; checks (F(x) - F(c)) (x - c)^-1 against f(c) for
/// x drawn from the deleted type-theta neighborhood of c with radius h. When the
/// interval is flat along an axis, samples are moved onto it along that axis.
/// Throws PreconditionFailed unless a <_theta c <_theta b.
FtcPart1Report verify_ftc_part1(const DualFunction& f, const TypedInterval& interval,
                                OrderKind theta, DualReal c, double h, double tol,
                                const FtcPart1Options& options = {});

struct FtcPart2Report {
  bool pass = false;
  double residual = 0.0;  // norm(midpoint - (f(b) - f(a)))
  DualReal expected;
  IntegralEstimate estimate;
};

/// Integrates the symbolic derivative of f and compares with f(b) - f(a).
FtcPart2Report verify_ftc_part2(const Expr& f, const TypedInterval& interval, OrderKind theta,
                                double tol, const IntegrationOptions& options = {});

struct ChainProbeOptions {
  std::size_t chains = 16;
  std::size_t cells = 64;
  std::size_t grid = kDefaultGrid;
  std::uint64_t seed = 0;
  double tol = 1e-6;
};

struct ChainProbeReport {
  std::size_t chains = 0;
  std::size_t lower_beaten = 0;  // chains whose lower sum exceeds the estimate's by more than tol
  std::size_t upper_beaten = 0;  // chains whose upper sum undercuts the estimate's by more than tol
  double max_lower_excess = 0.0;
  double max_upper_excess = 0.0;
};

/// Samples random theta-increasing chains from a to b (Re and Ze breakpoints
/// drawn independently) and compares their sums with the straight-chain estimate.
ChainProbeReport probe_random_chains(const DualFunction& f, const TypedInterval& interval,
                                     const IntegralEstimate& estimate,
                                     const ChainProbeOptions& options = {});

}  // namespace dualcalc
