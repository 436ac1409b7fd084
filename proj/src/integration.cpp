#include "dualcalc/integration.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dualcalc {

namespace {

constexpr double kChainSlack = 1e-12;

void require_grid(std::size_t grid) {
  if (grid < 2) throw InvalidArgument("grid must be at least 2");
}

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tolerance must be positive and finite");
}

// a + (n/count)(b - a) on one axis, landing exactly on b at the end.
double axis_point(double a, double b, std::size_t n, std::size_t count) {
  if (n == count) return b;
  return a + (static_cast<double>(n) / static_cast<double>(count)) * (b - a);
}

DualReal interpolate(DualReal a, DualReal b, std::size_t n, std::size_t count) {
  return DualReal(axis_point(a.re(), b.re(), n, count), axis_point(a.ze(), b.ze(), n, count));
}

TypedInterval reorder(const TypedInterval& interval, OrderKind theta) {
  if (interval.theta() == theta) return interval;
  return make_interval(interval.lower(), interval.upper(), theta);
}

// One lattice for the cells of an arbitrary partition: grid points per cell
// axis, neighbouring cells share their boundary coordinate.
CellLattice lattice_for(const Partition& p, std::size_t grid) {
  const std::size_t steps = grid - 1;
  CellLattice lat;
  lat.cells = p.cells();
  lat.stride = steps;
  lat.points = grid;
  lat.re.resize(lat.cells * steps + 1);
  lat.ze.resize(lat.cells * steps + 1);
  const auto& pts = p.points();
  for (std::size_t i = 0; i < lat.cells; ++i) {
    for (std::size_t j = 0; j < steps; ++j) {
      lat.re[i * steps + j] = axis_point(pts[i].re(), pts[i + 1].re(), j, steps);
      lat.ze[i * steps + j] = axis_point(pts[i].ze(), pts[i + 1].ze(), j, steps);
    }
  }
  lat.re.back() = pts.back().re();
  lat.ze.back() = pts.back().ze();
  return lat;
}

std::size_t total_samples(const CellLattice& lat) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < lat.cells; ++c) n += lat.samples_in_cell(c);
  return n;
}

IntegralEstimate make_estimate(const DarbouxSums& sums, double tol) {
  IntegralEstimate est;
  est.lower_integral = sums.lower;
  est.upper_integral = sums.upper;
  est.theta = sums.theta;
  est.gap_norm = norm(sums.upper - sums.lower);
  if (est.gap_norm <= tol) est.value = est.midpoint();
  return est;
}

}  // namespace

// ---- Partition -------------------------------------------------------------

Partition::Partition(TypedInterval interval, std::vector<DualReal> points)
    : interval_(interval), points_(std::move(points)) {
  if (points_.size() < 2) throw InvalidPartitionError("a partition needs at least two points");
  if (!(points_.front() == interval_.lower()) || !(points_.back() == interval_.upper())) {
    throw InvalidPartitionError("partition must start at " + to_string(interval_.lower()) +
                                " and end at " + to_string(interval_.upper()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!contains(interval_, points_[i])) {
      throw InvalidPartitionError("partition point " + to_string(points_[i]) +
                                  " lies outside the interval");
    }
    if (i > 0 && !less(points_[i - 1], points_[i], interval_.theta())) {
      throw InvalidPartitionError("partition points " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " are not strictly increasing");
    }
  }
}

DualReal Partition::delta(std::size_t cell) const { return points_.at(cell + 1) - points_.at(cell); }

Rect Partition::cell_rect(std::size_t cell) const {
  return Rect::spanned_by(points_.at(cell), points_.at(cell + 1));
}

Partition uniform_partition(const TypedInterval& interval, std::size_t n) {
  if (n == 0) throw InvalidArgument("a uniform partition needs at least one cell");
  std::vector<DualReal> pts;
  pts.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) pts.push_back(interpolate(interval.lower(), interval.upper(), i, n));
  return Partition(interval, std::move(pts));
}

Partition refine(const Partition& p) {
  const auto& old = p.points();
  std::vector<DualReal> pts;
  pts.reserve(2 * old.size() - 1);
  for (std::size_t i = 0; i + 1 < old.size(); ++i) {
    pts.push_back(old[i]);
    pts.push_back(DualReal(0.5 * (old[i].re() + old[i + 1].re()), 0.5 * (old[i].ze() + old[i + 1].ze())));
  }
  pts.push_back(old.back());
  return Partition(p.interval(), std::move(pts));
}

// ---- Darboux sums ----------------------------------------------------------

DarbouxSums assemble_sums(const Partition& p, const std::vector<CellExtrema>& extrema) {
  if (extrema.size() != p.cells()) throw InvalidArgument("one extrema entry per cell is required");
  DarbouxSums sums;
  sums.theta = p.interval().theta();
  sums.per_cell.reserve(p.cells());
  const bool type1 = sums.theta == OrderKind::Type1;
  for (std::size_t i = 0; i < p.cells(); ++i) {
    const CellExtrema& e = extrema[i];
    const DualReal dx = p.delta(i);
    const DualReal low = type1 ? DualReal(e.u_min, e.v_min) : DualReal(e.u_min, e.v_max);
    const DualReal high = type1 ? DualReal(e.u_max, e.v_max) : DualReal(e.u_max, e.v_min);
    sums.lower += low * dx;
    sums.upper += high * dx;
    sums.per_cell.push_back({p.cell_rect(i), dx, e});
  }
  return sums;
}

DarbouxSums darboux_sums(const DualFunction& f, const Partition& p, std::size_t grid,
                         Execution execution) {
  require_grid(grid);
  return assemble_sums(p, cell_extrema(f, lattice_for(p, grid), execution));
}

bool refinement_chain_holds(const DarbouxSums& coarse, const DarbouxSums& fine, double slack) {
  const OrderKind t = fine.theta;
  return greater_equal_relaxed(fine.lower, coarse.lower, t, slack) &&
         greater_equal_relaxed(fine.upper, fine.lower, t, slack) &&
         greater_equal_relaxed(coarse.upper, fine.upper, t, slack);
}

// ---- Refinement ladder -----------------------------------------------------

RefinementLadder::RefinementLadder(DualFunction f, TypedInterval interval, std::size_t grid,
                                   Execution execution)
    : f_(std::move(f)), interval_(interval), grid_(grid), execution_(execution) {
  require_grid(grid);
  const CellLattice lat = lattice(0);
  own_.push_back(cell_extrema(f_, lat, execution_));
  cells_sampled_ = lat.cells;
  evaluations_ = total_samples(lat);
}

CellLattice RefinementLadder::lattice(std::size_t level) const {
  if (level >= 40) throw InvalidArgument("refinement level too deep");
  const std::size_t cells = std::size_t{1} << level;
  const std::size_t steps = (grid_ - 1) * cells;
  const DualReal a = interval_.lower();
  const DualReal b = interval_.upper();
  CellLattice lat;
  lat.cells = cells;
  lat.stride = grid_ - 1;
  lat.points = grid_;
  lat.re.resize(steps + 1);
  lat.ze.resize(steps + 1);
  for (std::size_t n = 0; n <= steps; ++n) {
    lat.re[n] = axis_point(a.re(), b.re(), n, steps);
    lat.ze[n] = axis_point(a.ze(), b.ze(), n, steps);
  }
  return lat;
}

void RefinementLadder::descend() {
  const CellLattice lat = lattice(depth() + 1);
  own_.push_back(cell_extrema(f_, lat, execution_));
  cells_sampled_ += lat.cells;
  evaluations_ += total_samples(lat);
}

Partition RefinementLadder::partition(std::size_t level) const {
  return uniform_partition(interval_, std::size_t{1} << level);
}

std::vector<CellExtrema> RefinementLadder::aggregated(std::size_t level) const {
  if (level > depth()) throw InvalidArgument("level has not been sampled yet");
  std::vector<CellExtrema> acc = own_[depth()];
  for (std::size_t k = depth(); k-- > level;) {
    std::vector<CellExtrema> up = own_[k];
    for (std::size_t i = 0; i < up.size(); ++i) {
      up[i].include(acc[2 * i]);
      up[i].include(acc[2 * i + 1]);
    }
    acc = std::move(up);
  }
  return acc;
}

DarbouxSums RefinementLadder::sums(std::size_t level) const {
  return assemble_sums(partition(level), aggregated(level));
}

// ---- Estimation ------------------------------------------------------------

DualReal IntegralEstimate::midpoint() const {
  return DualReal(0.5 * (lower_integral.re() + upper_integral.re()),
                  0.5 * (lower_integral.ze() + upper_integral.ze()));
}

MaxDepthExceeded::MaxDepthExceeded(IntegralEstimate estimate)
    : Error(ErrorCode::max_depth_exceeded,
            "tolerance not reached after " + std::to_string(estimate.depth) +
                " refinement levels (gap " + format_real(estimate.gap_norm) + ")"),
      estimate_(std::move(estimate)) {}

IntegralEstimate integrate(const DualFunction& f, const TypedInterval& interval, OrderKind theta,
                           const IntegrationOptions& options) {
  require_tolerance(options.tol);
  require_grid(options.grid);
  RefinementLadder ladder(f, reorder(interval, theta), options.grid, options.execution);

  bool chain_ok = true;
  DarbouxSums sums = ladder.sums(0);
  while (norm(sums.upper - sums.lower) > options.tol && ladder.depth() < options.max_depth) {
    ladder.descend();
    sums = ladder.sums(ladder.depth());
    if (!refinement_chain_holds(ladder.sums(ladder.depth() - 1), sums, kChainSlack)) chain_ok = false;
  }

  IntegralEstimate est = make_estimate(sums, options.tol);
  est.depth = ladder.depth();
  est.cells_sampled = ladder.cells_sampled();
  est.evaluations = ladder.evaluations();
  est.chain_verified = chain_ok;
  return est;
}

IntegralEstimate estimate_integral(const DualFunction& f, const TypedInterval& interval,
                                   OrderKind theta, double tol, std::size_t max_depth,
                                   std::size_t grid) {
  IntegrationOptions options;
  options.tol = tol;
  options.max_depth = max_depth;
  options.grid = grid;
  IntegralEstimate est = integrate(f, interval, theta, options);
  if (!est.converged()) throw MaxDepthExceeded(std::move(est));
  return est;
}

IntegralEstimate integrate_at_level(const DualFunction& f, const TypedInterval& interval,
                                    OrderKind theta, std::size_t level, std::size_t grid,
                                    Execution execution) {
  require_grid(grid);
  const Partition p = uniform_partition(reorder(interval, theta), std::size_t{1} << level);
  const DarbouxSums sums = darboux_sums(f, p, grid, execution);
  IntegralEstimate est = make_estimate(sums, 0.0);
  est.value.reset();
  est.depth = level;
  est.cells_sampled = p.cells();
  est.evaluations = total_samples(lattice_for(p, grid));
  return est;
}

std::optional<Partition> check_integrability(const DualFunction& f, const TypedInterval& interval,
                                             OrderKind theta, DualReal eps, std::size_t max_depth,
                                             std::size_t grid) {
  if (!greater(eps, DualReal(), theta)) {
    throw InvalidEpsilonError("eps " + to_string(eps) + " is not type " +
                              std::to_string(to_int(theta)) + " positive");
  }
  if (eps.re() * eps.ze() == 0.0) {
    throw InvalidEpsilonError("eps " + to_string(eps) + " needs nonzero Re and Ze parts");
  }
  RefinementLadder ladder(f, reorder(interval, theta), grid);
  for (;;) {
    const DarbouxSums sums = ladder.sums(ladder.depth());
    if (less(sums.upper - sums.lower, eps, theta)) return ladder.partition(ladder.depth());
    if (ladder.depth() >= max_depth) return std::nullopt;
    ladder.descend();
  }
}

// ---- Algebraic laws --------------------------------------------------------

LinearityReport verify_linearity(const DualFunction& f, const DualFunction& g, DualReal k,
                                 const TypedInterval& interval, OrderKind theta, double tol,
                                 const IntegrationOptions& options) {
  require_tolerance(tol);
  IntegrationOptions quarter = options;
  quarter.tol = tol / 4.0;
  auto integral = [&](const DualFunction& h) { return integrate(h, interval, theta, quarter).midpoint(); };

  LinearityReport r;
  r.integral_f = integral(f);
  r.integral_g = integral(g);
  r.sum_residual = norm(integral(f + g) - r.integral_f - r.integral_g);
  r.scale_residual = norm(integral(k * f) - k * r.integral_f);
  r.pass = r.sum_residual <= tol && r.scale_residual <= tol * (1.0 + norm(k));
  return r;
}

AdditivityReport verify_additivity(const DualFunction& f, DualReal a, DualReal c, DualReal b,
                                   OrderKind theta, double tol, const IntegrationOptions& options) {
  require_tolerance(tol);
  const TypedInterval whole = make_interval(a, b, theta);
  const TypedInterval left = make_interval(a, c, theta);
  const TypedInterval right = make_interval(c, b, theta);
  IntegrationOptions opts = options;
  opts.tol = tol;

  AdditivityReport r;
  r.whole = integrate(f, whole, theta, opts).midpoint();
  r.left = integrate(f, left, theta, opts).midpoint();
  r.right = integrate(f, right, theta, opts).midpoint();
  r.residual = norm(r.whole - r.left - r.right);
  r.pass = r.residual <= tol;
  return r;
}

MonotonicityReport verify_monotonicity(const DualFunction& f, const DualFunction& g,
                                       const TypedInterval& interval, OrderKind theta, double tol,
                                       const IntegrationOptions& options) {
  require_tolerance(tol);
  require_grid(options.grid);
  const TypedInterval iv = reorder(interval, theta);
  const std::size_t level = std::min<std::size_t>(options.max_depth, 4);
  const Partition p = uniform_partition(iv, std::size_t{1} << level);
  const CellLattice lat = lattice_for(p, options.grid);
  for (double x1 : lat.re) {
    for (double x2 : lat.ze) {
      const DualReal x(x1, x2);
      if (!iv.rectangle().contains(x)) continue;
      if (!greater_equal(f(x), g(x), theta)) {
        throw PreconditionFailed("f >= g fails at " + to_string(x) + ": f = " + to_string(f(x)) +
                                 ", g = " + to_string(g(x)));
      }
    }
  }

  IntegrationOptions opts = options;
  opts.tol = tol;
  MonotonicityReport r;
  r.integral_f = integrate(f, iv, theta, opts).midpoint();
  r.integral_g = integrate(g, iv, theta, opts).midpoint();
  r.pass = greater_equal_relaxed(r.integral_f, r.integral_g, theta, tol);
  return r;
}

// ---- Fundamental theorem ---------------------------------------------------

FtcPart1Report verify_ftc_part1(const DualFunction& f, const TypedInterval& interval,
                                OrderKind theta, DualReal c, double h, double tol,
                                const FtcPart1Options& options) {
  require_tolerance(tol);
  if (options.samples == 0) throw InvalidArgument("samples must be at least 1");
  const TypedInterval iv = reorder(interval, theta);
  const DualReal a = iv.lower();
  if (!less(a, c, theta) || !less(c, iv.upper(), theta)) {
    throw PreconditionFailed("point " + to_string(c) + " is not interior to the interval");
  }
  auto F = [&](DualReal x) {
    return integrate_at_level(f, make_interval(a, x, theta), theta, options.depth, options.grid,
                              options.execution)
        .midpoint();
  };

  FtcPart1Report r;
  r.f_at_c = f(c);
  const DualReal Fc = F(c);
  const Neighborhood ball = make_neighborhood(c, h, theta, /*deleted=*/true);
  const Rect rect = iv.rectangle();
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    DualReal x = sample_point(ball, rng);
    // A flat rectangle meets the ball only along a segment; project onto it.
    if (rect.ze_min == rect.ze_max) x = DualReal(x.re(), c.ze());
    if (rect.re_min == rect.re_max) x = DualReal(c.re(), x.ze());
    const DualReal step = x - c;
    if (classify(step) != AlgebraClass::Invertible) {
      ++r.skipped_zero_divisor;
      continue;
    }
    if (!less(a, x, theta) || !contains(iv, x)) {
      ++r.skipped_outside;
      continue;
    }
    const DualReal quotient = (F(x) - Fc) * inverse(step);
    r.worst_error = std::max(r.worst_error, norm(quotient - r.f_at_c));
    ++r.quotients;
  }
  r.pass = r.quotients > 0 && r.worst_error <= tol;
  return r;
}

FtcPart2Report verify_ftc_part2(const Expr& f, const TypedInterval& interval, OrderKind theta,
                                double tol, const IntegrationOptions& options) {
  require_tolerance(tol);
  IntegrationOptions opts = options;
  opts.tol = tol;
  const TypedInterval iv = reorder(interval, theta);

  FtcPart2Report r;
  r.expected = eval_lifted(f, iv.upper()) - eval_lifted(f, iv.lower());
  r.estimate = integrate(DualFunction(symbolic_derivative(f)), iv, theta, opts);
  r.residual = norm(r.estimate.midpoint() - r.expected);
  r.pass = r.residual <= tol;
  return r;
}

// ---- Random chains ---------------------------------------------------------

ChainProbeReport probe_random_chains(const DualFunction& f, const TypedInterval& interval,
                                     const IntegralEstimate& estimate,
                                     const ChainProbeOptions& options) {
  if (options.cells == 0) throw InvalidArgument("a chain needs at least one cell");
  const TypedInterval iv = reorder(interval, estimate.theta);
  const OrderKind theta = iv.theta();
  const DualReal a = iv.lower();
  const DualReal b = iv.upper();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ChainProbeReport r;
  std::vector<double> s(options.cells - 1);
  std::vector<double> t(options.cells - 1);
  for (std::size_t chain = 0; chain < options.chains; ++chain) {
    for (double& v : s) v = unit(rng);
    for (double& v : t) v = unit(rng);
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());

    std::vector<DualReal> pts;
    pts.reserve(options.cells + 1);
    pts.push_back(a);
    for (std::size_t i = 0; i + 1 < options.cells; ++i) {
      pts.emplace_back(a.re() + s[i] * (b.re() - a.re()), a.ze() + t[i] * (b.ze() - a.ze()));
    }
    pts.push_back(b);
    // Ties from the generator would break the strict chain; drop them.
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const DarbouxSums sums = darboux_sums(f, Partition(iv, std::move(pts)), options.grid);
    ++r.chains;
    if (greater_equal(sums.lower, estimate.lower_integral, theta)) {
      const double excess = norm(sums.lower - estimate.lower_integral);
      r.max_lower_excess = std::max(r.max_lower_excess, excess);
      if (excess > options.tol) ++r.lower_beaten;
    }
    if (greater_equal(estimate.upper_integral, sums.upper, theta)) {
      const double excess = norm(estimate.upper_integral - sums.upper);
      r.max_upper_excess = std::max(r.max_upper_excess, excess);
      if (excess > options.tol) ++r.upper_beaten;
    }
  }
  return r;
}

}  // namespace dualcalc
