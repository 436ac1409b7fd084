#include "dualcalc/kernels.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dualcalc {

void CellExtrema::include(DualReal value) noexcept {
  u_min = std::min(u_min, value.re());
  u_max = std::max(u_max, value.re());
  v_min = std::min(v_min, value.ze());
  v_max = std::max(v_max, value.ze());
}

void CellExtrema::include(const CellExtrema& other) noexcept {
  u_min = std::min(u_min, other.u_min);
  u_max = std::max(u_max, other.u_max);
  v_min = std::min(v_min, other.v_min);
  v_max = std::max(v_max, other.v_max);
}

namespace {

std::size_t axis_count(const std::vector<double>& coords, std::size_t first, std::size_t points) {
  return coords[first] == coords[first + points - 1] ? 1 : points;
}

CellExtrema sample_cell(const DualFunction& f, const CellLattice& lattice, std::size_t cell) {
  const std::size_t first = cell * lattice.stride;
  const std::size_t n_re = axis_count(lattice.re, first, lattice.points);
  const std::size_t n_ze = axis_count(lattice.ze, first, lattice.points);
  CellExtrema ext;
  for (std::size_t i = 0; i < n_re; ++i) {
    for (std::size_t j = 0; j < n_ze; ++j) {
      ext.include(f(DualReal(lattice.re[first + i], lattice.ze[first + j])));
    }
  }
  return ext;
}

}  // namespace

std::size_t CellLattice::samples_in_cell(std::size_t cell) const noexcept {
  const std::size_t first = cell * stride;
  return axis_count(re, first, points) * axis_count(ze, first, points);
}

std::vector<CellExtrema> cell_extrema_serial(const DualFunction& f, const CellLattice& lattice) {
  std::vector<CellExtrema> out(lattice.cells);
  for (std::size_t c = 0; c < lattice.cells; ++c) out[c] = sample_cell(f, lattice, c);
  return out;
}

std::vector<CellExtrema> cell_extrema_parallel(const DualFunction& f, const CellLattice& lattice) {
  std::vector<CellExtrema> out(lattice.cells);
  const auto n = static_cast<long long>(lattice.cells);
  // Exceptions may not leave the parallel region; keep the one from the lowest
  // failing cell so the reported error matches the serial kernel.
  long long failed_cell = n;
  std::exception_ptr failure;

#pragma omp parallel for schedule(static)
  for (long long c = 0; c < n; ++c) {
    try {
      out[static_cast<std::size_t>(c)] = sample_cell(f, lattice, static_cast<std::size_t>(c));
    } catch (...) {
#pragma omp critical(dualcalc_kernel_failure)
      {
        if (c < failed_cell) {
          failed_cell = c;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<CellExtrema> cell_extrema(const DualFunction& f, const CellLattice& lattice,
                                      Execution execution) {
  return execution == Execution::Parallel ? cell_extrema_parallel(f, lattice)
                                          : cell_extrema_serial(f, lattice);
}

int kernel_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dualcalc
