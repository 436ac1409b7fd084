#pragma once

// Cell extrema kernels: for every partition cell, the min/max of both
// components of f over a lattice of sample points inside the cell rectangle.
//
// Cells are independent, so the parallel kernel is a plain OpenMP loop over
// cells; the serial kernel is the reference it is tested against.

#include <cstddef>
#include <limits>
#include <vector>

#include "dualcalc/function.hpp"

namespace dualcalc {

struct CellExtrema {
  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  double v_min = std::numeric_limits<double>::infinity();
  double v_max = -std::numeric_limits<double>::infinity();

  void include(DualReal value) noexcept;
  void include(const CellExtrema& other) noexcept;
  friend bool operator==(const CellExtrema&, const CellExtrema&) = default;
};

/// Sample coordinates for a run of cells. Cell i samples the tensor product of
/// re[i*stride .. i*stride + points - 1] and ze[i*stride .. i*stride + points - 1].
/// With stride == points - 1 neighbouring cells share their boundary coordinate.
/// An axis whose first and last coordinate in a cell coincide is sampled once.
struct CellLattice {
  std::vector<double> re;
  std::vector<double> ze;
  std::size_t cells = 0;
  std::size_t stride = 0;
  std::size_t points = 0;

  std::size_t samples_in_cell(std::size_t cell) const noexcept;
};

enum class Execution { Serial, Parallel };

std::vector<CellExtrema> cell_extrema_serial(const DualFunction& f, const CellLattice& lattice);
std::vector<CellExtrema> cell_extrema_parallel(const DualFunction& f, const CellLattice& lattice);
std::vector<CellExtrema> cell_extrema(const DualFunction& f, const CellLattice& lattice,
                                      Execution execution);

/// Worker threads the parallel kernel would use.
int kernel_threads() noexcept;

}  // namespace dualcalc
