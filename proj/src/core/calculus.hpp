#pragma once

#include <cstdint>
#include <vector>

#include "core/grid.hpp"

namespace mixspec {

struct SliceCheckResult {
  double residual;       // max abs residual over y-nodes
  double snap_distance;  // |x0 - snapped column coordinate|
  int column;            // index of the snapped column
};

struct HolderResult {
  double worst_ratio;
  bool pass;
};

struct ContinuityScan {
  int rows_total;
  int rows_passed;
  double worst_row_ratio;
  double max_oscillation;  // max over nodes of (max - min) on a 3x3 periodic neighborhood
};

// Central periodic differences, second order. Pre: nx >= 3 (resp. ny >= 3).
GridFunction2D fd_partial_x(const GridFunction2D& u);
GridFunction2D fd_partial_y(const GridFunction2D& u);

// Identical to fd_partial_y(fd_partial_x(u)). Pre: nx, ny >= 3.
GridFunction2D fd_mixed(const GridFunction2D& u);

// Cumulative trapezoid along y from node 0: F(i,0) = 0. Pre: ny >= 2.
GridFunction2D primitive_y(const GridFunction2D& h);

// Cumulative trapezoid in x applied to primitive_y: G(0,.) = G(.,0) = 0.
GridFunction2D primitive_xy(const GridFunction2D& h);

// Builds f = primitive_xy(sample(h)), differences f in x at the column nearest
// x0, and compares against the cumulative trapezoid of h(x_col, .).
SliceCheckResult primitive_slice_check(const AnalyticFunction2D& h, double x0,
                                       const PeriodicGrid2D& grid);

// Checks |g(x1)-g(x0)| <= sqrt(c*(x1-x0)) over sample pairs; samples sit at
// x_i = 2pi i / size. All pairs up to 4096 samples, adjacent plus seeded
// random pairs beyond that. pass = worst_ratio <= sqrt(c)*(1+1e-9).
HolderResult holder_modulus(const std::vector<double>& g, double c, std::uint64_t seed = 0);

// Per-row holder_modulus against c plus max 3x3-neighborhood oscillation.
ContinuityScan joint_continuity_scan(const GridFunction2D& fx, double c,
                                     std::uint64_t seed = 0);

}  // namespace mixspec
