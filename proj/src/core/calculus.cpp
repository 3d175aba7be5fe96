#include "core/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "core/error.hpp"

namespace mixspec {

GridFunction2D fd_partial_x(const GridFunction2D& u) {
  const PeriodicGrid2D& g = u.grid();
  if (g.nx() < 3) fail(ErrorCode::precondition, "fd_partial_x: nx must be at least 3");
  GridFunction2D out(g);
  double inv2dx = 1.0 / (2.0 * g.dx());
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      out(i, j) = (u.wrap(i + 1, j) - u.wrap(i - 1, j)) * inv2dx;
    }
  }
  return out;
}

GridFunction2D fd_partial_y(const GridFunction2D& u) {
  const PeriodicGrid2D& g = u.grid();
  if (g.ny() < 3) fail(ErrorCode::precondition, "fd_partial_y: ny must be at least 3");
  GridFunction2D out(g);
  double inv2dy = 1.0 / (2.0 * g.dy());
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      out(i, j) = (u.wrap(i, j + 1) - u.wrap(i, j - 1)) * inv2dy;
    }
  }
  return out;
}

GridFunction2D fd_mixed(const GridFunction2D& u) {
  return fd_partial_y(fd_partial_x(u));
}

GridFunction2D primitive_y(const GridFunction2D& h) {
  const PeriodicGrid2D& g = h.grid();
  GridFunction2D out(g);
  double half_dy = 0.5 * g.dy();
  for (int i = 0; i < g.nx(); ++i) {
    out(i, 0) = 0.0;
    for (int j = 1; j < g.ny(); ++j) {
      out(i, j) = out(i, j - 1) + half_dy * (h(i, j - 1) + h(i, j));
    }
  }
  return out;
}

GridFunction2D primitive_xy(const GridFunction2D& h) {
  GridFunction2D a = primitive_y(h);
  const PeriodicGrid2D& g = h.grid();
  GridFunction2D out(g);
  double half_dx = 0.5 * g.dx();
  for (int j = 0; j < g.ny(); ++j) out(0, j) = 0.0;
  for (int i = 1; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      out(i, j) = out(i - 1, j) + half_dx * (a(i - 1, j) + a(i, j));
    }
  }
  return out;
}

SliceCheckResult primitive_slice_check(const AnalyticFunction2D& h, double x0,
                                       const PeriodicGrid2D& grid) {
  GridFunction2D u = sample(h, grid);
  GridFunction2D f = primitive_xy(u);
  GridFunction2D fx = fd_partial_x(f);

  long long nearest = std::llround(x0 / grid.dx());
  SliceCheckResult r;
  r.snap_distance = std::abs(x0 - static_cast<double>(nearest) * grid.dx());
  r.column = static_cast<int>(((nearest % grid.nx()) + grid.nx()) % grid.nx());

  double half_dy = 0.5 * grid.dy();
  double acc = 0.0;
  r.residual = std::abs(fx(r.column, 0) - acc);
  for (int j = 1; j < grid.ny(); ++j) {
    acc += half_dy * (u(r.column, j - 1) + u(r.column, j));
    r.residual = std::max(r.residual, std::abs(fx(r.column, j) - acc));
  }
  return r;
}

HolderResult holder_modulus(const std::vector<double>& g, double c, std::uint64_t seed) {
  if (c < 0.0) fail(ErrorCode::invalid_argument, "holder_modulus: c must be nonnegative");
  int npoints = static_cast<int>(g.size());
  if (npoints < 2) fail(ErrorCode::invalid_argument, "holder_modulus: need at least 2 samples");

  // Ratios use only the gap d = k-i through 1/sqrt(2pi d/N).
  std::vector<double> inv_sqrt_gap(npoints);
  for (int d = 1; d < npoints; ++d) {
    inv_sqrt_gap[d] = 1.0 / std::sqrt(kTwoPi * d / npoints);
  }

  double worst = 0.0;
  auto consider = [&](int i, int k) {
    worst = std::max(worst, std::abs(g[k] - g[i]) * inv_sqrt_gap[k - i]);
  };

  if (npoints <= 4096) {
    for (int i = 0; i < npoints; ++i) {
      for (int k = i + 1; k < npoints; ++k) consider(i, k);
    }
  } else {
    for (int i = 0; i + 1 < npoints; ++i) consider(i, i + 1);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, npoints - 1);
    const int kRandomPairs = 2'000'000;
    for (int t = 0; t < kRandomPairs; ++t) {
      int i = pick(rng), k = pick(rng);
      if (i == k) continue;
      consider(std::min(i, k), std::max(i, k));
    }
  }

  HolderResult r;
  r.worst_ratio = worst;
  r.pass = worst <= std::sqrt(c) * (1.0 + 1e-9);
  return r;
}

ContinuityScan joint_continuity_scan(const GridFunction2D& fx, double c, std::uint64_t seed) {
  if (c < 0.0) fail(ErrorCode::invalid_argument, "joint_continuity_scan: c must be nonnegative");
  const PeriodicGrid2D& g = fx.grid();

  ContinuityScan scan;
  scan.rows_total = g.ny();
  scan.rows_passed = 0;
  scan.worst_row_ratio = 0.0;
  scan.max_oscillation = 0.0;

  std::vector<double> row(g.nx());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) row[i] = fx(i, j);
    HolderResult hr = holder_modulus(row, c, seed);
    if (hr.pass) ++scan.rows_passed;
    scan.worst_row_ratio = std::max(scan.worst_row_ratio, hr.worst_ratio);
  }

  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      double lo = fx(i, j), hi = lo;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          double v = fx.wrap(i + di, j + dj);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      scan.max_oscillation = std::max(scan.max_oscillation, hi - lo);
    }
  }
  return scan;
}

}  // namespace mixspec
