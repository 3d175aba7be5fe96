#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mixspec {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0,2pi)^2. The right/top boundary is excluded:
/// node (i,j) = (2*pi*i/nx, 2*pi*j/ny), identified periodically with 0.
class PeriodicGrid2D {
 public:
  PeriodicGrid2D(int nx, int ny);  // nx, ny >= 2

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return kTwoPi / nx_; }
  double dy() const { return kTwoPi / ny_; }
  double x(int i) const { return kTwoPi * i / nx_; }
  double y(int j) const { return kTwoPi * j / ny_; }

  bool operator==(const PeriodicGrid2D&) const = default;

 private:
  int nx_, ny_;
};

PeriodicGrid2D make_grid(int nx, int ny);

/// Real-valued samples on a PeriodicGrid2D, stored row-major in i then j.
class GridFunction2D {
 public:
  GridFunction2D(PeriodicGrid2D grid, double fill = 0.0);

  const PeriodicGrid2D& grid() const { return grid_; }
  int nx() const { return grid_.nx(); }
  int ny() const { return grid_.ny(); }

  double operator()(int i, int j) const { return values_[idx(i, j)]; }
  double& operator()(int i, int j) { return values_[idx(i, j)]; }

  // Periodic accessor: indices taken mod (nx, ny).
  double wrap(int i, int j) const;

  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * grid_.ny() + j; }

  PeriodicGrid2D grid_;
  std::vector<double> values_;
};

/// Evaluable function on [0,2pi)^2 with optional exact partial derivatives.
/// Absent derivatives are default-constructed (empty) std::functions.
struct AnalyticFunction2D {
  std::function<double(double, double)> eval;
  std::function<double(double, double)> d_x, d_y, d_xx, d_yy, d_xy;
};

/// Samples f.eval at every node. Non-finite evaluations are an error naming
/// the offending node.
GridFunction2D sample(const AnalyticFunction2D& f, const PeriodicGrid2D& grid);

/// Discrete L2 norm: sqrt(dx*dy * sum of squares). For band-limited
/// trigonometric polynomials below the Nyquist limit this equals the exact
/// integral norm (trapezoid exactness on periodic integrands).
double l2_norm(const GridFunction2D& u);

double max_abs(const GridFunction2D& u);
double max_abs_diff(const GridFunction2D& a, const GridFunction2D& b);
double l2_diff(const GridFunction2D& a, const GridFunction2D& b);

// CSV dump format: header "x,y,value", one row per node, row-major in i then
// j, 17-significant-digit floats.
std::string to_csv(const GridFunction2D& u);
void write_csv(const GridFunction2D& u, const std::string& path);
GridFunction2D read_csv(const std::string& path);

}  // namespace mixspec
