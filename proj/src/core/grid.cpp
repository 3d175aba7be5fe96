#include "core/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace mixspec {

PeriodicGrid2D::PeriodicGrid2D(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) {
    fail(ErrorCode::invalid_argument,
         "grid dimensions must be at least 2x2, got " + std::to_string(nx) + "x" + std::to_string(ny));
  }
}

PeriodicGrid2D make_grid(int nx, int ny) { return PeriodicGrid2D(nx, ny); }

GridFunction2D::GridFunction2D(PeriodicGrid2D grid, double fill)
    : grid_(grid), values_(static_cast<std::size_t>(grid.nx()) * grid.ny(), fill) {}

double GridFunction2D::wrap(int i, int j) const {
  int nx = grid_.nx(), ny = grid_.ny();
  i %= nx;
  if (i < 0) i += nx;
  j %= ny;
  if (j < 0) j += ny;
  return values_[idx(i, j)];
}

GridFunction2D sample(const AnalyticFunction2D& f, const PeriodicGrid2D& grid) {
  if (!f.eval) fail(ErrorCode::invalid_argument, "sample: function has no eval");
  GridFunction2D out(grid);
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) {
      double v = f.eval(grid.x(i), grid.y(j));
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "sample: non-finite value at node (i=" << i << ", j=" << j << "), x=" << grid.x(i)
            << ", y=" << grid.y(j);
        fail(ErrorCode::nonfinite, msg.str());
      }
      out(i, j) = v;
    }
  }
  return out;
}

double l2_norm(const GridFunction2D& u) {
  KahanSum s;
  for (double v : u.values()) s.add(v * v);
  return std::sqrt(u.grid().dx() * u.grid().dy() * s.value());
}

double max_abs(const GridFunction2D& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const GridFunction2D& a, const GridFunction2D& b) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::invalid_argument, "max_abs_diff: grid mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  }
  return m;
}

double l2_diff(const GridFunction2D& a, const GridFunction2D& b) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::invalid_argument, "l2_diff: grid mismatch");
  KahanSum s;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    double d = a.values()[k] - b.values()[k];
    s.add(d * d);
  }
  return std::sqrt(a.grid().dx() * a.grid().dy() * s.value());
}

std::string to_csv(const GridFunction2D& u) {
  std::string out = "x,y,value\n";
  char line[128];
  const auto& g = u.grid();
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j), u(i, j));
      out += line;
    }
  }
  return out;
}

void write_csv(const GridFunction2D& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  os << to_csv(u);
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

GridFunction2D read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io, "cannot open for reading: " + path);
  std::string header;
  if (!std::getline(is, header) || header != "x,y,value") {
    fail(ErrorCode::io, "bad grid CSV header in " + path + " (expected \"x,y,value\")");
  }
  std::vector<double> xs, ys, vs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, y, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) != 3) {
      fail(ErrorCode::io, "bad grid CSV row in " + path + ": " + line);
    }
    xs.push_back(x);
    ys.push_back(y);
    vs.push_back(v);
  }
  if (vs.empty()) fail(ErrorCode::io, "empty grid CSV: " + path);

  // Row-major in i then j: ny = length of the leading run of constant x.
  std::size_t ny = 1;
  while (ny < xs.size() && xs[ny] == xs[0]) ++ny;
  if (ny < 2 || vs.size() % ny != 0) fail(ErrorCode::io, "grid CSV is not a full row-major grid: " + path);
  std::size_t nx = vs.size() / ny;
  if (nx < 2) fail(ErrorCode::io, "grid CSV has fewer than 2 x-rows: " + path);

  PeriodicGrid2D grid(static_cast<int>(nx), static_cast<int>(ny));
  GridFunction2D u(grid);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      std::size_t k = i * ny + j;
      if (std::abs(xs[k] - grid.x(int(i))) > 1e-9 || std::abs(ys[k] - grid.y(int(j))) > 1e-9) {
        fail(ErrorCode::io, "grid CSV nodes are not the expected equispaced layout: " + path);
      }
      if (!std::isfinite(vs[k])) fail(ErrorCode::nonfinite, "non-finite value in grid CSV: " + path);
      u(int(i), int(j)) = vs[k];
    }
  }
  return u;
}

}  // namespace mixspec
