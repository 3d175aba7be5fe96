#include "core/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "json.hpp"

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace mixspec {

namespace {

// twiddle[i][k+kmax] = exp(sign * i * k * theta_i) for theta_i = 2pi i / npoints
std::vector<std::vector<std::complex<double>>> twiddle_table(int npoints, int kmax, double sign) {
  std::vector<std::vector<std::complex<double>>> t(npoints);
  for (int i = 0; i < npoints; ++i) {
    t[i].resize(2 * kmax + 1);
    double theta = kTwoPi * i / npoints;
    for (int k = -kmax; k <= kmax; ++k) {
      t[i][k + kmax] = std::polar(1.0, sign * k * theta);
    }
  }
  return t;
}

void check_box(int nmax, int mmax) {
  if (nmax < 0 || mmax < 0) {
    fail(ErrorCode::invalid_argument, "coefficient box bounds must be nonnegative, got nmax=" +
                                          std::to_string(nmax) + " mmax=" + std::to_string(mmax));
  }
}

}  // namespace

FourierCoeffs2D::FourierCoeffs2D(int nmax, int mmax) : nmax_(nmax), mmax_(mmax) {
  check_box(nmax, mmax);
  c_.assign(static_cast<std::size_t>(2 * nmax + 1) * (2 * mmax + 1), {0.0, 0.0});
}

std::size_t FourierCoeffs2D::idx(int n, int m) const {
  if (std::abs(n) > nmax_ || std::abs(m) > mmax_) {
    fail(ErrorCode::invalid_argument, "coefficient index (" + std::to_string(n) + "," +
                                          std::to_string(m) + ") outside box " +
                                          std::to_string(nmax_) + "x" + std::to_string(mmax_));
  }
  return static_cast<std::size_t>(n + nmax_) * (2 * mmax_ + 1) + (m + mmax_);
}

FourierCoeffs1D::FourierCoeffs1D(int mmax) : mmax_(mmax) {
  if (mmax < 0) fail(ErrorCode::invalid_argument, "mmax must be nonnegative");
  c_.assign(static_cast<std::size_t>(2 * mmax + 1), {0.0, 0.0});
}

std::size_t FourierCoeffs1D::idx(int m) const {
  if (std::abs(m) > mmax_) {
    fail(ErrorCode::invalid_argument,
         "coefficient index " + std::to_string(m) + " outside box " + std::to_string(mmax_));
  }
  return static_cast<std::size_t>(m + mmax_);
}

FourierCoeffs2D analyze(const GridFunction2D& u, int nmax, int mmax) {
  check_box(nmax, mmax);
  const PeriodicGrid2D& g = u.grid();
  if (2 * nmax + 1 > g.nx() || 2 * mmax + 1 > g.ny()) {
    fail(ErrorCode::precondition,
         "analyze: coefficient box does not fit the grid (need 2*nmax+1 <= nx and 2*mmax+1 <= ny)");
  }
  auto ex = twiddle_table(g.nx(), nmax, -1.0);
  auto ey = twiddle_table(g.ny(), mmax, -1.0);
  FourierCoeffs2D out(nmax, mmax);
  double scale = 1.0 / (static_cast<double>(g.nx()) * g.ny());
  for (int n = -nmax; n <= nmax; ++n) {
    for (int m = -mmax; m <= mmax; ++m) {
      KahanSumComplex acc;
      for (int i = 0; i < g.nx(); ++i) {
        const std::complex<double>& exi = ex[i][n + nmax];
        for (int j = 0; j < g.ny(); ++j) {
          acc.add(u(i, j) * exi * ey[j][m + mmax]);
        }
      }
      out.at(n, m) = scale * acc.value();
    }
  }
  return out;
}

FourierCoeffs2D analyze_separable(const GridFunction2D& u, int nmax, int mmax) {
  check_box(nmax, mmax);
  const PeriodicGrid2D& g = u.grid();
  if (2 * nmax + 1 > g.nx() || 2 * mmax + 1 > g.ny()) {
    fail(ErrorCode::precondition,
         "analyze_separable: coefficient box does not fit the grid");
  }
  auto ex = twiddle_table(g.nx(), nmax, -1.0);
  auto ey = twiddle_table(g.ny(), mmax, -1.0);
  // First pass in y per grid row, second pass in x per y-mode.
  std::vector<std::vector<std::complex<double>>> beta(g.nx());
  for (int i = 0; i < g.nx(); ++i) {
    beta[i].resize(2 * mmax + 1);
    for (int m = -mmax; m <= mmax; ++m) {
      KahanSumComplex acc;
      for (int j = 0; j < g.ny(); ++j) acc.add(u(i, j) * ey[j][m + mmax]);
      beta[i][m + mmax] = acc.value() / static_cast<double>(g.ny());
    }
  }
  FourierCoeffs2D out(nmax, mmax);
  for (int n = -nmax; n <= nmax; ++n) {
    for (int m = -mmax; m <= mmax; ++m) {
      KahanSumComplex acc;
      for (int i = 0; i < g.nx(); ++i) acc.add(beta[i][m + mmax] * ex[i][n + nmax]);
      out.at(n, m) = acc.value() / static_cast<double>(g.nx());
    }
  }
  return out;
}

GridFunction2D synthesize(const FourierCoeffs2D& c, const PeriodicGrid2D& grid,
                          double* imag_residual, double hermitian_tol) {
  auto ex = twiddle_table(grid.nx(), c.nmax(), 1.0);
  auto ey = twiddle_table(grid.ny(), c.mmax(), 1.0);
  GridFunction2D out(grid);
  double worst_imag = 0.0;
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.ny(); ++j) {
      KahanSumComplex acc;
      for (int n = -c.nmax(); n <= c.nmax(); ++n) {
        const std::complex<double>& exi = ex[i][n + c.nmax()];
        for (int m = -c.mmax(); m <= c.mmax(); ++m) {
          acc.add(c.at(n, m) * exi * ey[j][m + c.mmax()]);
        }
      }
      std::complex<double> v = acc.value();
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
      out(i, j) = v.real();
    }
  }
  if (imag_residual) *imag_residual = worst_imag;
  if (worst_imag > hermitian_tol) {
    fail(ErrorCode::precondition, "synthesize: imaginary residual " + std::to_string(worst_imag) +
                                      " exceeds " + std::to_string(hermitian_tol) +
                                      " (coefficients are not Hermitian)");
  }
  return out;
}

FourierCoeffs2D derivative_x(const FourierCoeffs2D& c) {
  FourierCoeffs2D out(c.nmax(), c.mmax());
  for (int n = -c.nmax(); n <= c.nmax(); ++n) {
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      out.at(n, m) = std::complex<double>(0.0, n) * c.at(n, m);
    }
  }
  return out;
}

FourierCoeffs2D derivative_y(const FourierCoeffs2D& c) {
  FourierCoeffs2D out(c.nmax(), c.mmax());
  for (int n = -c.nmax(); n <= c.nmax(); ++n) {
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      out.at(n, m) = std::complex<double>(0.0, m) * c.at(n, m);
    }
  }
  return out;
}

FourierCoeffs2D mixed_operator(const FourierCoeffs2D& c) {
  return derivative_x(derivative_y(c));
}

DecayNorms decay_norms(const FourierCoeffs2D& c) {
  KahanSum s4x, s4y, sxy;
  for (int n = -c.nmax(); n <= c.nmax(); ++n) {
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      double w = std::norm(c.at(n, m));
      double n2 = static_cast<double>(n) * n;
      double m2 = static_cast<double>(m) * m;
      s4x.add(n2 * n2 * w);
      s4y.add(m2 * m2 * w);
      sxy.add(n2 * m2 * w);
    }
  }
  return {s4x.value(), s4y.value(), sxy.value()};
}

FourierCoeffs1D slice(const FourierCoeffs2D& c, int n) {
  if (std::abs(n) > c.nmax()) {
    fail(ErrorCode::invalid_argument,
         "slice: |n| = " + std::to_string(std::abs(n)) + " exceeds nmax = " + std::to_string(c.nmax()));
  }
  FourierCoeffs1D out(c.mmax());
  for (int m = -c.mmax(); m <= c.mmax(); ++m) out.at(m) = c.at(n, m);
  return out;
}

std::vector<std::complex<double>> row_transform(const GridFunction2D& u, int n) {
  const PeriodicGrid2D& g = u.grid();
  if (2 * std::abs(n) + 1 > g.nx()) {
    fail(ErrorCode::precondition,
         "row_transform: 2|n|+1 = " + std::to_string(2 * std::abs(n) + 1) +
             " exceeds nx = " + std::to_string(g.nx()));
  }
  std::vector<std::complex<double>> out(g.ny());
  for (int j = 0; j < g.ny(); ++j) {
    KahanSumComplex acc;
    for (int i = 0; i < g.nx(); ++i) {
      acc.add(u(i, j) * std::polar(1.0, -n * g.x(i)));
    }
    out[j] = acc.value() / static_cast<double>(g.nx());
  }
  return out;
}

FourierCoeffs1D analyze_1d(const std::vector<double>& samples, int mmax) {
  int npoints = static_cast<int>(samples.size());
  if (mmax < 0) fail(ErrorCode::invalid_argument, "analyze_1d: mmax must be nonnegative");
  if (2 * mmax + 1 > npoints) {
    fail(ErrorCode::precondition, "analyze_1d: coefficient box does not fit the sample count");
  }
  FourierCoeffs1D out(mmax);
  for (int m = -mmax; m <= mmax; ++m) {
    KahanSumComplex acc;
    for (int j = 0; j < npoints; ++j) {
      acc.add(samples[j] * std::polar(1.0, -m * (kTwoPi * j / npoints)));
    }
    out.at(m) = acc.value() / static_cast<double>(npoints);
  }
  return out;
}

std::vector<std::complex<double>> synthesize_1d(const FourierCoeffs1D& c, int npoints) {
  if (npoints < 1) fail(ErrorCode::invalid_argument, "synthesize_1d: npoints must be positive");
  std::vector<std::complex<double>> out(npoints);
  for (int j = 0; j < npoints; ++j) {
    KahanSumComplex acc;
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      acc.add(c.at(m) * std::polar(1.0, m * (kTwoPi * j / npoints)));
    }
    out[j] = acc.value();
  }
  return out;
}

double cosine_moment(const FourierCoeffs1D& c, int n) {
  const double kPi = kTwoPi / 2.0;
  return (kPi * (c.at(n) + c.at(-n))).real();
}

double sine_moment(const FourierCoeffs1D& c, int n) {
  const double kPi = kTwoPi / 2.0;
  return (std::complex<double>(0.0, kPi) * (c.at(n) - c.at(-n))).real();
}

IbpResult ibp_check(const FourierCoeffs1D& fc, const FourierCoeffs1D& gc, int n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "ibp_check: n must be positive");
  if (n < 0 || n > fc.mmax() || n > gc.mmax()) {
    fail(ErrorCode::invalid_argument, "ibp_check: n outside both coefficient boxes");
  }
  IbpResult r;
  r.lhs = cosine_moment(fc, n);
  double gs = sine_moment(gc, n);
  r.rhs = -gs / n;
  r.rhs_alt = -static_cast<double>(n) * gs;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double max_hermitian_defect(const FourierCoeffs2D& c) {
  double worst = 0.0;
  for (int n = -c.nmax(); n <= c.nmax(); ++n) {
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      worst = std::max(worst, std::abs(c.at(n, m) - std::conj(c.at(-n, -m))));
    }
  }
  return worst;
}

std::string coeffs_to_json(const FourierCoeffs2D& c) {
  nlohmann::json j;
  j["nmax"] = c.nmax();
  j["mmax"] = c.mmax();
  nlohmann::json entries = nlohmann::json::array();
  for (int n = -c.nmax(); n <= c.nmax(); ++n) {
    for (int m = -c.mmax(); m <= c.mmax(); ++m) {
      const std::complex<double>& v = c.at(n, m);
      if (std::abs(v) > 1e-15) {
        entries.push_back({{"n", n}, {"m", m}, {"re", v.real()}, {"im", v.imag()}});
      }
    }
  }
  j["coeffs"] = std::move(entries);
  return j.dump();
}

FourierCoeffs2D coeffs_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("nmax") || !j.contains("mmax") ||
      !j.contains("coeffs") || !j["coeffs"].is_array()) {
    fail(ErrorCode::io, "coeffs_from_json: malformed coefficient JSON");
  }
  FourierCoeffs2D c(j["nmax"].get<int>(), j["mmax"].get<int>());
  for (const auto& e : j["coeffs"]) {
    c.at(e.at("n").get<int>(), e.at("m").get<int>()) = {e.at("re").get<double>(),
                                                        e.at("im").get<double>()};
  }
  return c;
}

}  // namespace mixspec
