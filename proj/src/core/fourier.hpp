#pragma once

#include <complex>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace mixspec {

// Truncated coefficient box: complex entries a(n,m) for |n| <= nmax, |m| <= mmax.
// Convention: a(n,m) = (1/(nx*ny)) * sum_{i,j} u(i,j) e^{-i n x_i} e^{-i m y_j},
// the grid discretization of (1/4pi^2) * integral of u e^{-inx} e^{-imy}.
// Synthesis carries no prefactor.
class FourierCoeffs2D {
 public:
  FourierCoeffs2D(int nmax, int mmax);

  int nmax() const { return nmax_; }
  int mmax() const { return mmax_; }

  std::complex<double>& at(int n, int m) { return c_[idx(n, m)]; }
  const std::complex<double>& at(int n, int m) const { return c_[idx(n, m)]; }

  const std::vector<std::complex<double>>& data() const { return c_; }
  std::vector<std::complex<double>>& data() { return c_; }

 private:
  std::size_t idx(int n, int m) const;

  int nmax_;
  int mmax_;
  std::vector<std::complex<double>> c_;
};

// One x-mode's coefficients over the y-modes: coeff(m) for |m| <= mmax.
class FourierCoeffs1D {
 public:
  explicit FourierCoeffs1D(int mmax);

  int mmax() const { return mmax_; }
  std::complex<double>& at(int m) { return c_[idx(m)]; }
  const std::complex<double>& at(int m) const { return c_[idx(m)]; }
  const std::vector<std::complex<double>>& data() const { return c_; }

 private:
  std::size_t idx(int m) const;

  int mmax_;
  std::vector<std::complex<double>> c_;
};

struct DecayNorms {
  double s4x;  // sum n^4 |a|^2
  double s4y;  // sum m^4 |a|^2
  double sxy;  // sum n^2 m^2 |a|^2; always <= s4x + s4y
};

struct IbpResult {
  double lhs;       // cosine moment of f: integral f(x) cos(nx) dx
  double rhs;       // -(1/n) * integral g(x) sin(nx) dx, g = f'
  double residual;  // |lhs - rhs|
  double rhs_alt;   // same sine moment with factor -n instead of -1/n
};

// Direct nested-sum transform; the defining rule. Pre: 2nmax+1 <= nx, 2mmax+1 <= ny.
FourierCoeffs2D analyze(const GridFunction2D& u, int nmax, int mmax);

// Separable two-pass transform; must agree with analyze to 1e-12.
FourierCoeffs2D analyze_separable(const GridFunction2D& u, int nmax, int mmax);

// Pointwise partial sum, real part; max |imaginary part| is written to
// *imag_residual when given, and values above hermitian_tol throw.
GridFunction2D synthesize(const FourierCoeffs2D& c, const PeriodicGrid2D& grid,
                          double* imag_residual = nullptr, double hermitian_tol = 1e-9);

FourierCoeffs2D derivative_x(const FourierCoeffs2D& c);  // multiply by i*n
FourierCoeffs2D derivative_y(const FourierCoeffs2D& c);  // multiply by i*m
FourierCoeffs2D mixed_operator(const FourierCoeffs2D& c);  // multiply by -n*m

DecayNorms decay_norms(const FourierCoeffs2D& c);

// Fixed x-mode n, coefficients over m. Pre: |n| <= nmax.
FourierCoeffs1D slice(const FourierCoeffs2D& c, int n);

// out(j) = (1/nx) * sum_i u(i,j) e^{-i n x_i}. Pre: 2|n|+1 <= nx.
std::vector<std::complex<double>> row_transform(const GridFunction2D& u, int n);

// 1D transform of equispaced samples on [0,2pi). Pre: 2mmax+1 <= samples.size().
FourierCoeffs1D analyze_1d(const std::vector<double>& samples, int mmax);

// Partial sum at y_j = 2pi j / npoints.
std::vector<std::complex<double>> synthesize_1d(const FourierCoeffs1D& c, int npoints);

// Moments from 1D coefficients of f on [0,2pi).
double cosine_moment(const FourierCoeffs1D& c, int n);
double sine_moment(const FourierCoeffs1D& c, int n);

// Integration-by-parts identity for the cosine moment: with g = f',
// integral f cos(nx) dx = -(1/n) integral g sin(nx) dx. rhs_alt applies the
// factor -n instead; the two coincide only at n = 1. Pre: 1 <= n <= mmax.
IbpResult ibp_check(const FourierCoeffs1D& fc, const FourierCoeffs1D& gc, int n);

double max_hermitian_defect(const FourierCoeffs2D& c);

// Entries with modulus > 1e-15, (n,m)-lexicographic, sorted object keys.
std::string coeffs_to_json(const FourierCoeffs2D& c);
FourierCoeffs2D coeffs_from_json(const std::string& text);

}  // namespace mixspec
