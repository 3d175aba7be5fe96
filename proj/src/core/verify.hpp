#pragma once

#include <map>
#include <optional>
#include <string>

#include "core/fourier.hpp"
#include "core/grid.hpp"

namespace mixspec {

// Separable C2 plateau: w(x)w(y) with w = 0 on [0, pi/n] and [2pi - pi/n, 2pi],
// w = 1 on [2pi/n, 2pi - 2pi/n], quintic smoothstep ramps in between.
class WindowFunction {
 public:
  explicit WindowFunction(int n);

  int n() const { return n_; }

  double profile(double t) const;     // w
  double profile_d1(double t) const;  // w'
  double profile_d2(double t) const;  // w''

  double eval(double x, double y) const { return profile(x) * profile(y); }

 private:
  int n_;
  double ramp_;  // pi/n: ramp width and dead-zone width
};

WindowFunction make_window(int n);

// Product f * w(x)w(y) with Leibniz-rule derivatives. Pre: f supplies eval,
// d_x, d_y, d_xx, d_yy; d_xy is carried through when present.
AnalyticFunction2D apply_window(const AnalyticFunction2D& f, const WindowFunction& w);

struct CheckResult {
  double max = 0.0;
  std::optional<double> l2;
  std::optional<double> tol;  // absent: informational, recorded but not gated
  bool pass = true;
};

struct Tolerances {
  double spectral = 1e-8;
  double quad = 1e-2;
  double boundary = 1e-9;
};

struct VerificationReport {
  int nx = 0, ny = 0;
  int nmax = 0, mmax = 0;
  Tolerances tol;
  std::map<std::string, CheckResult> checks;
  DecayNorms decay{0.0, 0.0, 0.0};
  bool fd_fallback = false;  // F compared against fd_partial_x, no exact d_x
  std::map<std::string, double> timings_ms;

  bool all_pass() const;
  std::string first_failure() const;  // empty when all pass
};

struct PipelineOptions {
  Tolerances tol;
  // >= 0: f is a trigonometric polynomial with modes within this bound, so
  // spectral legs are gated at fixed tolerances; < 0: truncation-dominated
  // legs are recorded as informational.
  int band_limit = -1;
  // Gate the quadrature legs at tol.quad even without a band limit (used for
  // grids loaded from files, where no spectral model is known).
  bool gate_quad = false;
};

struct PipelineResult {
  VerificationReport report;
  GridFunction2D u;           // sampled f
  FourierCoeffs2D coeffs;     // analyze(u)
  GridFunction2D h;           // synthesized mixed derivative
  GridFunction2D fx_rebuilt;  // F = primitive_y(h)
  GridFunction2D f_rebuilt;   // G = primitive_xy(h)
};

// sample -> boundary gate -> analyze -> decay -> mixed_operator -> synthesize
// -> F = primitive_y(h) vs f'x -> G = primitive_xy(h) vs f -> h vs fd_mixed
// -> h vs exact d_xy when present -> parseval -> row-zero of analyze(h).
// Throws on the boundary precondition; tolerance failures are recorded.
PipelineResult run_pipeline(const AnalyticFunction2D& f, const PeriodicGrid2D& grid, int nmax,
                            int mmax, const PipelineOptions& opt = {});

// Same pipeline starting from sampled values; derivative references fall back
// to finite differences.
PipelineResult run_pipeline(const GridFunction2D& u, int nmax, int mmax,
                            const PipelineOptions& opt = {});

// Deterministic JSON, sorted keys; rejects non-finite values. With
// include_timings false the timings object is emptied, keeping bytes stable
// across runs.
std::string serialize_report(const VerificationReport& r, bool include_timings = true);
VerificationReport parse_report(const std::string& text);

}  // namespace mixspec
