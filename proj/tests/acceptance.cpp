// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned here on purpose; loosening them is a red flag.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/builtins.hpp"
#include "core/calculus.hpp"
#include "core/error.hpp"
#include "core/fourier.hpp"
#include "core/grid.hpp"
#include "core/numerics.hpp"
#include "core/pathology.hpp"
#include "core/verify.hpp"

using namespace mixspec;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = kTwoPi / 2;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss << x;
  return ss.str();
}

FourierCoeffs2D random_hermitian(int nmax, int mmax, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FourierCoeffs2D c(nmax, mmax);
  for (int n = 0; n <= nmax; ++n) {
    for (int m = -mmax; m <= mmax; ++m) {
      if (n == 0 && m < 0) continue;
      std::complex<double> v(dist(rng), dist(rng));
      if (n == 0 && m == 0) v = {v.real(), 0.0};
      c.at(n, m) = v;
      c.at(-n, -m) = std::conj(v);
    }
  }
  return c;
}

AnalyticFunction2D fn(std::function<double(double, double)> f) {
  AnalyticFunction2D a;
  a.eval = std::move(f);
  return a;
}

// criterion 1: the full pipeline on sin x sin y, with grid-refinement decay
void criterion_1() {
  auto t0 = Clock::now();
  AnalyticFunction2D f;
  f.eval = [](double x, double y) { return std::sin(x) * std::sin(y); };
  f.d_x = [](double x, double y) { return std::cos(x) * std::sin(y); };
  f.d_xy = [](double x, double y) { return std::cos(x) * std::cos(y); };
  PipelineOptions opt;
  opt.band_limit = 1;
  PipelineResult r64 = run_pipeline(f, make_grid(64, 64), 8, 8, opt);
  PipelineResult r128 = run_pipeline(f, make_grid(128, 128), 8, 8, opt);
  double elapsed = seconds_since(t0);

  double h_err = r64.report.checks.at("h_vs_dxy").max;
  double g_err = r64.report.checks.at("g_vs_f").max;
  double ratio = g_err / r128.report.checks.at("g_vs_f").max;
  bool pass = r64.report.all_pass() && h_err <= 1e-8 && g_err <= 1e-2 && ratio >= 3.5 &&
              ratio <= 4.5 && elapsed < 2.0;
  std::ostringstream d;
  d << "h_err=" << h_err << " g_err=" << g_err << " ratio=" << ratio << " time=" << elapsed
    << "s";
  report(1, pass, "pipeline on sin x sin y converges at second order", d.str());
}

// criterion 2: operator identities on 1000 random coefficient boxes
void criterion_2() {
  std::mt19937_64 rng(71);
  bool pass = true;
  for (int rep = 0; rep < 1000 && pass; ++rep) {
    FourierCoeffs2D c = random_hermitian(4, 3, rng);
    FourierCoeffs2D h = mixed_operator(c);
    FourierCoeffs2D xy = derivative_x(derivative_y(c));
    FourierCoeffs2D yx = derivative_y(derivative_x(c));
    for (int n = -4; n <= 4 && pass; ++n)
      for (int m = -3; m <= 3; ++m)
        if (h.at(n, m) != xy.at(n, m) || h.at(n, m) != yx.at(n, m)) {
          pass = false;
          break;
        }
    if (max_hermitian_defect(h) != 0.0) pass = false;
    DecayNorms d = decay_norms(c);
    if (d.sxy > (d.s4x + d.s4y) * (1.0 + 1e-12)) pass = false;
  }
  report(2, pass, "mixed operator equals the derivative composition on 1000 random boxes");
}

// criterion 3: Parseval at 1e-10 over 100 random spectra
void criterion_3() {
  std::mt19937_64 rng(1213);
  double worst = 0.0;
  PeriodicGrid2D g = make_grid(16, 16);
  for (int rep = 0; rep < 100; ++rep) {
    FourierCoeffs2D c = random_hermitian(5, 4, rng);
    GridFunction2D u = synthesize(c, g);
    double lhs = l2_norm(u);
    lhs *= lhs;
    KahanSum sq;
    for (const auto& z : c.data()) sq.add(std::norm(z));
    double rhs = kTwoPi * kTwoPi * sq.value();
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
    }
  report(3, worst <= 1e-10, "Parseval holds to 1e-10 over 100 random spectra",
         "worst=" + fmt(worst));
}

// criterion 4: the by-parts factor discriminator at n = 2
void criterion_4() {
  std::vector<double> fsamp(64), gsamp(64);
  for (int i = 0; i < 64; ++i) {
    double x = kTwoPi * i / 64;
    fsamp[i] = std::cos(2 * x);
    gsamp[i] = -2 * std::sin(2 * x);
  }
  IbpResult r = ibp_check(analyze_1d(fsamp, 4), analyze_1d(gsamp, 4), 2);
  double sep = std::abs(r.lhs - r.rhs_alt);
  bool pass = r.residual <= 1e-10 && std::abs(sep - 3 * kPi) <= 1e-6;
  std::ostringstream d;
  d << "residual=" << r.residual << " |lhs-rhs_alt|=" << sep;
  report(4, pass, "corrected by-parts factor validates, printed factor separates by 3 pi",
         d.str());
}

// criterion 5: primitive slice residual at two resolutions
void criterion_5() {
  AnalyticFunction2D h = fn([](double x, double y) { return std::cos(x) * std::cos(y); });
  SliceCheckResult r128 = primitive_slice_check(h, kPi, make_grid(128, 128));
  SliceCheckResult r256 = primitive_slice_check(h, kPi, make_grid(256, 256));
  bool pass = r128.residual <= 1e-2 && r256.residual <= 2.9e-3;
  std::ostringstream d;
  d << "residual128=" << r128.residual << " residual256=" << r256.residual;
  report(5, pass, "slice reconstruction residual shrinks with the grid", d.str());
}

// criterion 6: Hoelder modulus gate plus exact scale consistency
void criterion_6() {
  std::vector<double> g(4096);
  for (int i = 0; i < 4096; ++i) g[i] = std::sin(kTwoPi * i / 4096);
  HolderResult wide = holder_modulus(g, kPi);
  HolderResult narrow = holder_modulus(g, 0.1);
  bool pass = wide.pass && !narrow.pass;

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_real_distribution<double> cdist(0.05, 5.0);
  for (int rep = 0; rep < 100 && pass; ++rep) {
    // random trigonometric polynomial, so each sample path is smooth
    double ak[5], bk[5];
    for (int k = 0; k < 5; ++k) {
      ak[k] = dist(rng);
      bk[k] = dist(rng);
    }
    std::vector<double> a(512), b(512);
    for (int i = 0; i < 512; ++i) {
      double t = kTwoPi * i / 512, v = 0.0;
      for (int k = 0; k < 5; ++k) v += ak[k] * std::cos((k + 1) * t) + bk[k] * std::sin((k + 1) * t);
      a[i] = v;
      b[i] = 2.0 * v;
    }
    double c = cdist(rng);
    HolderResult ra = holder_modulus(a, c, rep);
    HolderResult rb = holder_modulus(b, 4.0 * c, rep);
    if (rb.worst_ratio != 2.0 * ra.worst_ratio || ra.pass != rb.pass) pass = false;
  }
  report(6, pass, "sqrt-modulus check separates pi from 0.1 and rescales exactly 100 times");
}

// criterion 7: fat Cantor measure and side conditions under a second
void criterion_7() {
  auto t0 = Clock::now();
  FatCantorSet s = FatCantorSet::build(20, 1.0);
  bool ok = true;
  try {
    s.validate();
  } catch (const Error&) {
    ok = false;
  }
  double elapsed = seconds_since(t0);
  double gap = std::abs(s.measure() - 0.5);
  bool pass = ok && gap <= 1e-6 && elapsed < 1.0;
  std::ostringstream d;
  d << "|measure-1/2|=" << gap << " time=" << elapsed << "s";
  report(7, pass, "20-level full-removal Cantor set stays fat and valid", d.str());
}

// criterion 8: bump series witnesses and second-derivative line bounds
void criterion_8() {
  FatCantorSet set = FatCantorSet::build(6, 1.0);
  CounterexampleSeries s = construct_bumps(set, 8);
  const BumpFunction& b = standard_bump();
  bool pass = true;
  double worst_witness = 0.0;
  for (int i = 0; i < s.num_terms(); ++i) {
    const SeriesTerm& t = s.term(i);
    double fx = eval_series(s, t.witness_x, t.witness_y, EvalWhat::fx);
    worst_witness = std::max(worst_witness, std::abs(std::abs(fx) - b.peak_slope));
    if (eval_series(s, t.u.a, t.witness_y, EvalWhat::fx) != 0.0) pass = false;
    if (eval_series(s, t.u.b, t.witness_y, EvalWhat::fx) != 0.0) pass = false;
  }
  if (worst_witness > 1e-12) pass = false;
  // the x-slope dies at every removed-interval endpoint, on every witness row
  for (double e : set.endpoint_enumeration())
    for (int i = 0; i < s.num_terms(); ++i)
      if (eval_series(s, e, s.term(i).witness_y, EvalWhat::fx) != 0.0) pass = false;

  auto [bx8, by8] = l1_second_derivative_bound(s);
  auto [bx4, by4] = l1_second_derivative_bound(construct_bumps(set, 4));
  if (std::abs(bx8 - by8) > 1e-4) pass = false;
  if (std::abs(bx8 - b.l1_d2) > 1e-4) pass = false;
  if (std::abs(bx8 - bx4) > 1e-9 || std::abs(by8 - by4) > 1e-9) pass = false;
  std::ostringstream d;
  d << "worst witness defect=" << worst_witness << " sup_fxx=" << bx8 << " sup_fyy=" << by8;
  report(8, pass, "bump series attains the peak slope with stable line bounds", d.str());
}

// criterion 9: zigzag series slopes and shrinking curvature bounds
void criterion_9() {
  FatCantorSet set = FatCantorSet::build(6, 1.0);
  CounterexampleSeries s = construct_zigzag(set, 16);
  const BumpFunction& b = standard_bump();
  bool pass = true;
  double prev = 0.0;
  for (int i = 0; i < s.num_terms(); ++i) {
    const SeriesTerm& t = s.term(i);
    double bound = t.eps * b.max_abs_d2 / (t.len * t.len);
    if (i > 0 && !(bound < prev)) pass = false;
    prev = bound;
    if (eval_series(s, t.witness_x, t.witness_y, EvalWhat::fx) != 1.0) pass = false;
    if (eval_series(s, 3 * t.eps / 2, t.witness_y, EvalWhat::fx) != -1.0) pass = false;
    if (eval_series(s, t.witness_x, t.v.a, EvalWhat::fx) != 0.0) pass = false;
    if (eval_series(s, t.witness_x, t.v.b, EvalWhat::fx) != 0.0) pass = false;
    if (eval_series(s, t.witness_x, t.witness_y, EvalWhat::fxx) != 0.0) pass = false;
  }
  if (!(prev < 1e-3)) pass = false;
  // unit slope at generic off-lattice columns on the first peak row
  double row = s.term(0).witness_y;
  if (std::abs(eval_series(s, 0.123456, row, EvalWhat::fx)) != 1.0) pass = false;
  if (std::abs(eval_series(s, 0.3789, row, EvalWhat::fx)) != 1.0) pass = false;
  // and no slope at all on removed-interval endpoint rows
  for (double e : set.endpoint_enumeration())
    if (eval_series(s, 0.123456, e, EvalWhat::fx) != 0.0) pass = false;
  report(9, pass, "zigzag series keeps unit slopes while its curvature bound sinks below 1e-3",
         "final bound=" + fmt(prev));
}

// criterion 10: the rebuilt cross derivative transposes with the function
void criterion_10() {
  AnalyticFunction2D f = fn([](double x, double y) { return std::sin(x) * std::sin(2 * y); });
  AnalyticFunction2D ft = fn([](double x, double y) { return std::sin(y) * std::sin(2 * x); });
  PipelineOptions opt;
  opt.band_limit = 2;
  PipelineResult a = run_pipeline(f, make_grid(64, 64), 8, 8, opt);
  PipelineResult bres = run_pipeline(ft, make_grid(64, 64), 8, 8, opt);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      worst = std::max(worst, std::abs(bres.h(i, j) - a.h(j, i)));
  report(10, worst <= 1e-12, "cross-derivative field commutes with transposition",
         "max deviation=" + fmt(worst));
}

// criterion 11: the CLI is byte-deterministic across repeated runs
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_11(const char* cli) {
  if (!cli) {
    report(11, false, "cli determinism", "no cli path supplied");
    return;
  }
  fs::path base = fs::temp_directory_path() / "mixspec_acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);
  fs::create_directories(base);
  std::string q = std::string("\"") + cli + "\"";
  bool pass = true;
  auto run = [&](const std::string& args) {
    int rc = std::system((q + " " + args).c_str());
    if (rc != 0) pass = false;
  };
  for (int round = 1; round <= 2; ++round) {
    std::string r = std::to_string(round);
    fs::path dir = base / ("round" + r);
    fs::create_directories(dir);
    run("verify --function sinsin --nx 64 --ny 64 --nmax 8 --mmax 8 --out " +
        (dir / "report.json").string());
    run("pathology --kind thm51 --levels 6 --terms 8 --out " + (dir / "p51").string());
    run("dump --what coeffs --function sinsin --nx 32 --nmax 4 --out " +
        (dir / "coeffs.json").string());
  }
  for (const char* rel : {"report.json", "p51/metadata.json", "p51/witnesses.csv",
                          "p51/grid.csv", "coeffs.json"}) {
    std::string a = slurp(base / "round1" / rel);
    std::string b = slurp(base / "round2" / rel);
    if (a.empty() || a != b) pass = false;
  }
  fs::remove_all(base, ec);
  report(11, pass, "cli artifacts are byte-identical across runs");
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11(argc > 1 ? argv[1] : nullptr);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
