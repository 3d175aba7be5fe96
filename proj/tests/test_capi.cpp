#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "mixspec/mixspec.h"

namespace {

constexpr double kPi = 3.141592653589793;

struct CStr {
  char* p = nullptr;
  ~CStr() { mixspec_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(mixspec_version()) == "0.1.0");
  mixspec_field* f = nullptr;
  CHECK(mixspec_field_sample_builtin("missing", 8, 8, &f) == MIXSPEC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(mixspec_last_error()).find("missing") != std::string::npos);
  CHECK(mixspec_field_sample_builtin("zero", 8, 8, &f) == MIXSPEC_OK);
  CHECK(std::string(mixspec_last_error()).empty());
  mixspec_field_free(f);
  CHECK(mixspec_field_sample_builtin(nullptr, 8, 8, &f) == MIXSPEC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("field sampling, values and csv round trip") {
  mixspec_field* f = nullptr;
  REQUIRE(mixspec_field_sample_builtin("sinsin", 16, 16, &f) == MIXSPEC_OK);
  int nx = 0, ny = 0;
  CHECK(mixspec_field_dims(f, &nx, &ny) == MIXSPEC_OK);
  CHECK(nx == 16);
  CHECK(ny == 16);
  double v = 0.0;
  CHECK(mixspec_field_value(f, 4, 4, &v) == MIXSPEC_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));  // both coordinates at pi/2
  CHECK(mixspec_field_value(f, 16, 0, &v) == MIXSPEC_ERR_INVALID_ARGUMENT);
  double l2 = 0.0;
  CHECK(mixspec_field_l2(f, &l2) == MIXSPEC_OK);
  CHECK(l2 == doctest::Approx(kPi).epsilon(1e-12));

  CStr csv;
  REQUIRE(mixspec_field_csv(f, &csv.p) == MIXSPEC_OK);
  CHECK(csv.str().rfind("x,y,value\n", 0) == 0);
  auto path = std::filesystem::temp_directory_path() / "mixspec_capi_field.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << csv.str();
  }
  mixspec_field* g = nullptr;
  REQUIRE(mixspec_field_read_csv(path.string().c_str(), &g) == MIXSPEC_OK);
  double w = 0.0;
  CHECK(mixspec_field_value(g, 4, 4, &w) == MIXSPEC_OK);
  CHECK(w == v);
  mixspec_field_free(g);
  mixspec_field_free(f);
  std::filesystem::remove(path);

  CHECK(mixspec_field_read_csv("/nonexistent/mixspec.csv", &g) == MIXSPEC_ERR_IO);
}

TEST_CASE("coefficients through the c api") {
  mixspec_field* f = nullptr;
  REQUIRE(mixspec_field_sample_builtin("sinsin", 16, 16, &f) == MIXSPEC_OK);
  mixspec_coeffs* c = nullptr;
  REQUIRE(mixspec_analyze(f, 2, 2, &c) == MIXSPEC_OK);
  int nmax = 0, mmax = 0;
  CHECK(mixspec_coeffs_dims(c, &nmax, &mmax) == MIXSPEC_OK);
  CHECK(nmax == 2);
  double re = 0.0, im = 0.0;
  CHECK(mixspec_coeffs_get(c, 1, 1, &re, &im) == MIXSPEC_OK);
  CHECK(re == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(std::abs(im) <= 1e-15);
  CHECK(mixspec_coeffs_get(c, 3, 0, &re, &im) == MIXSPEC_ERR_INVALID_ARGUMENT);

  double s4x = 0.0, s4y = 0.0, sxy = 0.0;
  CHECK(mixspec_decay_norms(c, &s4x, &s4y, &sxy) == MIXSPEC_OK);
  CHECK(s4x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sxy == doctest::Approx(0.25).epsilon(1e-12));

  mixspec_coeffs* h = nullptr;
  REQUIRE(mixspec_mixed_operator(c, &h) == MIXSPEC_OK);
  mixspec_field* hf = nullptr;
  REQUIRE(mixspec_synthesize(h, 16, 16, &hf) == MIXSPEC_OK);
  double hv = 0.0;
  CHECK(mixspec_field_value(hf, 0, 0, &hv) == MIXSPEC_OK);
  CHECK(hv == doctest::Approx(1.0).epsilon(1e-12));  // cos(0) cos(0)
  mixspec_field_free(hf);
  mixspec_coeffs_free(h);

  CStr json;
  REQUIRE(mixspec_coeffs_json(c, &json.p) == MIXSPEC_OK);
  CHECK(json.str().find("\"coeffs\"") != std::string::npos);

  // analyze with an oversized box fails the precondition
  mixspec_coeffs* big = nullptr;
  CHECK(mixspec_analyze(f, 8, 8, &big) == MIXSPEC_ERR_PRECONDITION);

  mixspec_coeffs_free(c);
  mixspec_field_free(f);
}

TEST_CASE("derivative operators compose through the c api") {
  mixspec_field* f = nullptr;
  REQUIRE(mixspec_field_sample_builtin("sinsin", 16, 16, &f) == MIXSPEC_OK);
  mixspec_coeffs* c = nullptr;
  REQUIRE(mixspec_analyze(f, 2, 2, &c) == MIXSPEC_OK);
  mixspec_coeffs* dx = nullptr;
  mixspec_coeffs* dxy = nullptr;
  mixspec_coeffs* h = nullptr;
  REQUIRE(mixspec_derivative_x(c, &dx) == MIXSPEC_OK);
  REQUIRE(mixspec_derivative_y(dx, &dxy) == MIXSPEC_OK);
  REQUIRE(mixspec_mixed_operator(c, &h) == MIXSPEC_OK);
  for (int n = -2; n <= 2; ++n) {
    for (int m = -2; m <= 2; ++m) {
      double ar, ai, br, bi;
      REQUIRE(mixspec_coeffs_get(dxy, n, m, &ar, &ai) == MIXSPEC_OK);
      REQUIRE(mixspec_coeffs_get(h, n, m, &br, &bi) == MIXSPEC_OK);
      CHECK(std::abs(ar - br) <= 1e-15);
      CHECK(std::abs(ai - bi) <= 1e-15);
    }
  }
  mixspec_coeffs_free(h);
  mixspec_coeffs_free(dxy);
  mixspec_coeffs_free(dx);
  mixspec_coeffs_free(c);
  mixspec_field_free(f);
}

TEST_CASE("cantor sets through the c api") {
  mixspec_cantor* s = nullptr;
  REQUIRE(mixspec_cantor_build(20, 1.0, &s) == MIXSPEC_OK);
  double measure = 0.0;
  CHECK(mixspec_cantor_measure(s, &measure) == MIXSPEC_OK);
  CHECK(std::abs(measure - 0.5) <= 1e-6);
  int64_t count = 0;
  CHECK(mixspec_cantor_num_intervals(s, &count) == MIXSPEC_OK);
  CHECK(count == (1 << 20) - 1);
  double a = 0.0, b = 0.0;
  CHECK(mixspec_cantor_interval(s, 0, &a, &b) == MIXSPEC_OK);
  CHECK(a == 0.375);
  CHECK(b == 0.625);
  CHECK(mixspec_cantor_interval(s, count, &a, &b) == MIXSPEC_ERR_INVALID_ARGUMENT);
  CHECK(mixspec_cantor_validate(s) == MIXSPEC_OK);
  mixspec_cantor_free(s);

  CHECK(mixspec_cantor_build(0, 1.0, &s) == MIXSPEC_ERR_INVALID_ARGUMENT);
  CHECK(mixspec_cantor_build(4, 2.0, &s) == MIXSPEC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bumps series through the c api") {
  mixspec_series* s = nullptr;
  REQUIRE(mixspec_series_build("thm51", 6, 1.0, 8, &s) == MIXSPEC_OK);
  int terms = 0;
  CHECK(mixspec_series_num_terms(s, &terms) == MIXSPEC_OK);
  CHECK(terms == 8);
  double eps, ua, ub, va, vb, wx, wy;
  REQUIRE(mixspec_series_term(s, 0, &eps, &ua, &ub, &va, &vb, &wx, &wy) == MIXSPEC_OK);
  CHECK(ub - ua == eps);
  CHECK(vb - va == eps);
  double fx = 0.0;
  REQUIRE(mixspec_series_eval(s, wx, wy, "fx", &fx) == MIXSPEC_OK);
  CHECK(std::abs(std::abs(fx) - 4.235640422134889) <= 1e-12);
  CHECK(mixspec_series_eval(s, wx, wy, "curl", &fx) == MIXSPEC_ERR_INVALID_ARGUMENT);
  CHECK(mixspec_series_eval(s, 1.5, 0.5, "f", &fx) == MIXSPEC_ERR_PRECONDITION);
  CHECK(mixspec_series_term(s, 8, &eps, &ua, &ub, &va, &vb, &wx, &wy) ==
        MIXSPEC_ERR_INVALID_ARGUMENT);

  double bx = 0.0, by = 0.0;
  CHECK(mixspec_series_l1_bounds(s, &bx, &by) == MIXSPEC_OK);
  CHECK(std::abs(bx - 16.942561688539556) <= 1e-4);
  CHECK(std::abs(bx - by) <= 1e-4);

  CStr meta, csv;
  REQUIRE(mixspec_series_metadata_json(s, &meta.p) == MIXSPEC_OK);
  CHECK(meta.str().find("\"kind\":\"thm51\"") != std::string::npos);
  REQUIRE(mixspec_series_witness_csv(s, &csv.p) == MIXSPEC_OK);
  CHECK(csv.str().rfind("term,x,y,fx\n", 0) == 0);

  mixspec_field* f = nullptr;
  REQUIRE(mixspec_series_sample(s, 32, 32, &f) == MIXSPEC_OK);
  int nx = 0, ny = 0;
  CHECK(mixspec_field_dims(f, &nx, &ny) == MIXSPEC_OK);
  CHECK(nx == 32);
  mixspec_field_free(f);
  mixspec_series_free(s);

  CHECK(mixspec_series_build("thm99", 6, 1.0, 8, &s) == MIXSPEC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("zigzag series error surfaces through the c api") {
  mixspec_series* s = nullptr;
  REQUIRE(mixspec_series_build("thm52", 6, 1.0, 16, &s) == MIXSPEC_OK);
  double eps, ua, ub, va, vb, wx, wy;
  REQUIRE(mixspec_series_term(s, 0, &eps, &ua, &ub, &va, &vb, &wx, &wy) == MIXSPEC_OK);
  double v = 0.0;
  REQUIRE(mixspec_series_eval(s, wx, wy, "fx", &v) == MIXSPEC_OK);
  CHECK(v == 1.0);
  CHECK(mixspec_series_eval(s, eps, wy, "fx", &v) == MIXSPEC_ERR_UNDEFINED_VALUE);
  CHECK(std::string(mixspec_last_error()).find("break") != std::string::npos);
  double bx, by;
  CHECK(mixspec_series_l1_bounds(s, &bx, &by) == MIXSPEC_ERR_INVALID_ARGUMENT);
  mixspec_series_free(s);

  CHECK(mixspec_series_build("thm52", 6, 1.0, 64, &s) == MIXSPEC_ERR_CONSTRUCTION);
}

TEST_CASE("pipeline through the c api") {
  mixspec_report* r = nullptr;
  REQUIRE(mixspec_pipeline_run_builtin("sinsin", 64, 64, 8, 8, 1e-8, 1e-2, &r) == MIXSPEC_OK);
  int pass = 0;
  CHECK(mixspec_report_all_pass(r, &pass) == MIXSPEC_OK);
  CHECK(pass == 1);
  CStr first;
  CHECK(mixspec_report_first_failure(r, &first.p) == MIXSPEC_OK);
  CHECK(first.str().empty());
  CStr json;
  REQUIRE(mixspec_report_json(r, 0, &json.p) == MIXSPEC_OK);
  CHECK(json.str().find("\"checks\"") != std::string::npos);
  CHECK(json.str().find("\"timings_ms\":{}") != std::string::npos);
  mixspec_report_free(r);

  // a hopeless quadrature tolerance fails but still yields a report
  REQUIRE(mixspec_pipeline_run_builtin("sinsin", 64, 64, 8, 8, 1e-8, 1e-12, &r) == MIXSPEC_OK);
  CHECK(mixspec_report_all_pass(r, &pass) == MIXSPEC_OK);
  CHECK(pass == 0);
  CStr name;
  CHECK(mixspec_report_first_failure(r, &name.p) == MIXSPEC_OK);
  CHECK(name.str() == "f_vs_fx");
  mixspec_report_free(r);

  // builtin whose boundary row does not vanish trips the gate
  mixspec_field* f = nullptr;
  REQUIRE(mixspec_field_sample_builtin("sin", 32, 32, &f) == MIXSPEC_OK);
  CHECK(mixspec_pipeline_run_field(f, 4, 4, 1e-8, 1e-2, &r) == MIXSPEC_ERR_PRECONDITION);
  CHECK(std::string(mixspec_last_error()).find("boundary") != std::string::npos);
  mixspec_field_free(f);

  // field variant passes for a boundary-flat sample
  REQUIRE(mixspec_field_sample_builtin("sinsin", 64, 64, &f) == MIXSPEC_OK);
  REQUIRE(mixspec_pipeline_run_field(f, 8, 8, 1e-8, 1e-2, &r) == MIXSPEC_OK);
  CHECK(mixspec_report_all_pass(r, &pass) == MIXSPEC_OK);
  CHECK(pass == 1);
  mixspec_report_free(r);
  mixspec_field_free(f);

  int band = -2;
  CHECK(mixspec_builtin_band_limit("sinsin", &band) == MIXSPEC_OK);
  CHECK(band == 1);
  CHECK(mixspec_builtin_band_limit("thm52", &band) == MIXSPEC_OK);
  CHECK(band == -1);
}

TEST_CASE("holder checks through the c api") {
  double worst = 0.0;
  int pass = 0;
  REQUIRE(mixspec_holder_check_builtin("sin", 4096, kPi, 0, &worst, &pass) == MIXSPEC_OK);
  CHECK(pass == 1);
  CHECK(worst == doctest::Approx(1.2038366272071788).epsilon(1e-12));
  REQUIRE(mixspec_holder_check_builtin("sin", 4096, 0.1, 0, &worst, &pass) == MIXSPEC_OK);
  CHECK(pass == 0);

  double flat[16] = {0.0};
  REQUIRE(mixspec_holder_check(flat, 16, 1.0, 0, &worst, &pass) == MIXSPEC_OK);
  CHECK(worst == 0.0);
  CHECK(pass == 1);
  CHECK(mixspec_holder_check(flat, 1, 1.0, 0, &worst, &pass) == MIXSPEC_ERR_INVALID_ARGUMENT);
}
