#include "mixspec/mixspec.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "core/builtins.hpp"
#include "core/calculus.hpp"
#include "core/error.hpp"
#include "core/fourier.hpp"
#include "core/grid.hpp"
#include "core/pathology.hpp"
#include "core/verify.hpp"

struct mixspec_field {
  mixspec::GridFunction2D value;
};

struct mixspec_coeffs {
  mixspec::FourierCoeffs2D value;
};

struct mixspec_cantor {
  mixspec::FatCantorSet value;
};

struct mixspec_series {
  mixspec::CounterexampleSeries value;
};

struct mixspec_report {
  mixspec::VerificationReport value;
};

namespace {

thread_local std::string g_last_error;

mixspec_status to_status(mixspec::ErrorCode code) {
  using mixspec::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return MIXSPEC_ERR_INVALID_ARGUMENT;
    case ErrorCode::precondition: return MIXSPEC_ERR_PRECONDITION;
    case ErrorCode::nonfinite: return MIXSPEC_ERR_NONFINITE;
    case ErrorCode::construction: return MIXSPEC_ERR_CONSTRUCTION;
    case ErrorCode::undefined_value: return MIXSPEC_ERR_UNDEFINED_VALUE;
    case ErrorCode::io: return MIXSPEC_ERR_IO;
  }
  return MIXSPEC_ERR_UNKNOWN;
}

template <typename Fn>
mixspec_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MIXSPEC_OK;
  } catch (const mixspec::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MIXSPEC_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return MIXSPEC_ERR_UNKNOWN;
  }
}

mixspec_status arg_error(const char* msg) {
  g_last_error = msg;
  return MIXSPEC_ERR_INVALID_ARGUMENT;
}

char* alloc_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mixspec::EvalWhat parse_what(const char* what) {
  std::string w = what ? what : "";
  if (w == "f") return mixspec::EvalWhat::f;
  if (w == "fx") return mixspec::EvalWhat::fx;
  if (w == "fy") return mixspec::EvalWhat::fy;
  if (w == "fxx") return mixspec::EvalWhat::fxx;
  if (w == "fyy") return mixspec::EvalWhat::fyy;
  mixspec::fail(mixspec::ErrorCode::invalid_argument,
                "unknown evaluation target '" + w + "' (expected f, fx, fy, fxx or fyy)");
}

}  // namespace

extern "C" {

const char* mixspec_version(void) { return "0.1.0"; }

const char* mixspec_last_error(void) { return g_last_error.c_str(); }

void mixspec_string_free(char* s) { std::free(s); }

mixspec_status mixspec_field_sample_builtin(const char* name, int nx, int ny,
                                            mixspec_field** out) {
  if (!name || !out) return arg_error("null argument");
  return guarded([&] {
    const mixspec::Builtin& b = mixspec::find_builtin(name);
    *out = new mixspec_field{mixspec::sample(b.fn, mixspec::make_grid(nx, ny))};
  });
}

mixspec_status mixspec_field_read_csv(const char* path, mixspec_field** out) {
  if (!path || !out) return arg_error("null argument");
  return guarded([&] { *out = new mixspec_field{mixspec::read_csv(path)}; });
}

mixspec_status mixspec_field_csv(const mixspec_field* f, char** out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] { *out = alloc_string(mixspec::to_csv(f->value)); });
}

mixspec_status mixspec_field_dims(const mixspec_field* f, int* nx, int* ny) {
  if (!f || !nx || !ny) return arg_error("null argument");
  *nx = f->value.nx();
  *ny = f->value.ny();
  return MIXSPEC_OK;
}

mixspec_status mixspec_field_value(const mixspec_field* f, int i, int j, double* out) {
  if (!f || !out) return arg_error("null argument");
  if (i < 0 || i >= f->value.nx() || j < 0 || j >= f->value.ny()) {
    return arg_error("node index out of range");
  }
  *out = f->value(i, j);
  return MIXSPEC_OK;
}

mixspec_status mixspec_field_l2(const mixspec_field* f, double* out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] { *out = mixspec::l2_norm(f->value); });
}

void mixspec_field_free(mixspec_field* f) { delete f; }

mixspec_status mixspec_builtin_band_limit(const char* name, int* out) {
  if (!name || !out) return arg_error("null argument");
  return guarded([&] { *out = mixspec::find_builtin(name).band_limit; });
}

mixspec_status mixspec_analyze(const mixspec_field* f, int nmax, int mmax,
                               mixspec_coeffs** out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] { *out = new mixspec_coeffs{mixspec::analyze(f->value, nmax, mmax)}; });
}

mixspec_status mixspec_coeffs_dims(const mixspec_coeffs* c, int* nmax, int* mmax) {
  if (!c || !nmax || !mmax) return arg_error("null argument");
  *nmax = c->value.nmax();
  *mmax = c->value.mmax();
  return MIXSPEC_OK;
}

mixspec_status mixspec_coeffs_get(const mixspec_coeffs* c, int n, int m, double* re,
                                  double* im) {
  if (!c || !re || !im) return arg_error("null argument");
  return guarded([&] {
    std::complex<double> v = c->value.at(n, m);
    *re = v.real();
    *im = v.imag();
  });
}

mixspec_status mixspec_synthesize(const mixspec_coeffs* c, int nx, int ny,
                                  mixspec_field** out) {
  if (!c || !out) return arg_error("null argument");
  return guarded([&] {
    *out = new mixspec_field{mixspec::synthesize(c->value, mixspec::make_grid(nx, ny))};
  });
}

mixspec_status mixspec_derivative_x(const mixspec_coeffs* c, mixspec_coeffs** out) {
  if (!c || !out) return arg_error("null argument");
  return guarded([&] { *out = new mixspec_coeffs{mixspec::derivative_x(c->value)}; });
}

mixspec_status mixspec_derivative_y(const mixspec_coeffs* c, mixspec_coeffs** out) {
  if (!c || !out) return arg_error("null argument");
  return guarded([&] { *out = new mixspec_coeffs{mixspec::derivative_y(c->value)}; });
}

mixspec_status mixspec_mixed_operator(const mixspec_coeffs* c, mixspec_coeffs** out) {
  if (!c || !out) return arg_error("null argument");
  return guarded([&] { *out = new mixspec_coeffs{mixspec::mixed_operator(c->value)}; });
}

mixspec_status mixspec_decay_norms(const mixspec_coeffs* c, double* s4x, double* s4y,
                                   double* sxy) {
  if (!c || !s4x || !s4y || !sxy) return arg_error("null argument");
  mixspec::DecayNorms d = mixspec::decay_norms(c->value);
  *s4x = d.s4x;
  *s4y = d.s4y;
  *sxy = d.sxy;
  return MIXSPEC_OK;
}

mixspec_status mixspec_coeffs_json(const mixspec_coeffs* c, char** out) {
  if (!c || !out) return arg_error("null argument");
  return guarded([&] { *out = alloc_string(mixspec::coeffs_to_json(c->value)); });
}

void mixspec_coeffs_free(mixspec_coeffs* c) { delete c; }

mixspec_status mixspec_cantor_build(int levels, double removal, mixspec_cantor** out) {
  if (!out) return arg_error("null argument");
  return guarded([&] {
    *out = new mixspec_cantor{mixspec::FatCantorSet::build(levels, removal)};
  });
}

mixspec_status mixspec_cantor_measure(const mixspec_cantor* s, double* out) {
  if (!s || !out) return arg_error("null argument");
  *out = s->value.measure();
  return MIXSPEC_OK;
}

mixspec_status mixspec_cantor_num_intervals(const mixspec_cantor* s, int64_t* out) {
  if (!s || !out) return arg_error("null argument");
  *out = s->value.num_intervals();
  return MIXSPEC_OK;
}

mixspec_status mixspec_cantor_interval(const mixspec_cantor* s, int64_t index, double* a,
                                       double* b) {
  if (!s || !a || !b) return arg_error("null argument");
  return guarded([&] {
    mixspec::Interval iv = s->value.interval_flat(index);
    *a = iv.a;
    *b = iv.b;
  });
}

mixspec_status mixspec_cantor_validate(const mixspec_cantor* s) {
  if (!s) return arg_error("null argument");
  return guarded([&] { s->value.validate(); });
}

void mixspec_cantor_free(mixspec_cantor* s) { delete s; }

mixspec_status mixspec_series_build(const char* kind, int levels, double removal,
                                    int nterms, mixspec_series** out) {
  if (!kind || !out) return arg_error("null argument");
  return guarded([&] {
    std::string k = kind;
    mixspec::FatCantorSet set = mixspec::FatCantorSet::build(levels, removal);
    if (k == "thm51") {
      *out = new mixspec_series{mixspec::construct_bumps(set, nterms)};
    } else if (k == "thm52") {
      *out = new mixspec_series{mixspec::construct_zigzag(set, nterms)};
    } else {
      mixspec::fail(mixspec::ErrorCode::invalid_argument,
                    "unknown series kind '" + k + "' (expected thm51 or thm52)");
    }
  });
}

mixspec_status mixspec_series_num_terms(const mixspec_series* s, int* out) {
  if (!s || !out) return arg_error("null argument");
  *out = s->value.num_terms();
  return MIXSPEC_OK;
}

mixspec_status mixspec_series_term(const mixspec_series* s, int index, double* eps,
                                   double* ua, double* ub, double* va, double* vb,
                                   double* witness_x, double* witness_y) {
  if (!s || !eps || !ua || !ub || !va || !vb || !witness_x || !witness_y) {
    return arg_error("null argument");
  }
  if (index < 0 || index >= s->value.num_terms()) return arg_error("term index out of range");
  const mixspec::SeriesTerm& t = s->value.term(index);
  *eps = t.eps;
  *ua = t.u.a;
  *ub = t.u.b;
  *va = t.v.a;
  *vb = t.v.b;
  *witness_x = t.witness_x;
  *witness_y = t.witness_y;
  return MIXSPEC_OK;
}

mixspec_status mixspec_series_eval(const mixspec_series* s, double x, double y,
                                   const char* what, double* out) {
  if (!s || !what || !out) return arg_error("null argument");
  return guarded([&] { *out = mixspec::eval_series(s->value, x, y, parse_what(what)); });
}

mixspec_status mixspec_series_l1_bounds(const mixspec_series* s, double* sup_fxx,
                                        double* sup_fyy) {
  if (!s || !sup_fxx || !sup_fyy) return arg_error("null argument");
  return guarded([&] {
    auto [bx, by] = mixspec::l1_second_derivative_bound(s->value);
    *sup_fxx = bx;
    *sup_fyy = by;
  });
}

mixspec_status mixspec_series_metadata_json(const mixspec_series* s, char** out) {
  if (!s || !out) return arg_error("null argument");
  return guarded([&] { *out = alloc_string(mixspec::series_metadata_json(s->value)); });
}

mixspec_status mixspec_series_witness_csv(const mixspec_series* s, char** out) {
  if (!s || !out) return arg_error("null argument");
  return guarded([&] { *out = alloc_string(mixspec::series_witness_csv(s->value)); });
}

mixspec_status mixspec_series_sample(const mixspec_series* s, int nx, int ny,
                                     mixspec_field** out) {
  if (!s || !out) return arg_error("null argument");
  return guarded([&] {
    mixspec::AnalyticFunction2D f = mixspec::rescale_to_2pi(s->value);
    *out = new mixspec_field{mixspec::sample(f, mixspec::make_grid(nx, ny))};
  });
}

void mixspec_series_free(mixspec_series* s) { delete s; }

mixspec_status mixspec_pipeline_run_builtin(const char* name, int nx, int ny, int nmax,
                                            int mmax, double tol_spectral, double tol_quad,
                                            mixspec_report** out) {
  if (!name || !out) return arg_error("null argument");
  return guarded([&] {
    const mixspec::Builtin& b = mixspec::find_builtin(name);
    mixspec::PipelineOptions opt;
    opt.tol.spectral = tol_spectral;
    opt.tol.quad = tol_quad;
    opt.band_limit = b.band_limit;
    mixspec::PipelineResult r =
        mixspec::run_pipeline(b.fn, mixspec::make_grid(nx, ny), nmax, mmax, opt);
    *out = new mixspec_report{std::move(r.report)};
  });
}

mixspec_status mixspec_pipeline_run_field(const mixspec_field* f, int nmax, int mmax,
                                          double tol_spectral, double tol_quad,
                                          mixspec_report** out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] {
    mixspec::PipelineOptions opt;
    opt.tol.spectral = tol_spectral;
    opt.tol.quad = tol_quad;
    opt.gate_quad = true;
    mixspec::PipelineResult r = mixspec::run_pipeline(f->value, nmax, mmax, opt);
    *out = new mixspec_report{std::move(r.report)};
  });
}

mixspec_status mixspec_report_json(const mixspec_report* r, int include_timings,
                                   char** out) {
  if (!r || !out) return arg_error("null argument");
  return guarded([&] {
    *out = alloc_string(mixspec::serialize_report(r->value, include_timings != 0));
  });
}

mixspec_status mixspec_report_all_pass(const mixspec_report* r, int* out) {
  if (!r || !out) return arg_error("null argument");
  *out = r->value.all_pass() ? 1 : 0;
  return MIXSPEC_OK;
}

mixspec_status mixspec_report_first_failure(const mixspec_report* r, char** out) {
  if (!r || !out) return arg_error("null argument");
  return guarded([&] { *out = alloc_string(r->value.first_failure()); });
}

void mixspec_report_free(mixspec_report* r) { delete r; }

mixspec_status mixspec_holder_check(const double* samples, int64_t count, double c,
                                    uint64_t seed, double* worst, int* pass) {
  if (!samples || !worst || !pass) return arg_error("null argument");
  if (count < 2) return arg_error("holder check needs at least 2 samples");
  return guarded([&] {
    std::vector<double> g(samples, samples + count);
    mixspec::HolderResult r = mixspec::holder_modulus(g, c, seed);
    *worst = r.worst_ratio;
    *pass = r.pass ? 1 : 0;
  });
}

mixspec_status mixspec_holder_check_builtin(const char* name, int64_t count, double c,
                                            uint64_t seed, double* worst, int* pass) {
  if (!name || !worst || !pass) return arg_error("null argument");
  if (count < 2) return arg_error("holder check needs at least 2 samples");
  return guarded([&] {
    const mixspec::Builtin& b = mixspec::find_builtin(name);
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
      double x = mixspec::kTwoPi * static_cast<double>(i) / static_cast<double>(count);
      double v = b.fn.eval(x, 0.0);
      if (!std::isfinite(v)) {
        mixspec::fail(mixspec::ErrorCode::nonfinite,
                      "builtin produced a non-finite value at x = " + std::to_string(x));
      }
      g[static_cast<std::size_t>(i)] = v;
    }
    mixspec::HolderResult r = mixspec::holder_modulus(g, c, seed);
    *worst = r.worst_ratio;
    *pass = r.pass ? 1 : 0;
  });
}

}  // extern "C"
