// Command-line front end; talks to the library through the C API only.
// Exit codes: 0 success, 1 failed checks or runtime errors, 2 usage errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mixspec/mixspec.h"

namespace {

namespace fs = std::filesystem;

constexpr double kPi = 3.141592653589793;

struct CString {
  char* p = nullptr;
  ~CString() { mixspec_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

int exit_code_for(mixspec_status st) {
  return st == MIXSPEC_ERR_INVALID_ARGUMENT ? 2 : 1;
}

int report_error(mixspec_status st) {
  std::cerr << "error: " << mixspec_last_error() << "\n";
  return exit_code_for(st);
}

// Writes via a sibling temp file and renames, so readers never observe a
// partially written artifact.
bool write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot open " << tmp.string() << " for writing\n";
      return false;
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      std::cerr << "error: short write to " << tmp.string() << "\n";
      return false;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::cerr << "error: cannot rename " << tmp.string() << " to " << path.string() << ": "
              << ec.message() << "\n";
    return false;
  }
  return true;
}

// Emits to the file when a path was given, otherwise to stdout. Returns an
// exit code.
int emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content << "\n";
    return 0;
  }
  return write_atomic(out_path, content) ? 0 : 1;
}

struct VerifyArgs {
  std::string function;
  std::string grid_path;
  int nx = 64;
  int ny = -1;
  int nmax = 8;
  int mmax = -1;
  double tol_spectral = 1e-8;
  double tol_quad = 1e-2;
  std::string out;
  bool timings = false;
};

int run_verify(const VerifyArgs& a) {
  int ny = a.ny < 0 ? a.nx : a.ny;
  int mmax = a.mmax < 0 ? a.nmax : a.mmax;

  if (a.function.empty() == a.grid_path.empty()) {
    std::cerr << "error: verify needs exactly one of --function or --grid\n";
    return 2;
  }

  mixspec_report* rep = nullptr;
  mixspec_status st;
  if (!a.function.empty()) {
    if (2 * a.nmax + 1 > a.nx || 2 * mmax + 1 > ny) {
      std::cerr << "error: coefficient box (" << a.nmax << "," << mmax
                << ") does not fit the " << a.nx << "x" << ny
                << " grid; need nx >= 2*nmax+1 and ny >= 2*mmax+1\n";
      return 2;
    }
    st = mixspec_pipeline_run_builtin(a.function.c_str(), a.nx, ny, a.nmax, mmax,
                                      a.tol_spectral, a.tol_quad, &rep);
  } else {
    mixspec_field* f = nullptr;
    st = mixspec_field_read_csv(a.grid_path.c_str(), &f);
    if (st != MIXSPEC_OK) return report_error(st);
    int gnx = 0, gny = 0;
    mixspec_field_dims(f, &gnx, &gny);
    if (2 * a.nmax + 1 > gnx || 2 * mmax + 1 > gny) {
      std::cerr << "error: coefficient box (" << a.nmax << "," << mmax
                << ") does not fit the " << gnx << "x" << gny << " grid in " << a.grid_path
                << "\n";
      mixspec_field_free(f);
      return 2;
    }
    st = mixspec_pipeline_run_field(f, a.nmax, mmax, a.tol_spectral, a.tol_quad, &rep);
    mixspec_field_free(f);
  }
  if (st != MIXSPEC_OK) return report_error(st);

  CString json;
  st = mixspec_report_json(rep, a.timings ? 1 : 0, &json.p);
  if (st != MIXSPEC_OK) {
    mixspec_report_free(rep);
    return report_error(st);
  }
  int all_pass = 0;
  mixspec_report_all_pass(rep, &all_pass);
  CString first;
  mixspec_report_first_failure(rep, &first.p);
  mixspec_report_free(rep);

  // The report is written even when a check failed, so the artifact documents
  // the failure.
  int rc = emit(a.out, json.str());
  if (rc != 0) return rc;
  if (!all_pass) {
    std::cerr << "check failed: " << first.str() << "\n";
    return 1;
  }
  return 0;
}

struct PathologyArgs {
  std::string kind;
  int levels = 6;
  int terms = -1;
  double removal = 1.0;
  int nx = 64;
  int ny = -1;
  std::string out;
};

int run_pathology(const PathologyArgs& a) {
  if (a.kind != "thm51" && a.kind != "thm52") {
    std::cerr << "error: unknown --kind '" << a.kind << "' (expected thm51 or thm52)\n";
    return 2;
  }
  int terms = a.terms > 0 ? a.terms : (a.kind == "thm51" ? 8 : 16);
  int ny = a.ny < 0 ? a.nx : a.ny;

  mixspec_series* s = nullptr;
  mixspec_status st = mixspec_series_build(a.kind.c_str(), a.levels, a.removal, terms, &s);
  if (st != MIXSPEC_OK) return report_error(st);

  CString meta, witnesses;
  st = mixspec_series_metadata_json(s, &meta.p);
  if (st == MIXSPEC_OK) st = mixspec_series_witness_csv(s, &witnesses.p);
  CString grid_csv;
  if (st == MIXSPEC_OK) {
    mixspec_field* f = nullptr;
    st = mixspec_series_sample(s, a.nx, ny, &f);
    if (st == MIXSPEC_OK) {
      st = mixspec_field_csv(f, &grid_csv.p);
      mixspec_field_free(f);
    }
  }
  mixspec_series_free(s);
  if (st != MIXSPEC_OK) return report_error(st);

  fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << dir.string() << ": " << ec.message() << "\n";
    return 1;
  }
  if (!write_atomic(dir / "metadata.json", meta.str())) return 1;
  if (!write_atomic(dir / "witnesses.csv", witnesses.str())) return 1;
  if (!write_atomic(dir / "grid.csv", grid_csv.str())) return 1;
  return 0;
}

struct DumpArgs {
  std::string what;
  std::string function;
  int nx = 64;
  int ny = -1;
  int nmax = 8;
  int mmax = -1;
  double c = kPi;
  std::int64_t samples = 4096;
  std::uint64_t seed = 0;
  std::string out;
};

int run_dump(const DumpArgs& a) {
  int ny = a.ny < 0 ? a.nx : a.ny;
  int mmax = a.mmax < 0 ? a.nmax : a.mmax;
  if (a.function.empty()) {
    std::cerr << "error: dump needs --function\n";
    return 2;
  }

  if (a.what == "grid") {
    mixspec_field* f = nullptr;
    mixspec_status st = mixspec_field_sample_builtin(a.function.c_str(), a.nx, ny, &f);
    if (st != MIXSPEC_OK) return report_error(st);
    CString csv;
    st = mixspec_field_csv(f, &csv.p);
    mixspec_field_free(f);
    if (st != MIXSPEC_OK) return report_error(st);
    return emit(a.out, csv.str());
  }

  if (a.what == "coeffs") {
    if (2 * a.nmax + 1 > a.nx || 2 * mmax + 1 > ny) {
      std::cerr << "error: coefficient box (" << a.nmax << "," << mmax
                << ") does not fit the " << a.nx << "x" << ny << " grid\n";
      return 2;
    }
    mixspec_field* f = nullptr;
    mixspec_status st = mixspec_field_sample_builtin(a.function.c_str(), a.nx, ny, &f);
    if (st != MIXSPEC_OK) return report_error(st);
    mixspec_coeffs* c = nullptr;
    st = mixspec_analyze(f, a.nmax, mmax, &c);
    mixspec_field_free(f);
    if (st != MIXSPEC_OK) return report_error(st);
    CString json;
    st = mixspec_coeffs_json(c, &json.p);
    mixspec_coeffs_free(c);
    if (st != MIXSPEC_OK) return report_error(st);
    return emit(a.out, json.str());
  }

  if (a.what == "holder") {
    double worst = 0.0;
    int pass = 0;
    mixspec_status st = mixspec_holder_check_builtin(a.function.c_str(), a.samples, a.c,
                                                     a.seed, &worst, &pass);
    if (st != MIXSPEC_OK) return report_error(st);
    nlohmann::json j;
    j["c"] = a.c;
    j["count"] = a.samples;
    j["pass"] = pass != 0;
    j["worst_ratio"] = worst;
    return emit(a.out, j.dump());
  }

  std::cerr << "error: unknown --what '" << a.what << "' (expected coeffs, grid or holder)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-derivative spectral verification toolkit"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification pipeline");
  verify->add_option("--function", va.function, "Builtin function name");
  verify->add_option("--grid", va.grid_path, "CSV grid file to verify instead of a builtin");
  verify->add_option("--nx", va.nx, "Grid size in x");
  verify->add_option("--ny", va.ny, "Grid size in y (default: nx)");
  verify->add_option("--nmax", va.nmax, "Coefficient box half-width in n");
  verify->add_option("--mmax", va.mmax, "Coefficient box half-width in m (default: nmax)");
  verify->add_option("--tol-spectral", va.tol_spectral, "Tolerance for spectral checks");
  verify->add_option("--tol-quad", va.tol_quad, "Tolerance for quadrature checks");
  verify->add_option("--out", va.out, "Report path (default: stdout)");
  verify->add_flag("--timings", va.timings, "Include timings in the report");

  PathologyArgs pa;
  CLI::App* pathology = app.add_subcommand("pathology", "Construct a counterexample series");
  pathology->add_option("--kind", pa.kind, "Series kind: thm51 or thm52")->required();
  pathology->add_option("--levels", pa.levels, "Cantor construction depth");
  pathology->add_option("--terms", pa.terms, "Number of series terms (default: 8 or 16)");
  pathology->add_option("--removal", pa.removal, "Cantor removal parameter");
  pathology->add_option("--nx", pa.nx, "Sample grid size in x");
  pathology->add_option("--ny", pa.ny, "Sample grid size in y (default: nx)");
  pathology->add_option("--out", pa.out, "Output directory")->required();

  DumpArgs da;
  CLI::App* dump = app.add_subcommand("dump", "Dump coefficients, grids or check data");
  dump->add_option("--what", da.what, "One of: coeffs, grid, holder")->required();
  dump->add_option("--function", da.function, "Builtin function name");
  dump->add_option("--nx", da.nx, "Grid size in x");
  dump->add_option("--ny", da.ny, "Grid size in y (default: nx)");
  dump->add_option("--nmax", da.nmax, "Coefficient box half-width in n");
  dump->add_option("--mmax", da.mmax, "Coefficient box half-width in m (default: nmax)");
  dump->add_option("--c", da.c, "Squared-modulus constant for the holder check");
  dump->add_option("--samples", da.samples, "Sample count for the holder check");
  dump->add_option("--seed", da.seed, "Seed for randomized pair selection");
  dump->add_option("--out", da.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (verify->parsed()) return run_verify(va);
  if (pathology->parsed()) return run_pathology(pa);
  return run_dump(da);
}
