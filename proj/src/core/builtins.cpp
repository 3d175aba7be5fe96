#include "core/builtins.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/pathology.hpp"
#include "core/verify.hpp"

namespace mixspec {

namespace {

AnalyticFunction2D make_zero() {
  AnalyticFunction2D f;
  auto z = [](double, double) { return 0.0; };
  f.eval = z;
  f.d_x = z;
  f.d_y = z;
  f.d_xx = z;
  f.d_yy = z;
  f.d_xy = z;
  return f;
}

AnalyticFunction2D make_sinsin() {
  AnalyticFunction2D f;
  f.eval = [](double x, double y) { return std::sin(x) * std::sin(y); };
  f.d_x = [](double x, double y) { return std::cos(x) * std::sin(y); };
  f.d_y = [](double x, double y) { return std::sin(x) * std::cos(y); };
  f.d_xx = [](double x, double y) { return -std::sin(x) * std::sin(y); };
  f.d_yy = [](double x, double y) { return -std::sin(x) * std::sin(y); };
  f.d_xy = [](double x, double y) { return std::cos(x) * std::cos(y); };
  return f;
}

AnalyticFunction2D make_sin() {
  AnalyticFunction2D f;
  f.eval = [](double x, double) { return std::sin(x); };
  f.d_x = [](double x, double) { return std::cos(x); };
  f.d_y = [](double, double) { return 0.0; };
  f.d_xx = [](double x, double) { return -std::sin(x); };
  f.d_yy = [](double, double) { return 0.0; };
  f.d_xy = [](double, double) { return 0.0; };
  return f;
}

AnalyticFunction2D make_windowed_mix() {
  AnalyticFunction2D base;
  base.eval = [](double x, double y) {
    return std::sin(2 * x) * std::cos(y) + std::cos(x) * std::sin(3 * y);
  };
  base.d_x = [](double x, double y) {
    return 2 * std::cos(2 * x) * std::cos(y) - std::sin(x) * std::sin(3 * y);
  };
  base.d_y = [](double x, double y) {
    return -std::sin(2 * x) * std::sin(y) + 3 * std::cos(x) * std::cos(3 * y);
  };
  base.d_xx = [](double x, double y) {
    return -4 * std::sin(2 * x) * std::cos(y) - std::cos(x) * std::sin(3 * y);
  };
  base.d_yy = [](double x, double y) {
    return -std::sin(2 * x) * std::cos(y) - 9 * std::cos(x) * std::sin(3 * y);
  };
  base.d_xy = [](double x, double y) {
    return -2 * std::cos(2 * x) * std::sin(y) - 3 * std::sin(x) * std::cos(3 * y);
  };
  return apply_window(base, make_window(3));
}

}  // namespace

const std::vector<Builtin>& builtin_catalog() {
  static const std::vector<Builtin> catalog = [] {
    std::vector<Builtin> cat;
    cat.push_back({"zero", "constant zero", 0, make_zero()});
    cat.push_back({"sinsin", "sin(x) sin(y)", 1, make_sinsin()});
    cat.push_back({"sin", "sin(x), y-independent", 1, make_sin()});
    cat.push_back({"windowed-mix", "sin(2x)cos(y) + cos(x)sin(3y) under the order-3 plateau window",
                   -1, make_windowed_mix()});
    FatCantorSet set = FatCantorSet::build(6, 1.0);
    cat.push_back({"thm51", "first counterexample series (8 bump terms, level-6 set), rescaled", -1,
                   rescale_to_2pi(construct_bumps(set, 8))});
    cat.push_back({"thm52", "second counterexample series (16 zigzag terms, level-6 set), rescaled",
                   -1, rescale_to_2pi(construct_zigzag(set, 16))});
    return cat;
  }();
  return catalog;
}

const Builtin& find_builtin(const std::string& name) {
  for (const Builtin& b : builtin_catalog()) {
    if (b.name == name) return b;
  }
  std::string names;
  for (const Builtin& b : builtin_catalog()) {
    if (!names.empty()) names += ", ";
    names += b.name;
  }
  fail(ErrorCode::invalid_argument, "unknown builtin function '" + name + "' (available: " + names + ")");
}

}  // namespace mixspec
