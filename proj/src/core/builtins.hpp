#pragma once

#include <string>
#include <vector>

#include "core/grid.hpp"

namespace mixspec {

struct Builtin {
  std::string name;
  std::string description;
  int band_limit;  // -1: not a trigonometric polynomial
  AnalyticFunction2D fn;
};

const std::vector<Builtin>& builtin_catalog();
const Builtin& find_builtin(const std::string& name);

}  // namespace mixspec
