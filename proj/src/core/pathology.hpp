#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "core/grid.hpp"

namespace mixspec {

struct Interval {
  double a;
  double b;
};

// Smith-Volterra style set: level n removes the centered open interval of
// length removal * 4^-n from each of the 2^(n-1) remaining closed intervals.
// Within a level every removed interval shares one stored length, so the
// equal-length condition is exact by representation.
class FatCantorSet {
 public:
  static FatCantorSet build(int levels, double removal);

  int levels() const { return static_cast<int>(levels_.size()); }
  double removal() const { return removal_; }
  double measure() const { return measure_; }

  long long num_intervals() const;
  int level_count(int level) const;      // 2^(level-1); level is 1-based
  double level_length(int level) const;  // removal * 4^-level

  Interval interval(int level, int k) const;     // k is 0-based, left to right
  Interval interval_flat(long long idx) const;   // level-major, left to right

  // Level-major, left to right, a before b for each interval.
  std::vector<double> endpoint_enumeration() const;

  // Conditions: endpoints strictly inside (0,1), all endpoints pairwise
  // distinct, equal lengths within a level, pairwise disjoint intervals,
  // removed total + measure = 1 within 1e-15.
  void validate() const;

 private:
  struct Level {
    double length;
    std::vector<double> lefts;
  };

  double removal_ = 0.0;
  double measure_ = 1.0;
  std::vector<Level> levels_;
};

// psi(t) = exp(4 - 1/(t(1-t))) on (0,1), zero elsewhere; peak value exactly 1
// at t = 1/2. Derivatives in closed form; extrema found once and cached.
struct BumpFunction {
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

  double peak_slope;      // A = max |d1|
  double peak_slope_arg;  // t in (0, 1/2) where d1 attains +A
  double max_abs_d2;
  double l1_d2;           // integral over (0,1) of |d2|
};

const BumpFunction& standard_bump();

enum class SeriesKind { bumps, zigzag };

enum class EvalWhat { f, fx, fy, fxx, fyy };

struct SeriesTerm {
  int n;          // 1-based term id
  int level;      // Cantor level the interval(s) came from
  double eps;     // bumps: interval length; zigzag: len^3 / n^2
  double len;     // y-interval length
  Interval u;     // x-support; zigzag terms span all of [0,1]
  Interval v;     // y-support
  double witness_x;
  double witness_y;
  // bumps only: rectangle n must sit inside this box (radius 0 = no check)
  double box_cx = 0.0;
  double box_cy = 0.0;
  double box_radius = 0.0;
};

class CounterexampleSeries {
 public:
  CounterexampleSeries(SeriesKind kind, const FatCantorSet& set, std::vector<SeriesTerm> terms);

  SeriesKind kind() const { return kind_; }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const SeriesTerm& term(int i) const { return terms_.at(i); }  // 0-based
  const std::vector<SeriesTerm>& terms() const { return terms_; }

  int cantor_levels() const { return cantor_levels_; }
  double cantor_removal() const { return cantor_removal_; }
  double cantor_measure() const { return cantor_measure_; }

  // 0-based index of the term whose x-support (bumps) or y-support (zigzag)
  // contains the coordinate, or -1.
  int active_term_by_x(double x) const;
  int active_term_by_y(double y) const;

  void validate() const;

 private:
  SeriesKind kind_;
  int cantor_levels_;
  double cantor_removal_;
  double cantor_measure_;
  std::vector<SeriesTerm> terms_;
  std::vector<std::pair<double, int>> by_x_;  // (u.a, index), sorted
  std::vector<std::pair<double, int>> by_y_;  // (v.a, index), sorted
};

// Inverse of the canonical pairing-based bijection N -> N^3; 1-based on both
// sides. three_tupling_inverse(1) = {1,1,1}.
std::array<int, 3> three_tupling_inverse(long long n);

// Sum of eps_n * psi-bump(x) * psi-bump(y) terms on greedily chosen pairs of
// equal-length removed intervals; rectangle n sits inside the 1/l-box around
// (p_k, p_m) for (k,m,l) = three_tupling_inverse(n) over the endpoint
// enumeration. Fails naming the first term with no admissible rectangle.
CounterexampleSeries construct_bumps(const FatCantorSet& set, int nterms);

// Sum of triangular-zigzag(x) * psi-bump(y) terms over the first nterms
// removed intervals; zigzag n has slope +-1, period 2*eps_n, range [0, eps_n],
// breaks at multiples of eps_n.
CounterexampleSeries construct_zigzag(const FatCantorSet& set, int nterms);

// Exact term-wise evaluation of the partial sum; at most one term is active
// at any point. Pre: (x,y) in [0,1]^2. For zigzag fx/fxx, x must avoid the
// active term's break set.
double eval_series(const CounterexampleSeries& s, double x, double y, EvalWhat what);

// (sup over y of integral |fxx| dx, sup over x of integral |fyy| dy).
// Bumps series only.
std::pair<double, double> l1_second_derivative_bound(const CounterexampleSeries& s);

// Affine [0,1]^2 -> [0,2pi)^2 adapter with chain-rule derivatives. Zigzag
// series omit d_x and d_xx (undefined on the break sets).
AnalyticFunction2D rescale_to_2pi(const CounterexampleSeries& s);

std::string series_kind_name(SeriesKind kind);  // wire names "thm51"/"thm52"
std::string series_metadata_json(const CounterexampleSeries& s);
std::string series_witness_csv(const CounterexampleSeries& s);

}  // namespace mixspec
