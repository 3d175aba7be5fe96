#include "core/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "json.hpp"

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace mixspec {

namespace {

constexpr double kExpUnderflow = -745.0;

std::pair<long long, long long> unpair(long long z) {
  // inverse of (a,b) -> (a+b)(a+b+1)/2 + b, 0-based
  long long w = static_cast<long long>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  while (w * (w + 1) / 2 > z) --w;
  long long b = z - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace

FatCantorSet FatCantorSet::build(int levels, double removal) {
  if (levels < 1 || levels > 24) {
    fail(ErrorCode::invalid_argument, "levels must be between 1 and 24, got " + std::to_string(levels));
  }
  if (!(removal > 0.0 && removal <= 1.0)) {
    fail(ErrorCode::invalid_argument, "removal fraction must be in (0, 1], got " + std::to_string(removal));
  }
  FatCantorSet set;
  set.removal_ = removal;
  std::vector<double> cur{0.0};
  double width = 1.0;
  double removed_total = 0.0;
  for (int n = 1; n <= levels; ++n) {
    double len = removal * std::ldexp(1.0, -2 * n);
    if (!(len < width)) {
      fail(ErrorCode::construction, "level " + std::to_string(n) + ": removed length exhausts the interval");
    }
    Level lev;
    lev.length = len;
    lev.lefts.reserve(cur.size());
    std::vector<double> next;
    next.reserve(cur.size() * 2);
    for (double lo : cur) {
      double a = lo + 0.5 * (width - len);
      double b = a + len;
      double hi = lo + width;
      if (!(a > lo && b > a && b < hi)) {
        fail(ErrorCode::construction,
             "level " + std::to_string(n) +
                 ": removed interval collides with an existing endpoint (removal too small at this depth)");
      }
      lev.lefts.push_back(a);
      next.push_back(lo);
      next.push_back(b);
    }
    removed_total += len * static_cast<double>(lev.lefts.size());
    set.levels_.push_back(std::move(lev));
    cur = std::move(next);
    width = 0.5 * (width - len);
  }
  set.measure_ = 1.0 - removed_total;
  return set;
}

long long FatCantorSet::num_intervals() const {
  long long total = 0;
  for (const Level& lev : levels_) total += static_cast<long long>(lev.lefts.size());
  return total;
}

int FatCantorSet::level_count(int level) const {
  if (level < 1 || level > levels()) fail(ErrorCode::invalid_argument, "level out of range");
  return static_cast<int>(levels_[level - 1].lefts.size());
}

double FatCantorSet::level_length(int level) const {
  if (level < 1 || level > levels()) fail(ErrorCode::invalid_argument, "level out of range");
  return levels_[level - 1].length;
}

Interval FatCantorSet::interval(int level, int k) const {
  if (level < 1 || level > levels()) fail(ErrorCode::invalid_argument, "level out of range");
  const Level& lev = levels_[level - 1];
  if (k < 0 || k >= static_cast<int>(lev.lefts.size())) {
    fail(ErrorCode::invalid_argument, "interval index out of range");
  }
  return {lev.lefts[k], lev.lefts[k] + lev.length};
}

Interval FatCantorSet::interval_flat(long long idx) const {
  if (idx < 0) fail(ErrorCode::invalid_argument, "interval index out of range");
  for (const Level& lev : levels_) {
    long long count = static_cast<long long>(lev.lefts.size());
    if (idx < count) return {lev.lefts[idx], lev.lefts[idx] + lev.length};
    idx -= count;
  }
  fail(ErrorCode::invalid_argument, "interval index out of range");
}

std::vector<double> FatCantorSet::endpoint_enumeration() const {
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(num_intervals()));
  for (const Level& lev : levels_) {
    for (double a : lev.lefts) {
      out.push_back(a);
      out.push_back(a + lev.length);
    }
  }
  return out;
}

void FatCantorSet::validate() const {
  std::vector<Interval> all;
  all.reserve(static_cast<std::size_t>(num_intervals()));
  for (int n = 1; n <= levels(); ++n) {
    const Level& lev = levels_[n - 1];
    if (!(lev.length > 0.0)) fail(ErrorCode::construction, "level " + std::to_string(n) + ": empty removal");
    if (static_cast<long long>(lev.lefts.size()) != (1LL << (n - 1))) {
      fail(ErrorCode::construction, "level " + std::to_string(n) + ": wrong interval count");
    }
    for (double a : lev.lefts) {
      double b = a + lev.length;
      if (!(a > 0.0 && a < b && b < 1.0)) {
        fail(ErrorCode::construction, "level " + std::to_string(n) + ": interval endpoints leave (0,1)");
      }
      all.push_back({a, b});
    }
  }
  std::sort(all.begin(), all.end(), [](const Interval& p, const Interval& q) { return p.a < q.a; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    // strict gap gives disjointness and global endpoint distinctness at once
    if (!(all[i - 1].b < all[i].a)) {
      fail(ErrorCode::construction, "removed intervals overlap or share an endpoint near a=" +
                                        std::to_string(all[i].a));
    }
  }
  KahanSum removed;
  for (const Level& lev : levels_) removed.add(lev.length * static_cast<double>(lev.lefts.size()));
  if (std::abs((1.0 - removed.value()) - measure_) > 1e-15) {
    fail(ErrorCode::construction, "removed total and measure are inconsistent");
  }
  if (!(measure_ > 0.0)) fail(ErrorCode::construction, "set has nonpositive measure");
}

double BumpFunction::value(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double s = t * (1.0 - t);
  double e = 4.0 - 1.0 / s;
  if (e < kExpUnderflow) return 0.0;
  return std::exp(e);
}

double BumpFunction::d1(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double s = t * (1.0 - t);
  double e = 4.0 - 1.0 / s;
  if (e < kExpUnderflow) return 0.0;
  double u = 1.0 - 2.0 * t;
  return std::exp(e) * u / (s * s);
}

double BumpFunction::d2(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double s = t * (1.0 - t);
  double e = 4.0 - 1.0 / s;
  if (e < kExpUnderflow) return 0.0;
  double u2 = (1.0 - 2.0 * t) * (1.0 - 2.0 * t);
  double s2 = s * s;
  return std::exp(e) * (u2 / (s2 * s2) - 2.0 / s2 - 2.0 * u2 / (s2 * s));
}

const BumpFunction& standard_bump() {
  static const BumpFunction bump = [] {
    BumpFunction b{};
    const int kScan = 20000;
    int best = 1;
    double best_v = -1.0;
    for (int k = 1; k < kScan / 2; ++k) {
      double t = static_cast<double>(k) / kScan;
      double v = b.d1(t);
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    b.peak_slope_arg = argmax_golden([&b](double t) { return b.d1(t); },
                                     (best - 1.0) / kScan, (best + 1.0) / kScan, 1e-14);
    b.peak_slope = b.d1(b.peak_slope_arg);

    best = 1;
    best_v = -1.0;
    for (int k = 1; k < kScan; ++k) {
      double t = static_cast<double>(k) / kScan;
      double v = std::abs(b.d2(t));
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    double arg = argmax_golden([&b](double t) { return std::abs(b.d2(t)); },
                               (best - 1.0) / kScan, (best + 1.0) / kScan, 1e-14);
    b.max_abs_d2 = std::abs(b.d2(arg));
    b.l1_d2 = integrate_adaptive([&b](double t) { return std::abs(b.d2(t)); }, 0.0, 1.0, 1e-10);
    return b;
  }();
  return bump;
}

CounterexampleSeries::CounterexampleSeries(SeriesKind kind, const FatCantorSet& set,
                                           std::vector<SeriesTerm> terms)
    : kind_(kind),
      cantor_levels_(set.levels()),
      cantor_removal_(set.removal()),
      cantor_measure_(set.measure()),
      terms_(std::move(terms)) {
  for (int i = 0; i < num_terms(); ++i) {
    if (kind_ == SeriesKind::bumps) by_x_.emplace_back(terms_[i].u.a, i);
    by_y_.emplace_back(terms_[i].v.a, i);
  }
  std::sort(by_x_.begin(), by_x_.end());
  std::sort(by_y_.begin(), by_y_.end());
}

namespace {

int lookup(const std::vector<std::pair<double, int>>& index, double coord,
           const std::vector<SeriesTerm>& terms, bool use_u) {
  auto it = std::upper_bound(index.begin(), index.end(),
                             std::make_pair(coord, std::numeric_limits<int>::max()));
  if (it == index.begin()) return -1;
  --it;
  const SeriesTerm& t = terms[it->second];
  const Interval& iv = use_u ? t.u : t.v;
  return (coord > iv.a && coord < iv.b) ? it->second : -1;
}

}  // namespace

int CounterexampleSeries::active_term_by_x(double x) const {
  if (kind_ != SeriesKind::bumps) {
    fail(ErrorCode::invalid_argument, "x-indexed term lookup applies to the bumps series");
  }
  return lookup(by_x_, x, terms_, true);
}

int CounterexampleSeries::active_term_by_y(double y) const {
  return lookup(by_y_, y, terms_, false);
}

void CounterexampleSeries::validate() const {
  for (const SeriesTerm& t : terms_) {
    if (!(t.eps > 0.0 && t.len > 0.0)) fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": degenerate scale");
    if (!(t.v.a > 0.0 && t.v.a < t.v.b && t.v.b < 1.0)) {
      fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": y-support leaves (0,1)");
    }
    if (kind_ == SeriesKind::bumps) {
      if (!(t.u.a > 0.0 && t.u.a < t.u.b && t.u.b < 1.0)) {
        fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": x-support leaves (0,1)");
      }
      if (t.eps != t.len) fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": unequal side lengths");
      if (t.box_radius > 0.0) {
        if (!(t.u.a > t.box_cx - t.box_radius && t.u.b < t.box_cx + t.box_radius &&
              t.v.a > t.box_cy - t.box_radius && t.v.b < t.box_cy + t.box_radius)) {
          fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": rectangle leaves its target box");
        }
      }
    } else {
      if (!(t.u.a == 0.0 && t.u.b == 1.0)) {
        fail(ErrorCode::construction, "term " + std::to_string(t.n) + ": zigzag terms span all of [0,1] in x");
      }
    }
  }
  auto check_disjoint = [&](const std::vector<std::pair<double, int>>& index, bool use_u) {
    for (std::size_t i = 1; i < index.size(); ++i) {
      const Interval& prev = use_u ? terms_[index[i - 1].second].u : terms_[index[i - 1].second].v;
      const Interval& next = use_u ? terms_[index[i].second].u : terms_[index[i].second].v;
      if (!(prev.b < next.a)) {
        fail(ErrorCode::construction, "terms " + std::to_string(terms_[index[i - 1].second].n) + " and " +
                                          std::to_string(terms_[index[i].second].n) +
                                          " have overlapping supports");
      }
    }
  };
  if (kind_ == SeriesKind::bumps) check_disjoint(by_x_, true);
  check_disjoint(by_y_, false);
  if (kind_ == SeriesKind::zigzag) {
    const BumpFunction& psi = standard_bump();
    double prev = std::numeric_limits<double>::infinity();
    for (const SeriesTerm& t : terms_) {
      double bound = t.eps * psi.max_abs_d2 / (t.len * t.len);
      if (!(bound < prev)) {
        fail(ErrorCode::construction,
             "term " + std::to_string(t.n) + ": second-derivative bound is not strictly decreasing");
      }
      prev = bound;
    }
  }
}

std::array<int, 3> three_tupling_inverse(long long n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "three_tupling_inverse: index must be positive");
  auto [p, c] = unpair(n - 1);
  auto [a, b] = unpair(p);
  return {static_cast<int>(a + 1), static_cast<int>(b + 1), static_cast<int>(c + 1)};
}

CounterexampleSeries construct_bumps(const FatCantorSet& set, int nterms) {
  if (nterms < 1) fail(ErrorCode::invalid_argument, "nterms must be positive");
  const BumpFunction& psi = standard_bump();
  std::vector<double> endpoints = set.endpoint_enumeration();

  struct Pool {
    double len;
    std::vector<double> lefts;
    std::vector<char> used;
  };
  std::vector<Pool> pools(set.levels());
  for (int lev = 1; lev <= set.levels(); ++lev) {
    Pool& p = pools[lev - 1];
    p.len = set.level_length(lev);
    p.lefts.reserve(set.level_count(lev));
    for (int k = 0; k < set.level_count(lev); ++k) p.lefts.push_back(set.interval(lev, k).a);
    p.used.assign(p.lefts.size(), 0);
  }

  std::vector<SeriesTerm> terms;
  terms.reserve(nterms);
  for (int n = 1; n <= nterms; ++n) {
    auto [k, m, l] = three_tupling_inverse(n);
    if (k > static_cast<long long>(endpoints.size()) || m > static_cast<long long>(endpoints.size())) {
      fail(ErrorCode::construction, "term " + std::to_string(n) +
                                        ": endpoint index exceeds the materialized enumeration");
    }
    double cx = endpoints[k - 1], cy = endpoints[m - 1];
    double rad = 1.0 / l;

    bool placed = false;
    for (int lev = set.levels(); lev >= 1 && !placed; --lev) {
      Pool& p = pools[lev - 1];
      std::vector<int> in_x, in_y;
      for (int idx = 0; idx < static_cast<int>(p.lefts.size()); ++idx) {
        if (p.used[idx]) continue;
        double a = p.lefts[idx], b = a + p.len;
        if (a > cx - rad && b < cx + rad && in_x.size() < 2) in_x.push_back(idx);
        if (a > cy - rad && b < cy + rad && in_y.size() < 2) in_y.push_back(idx);
        if (in_x.size() >= 2 && in_y.size() >= 2) break;
      }
      int iu = -1, iv = -1;
      if (!in_x.empty() && !in_y.empty()) {
        if (in_x[0] != in_y[0]) {
          iu = in_x[0];
          iv = in_y[0];
        } else if (in_y.size() > 1) {
          iu = in_x[0];
          iv = in_y[1];
        } else if (in_x.size() > 1) {
          iu = in_x[1];
          iv = in_y[0];
        }
      }
      if (iu < 0 || iv < 0) continue;

      p.used[iu] = p.used[iv] = 1;
      SeriesTerm t;
      t.n = n;
      t.level = lev;
      t.eps = p.len;
      t.len = p.len;
      t.u = {p.lefts[iu], p.lefts[iu] + p.len};
      t.v = {p.lefts[iv], p.lefts[iv] + p.len};
      t.witness_x = t.u.a + t.eps * psi.peak_slope_arg;
      t.witness_y = t.v.a + t.eps * 0.5;
      t.box_cx = cx;
      t.box_cy = cy;
      t.box_radius = rad;
      terms.push_back(t);
      placed = true;
    }
    if (!placed) {
      fail(ErrorCode::construction,
           "term " + std::to_string(n) + ": no admissible pair of equal-length removed intervals inside the 1/" +
               std::to_string(l) + " box around endpoint pair (" + std::to_string(k) + "," +
               std::to_string(m) + ")");
    }
  }
  CounterexampleSeries s(SeriesKind::bumps, set, std::move(terms));
  s.validate();
  return s;
}

CounterexampleSeries construct_zigzag(const FatCantorSet& set, int nterms) {
  if (nterms < 1) fail(ErrorCode::invalid_argument, "nterms must be positive");
  if (nterms > set.num_intervals()) {
    fail(ErrorCode::construction, "term " + std::to_string(set.num_intervals() + 1) + ": only " +
                                      std::to_string(set.num_intervals()) +
                                      " removed intervals are materialized");
  }
  std::vector<SeriesTerm> terms;
  terms.reserve(nterms);
  int n = 1;
  for (int lev = 1; lev <= set.levels() && n <= nterms; ++lev) {
    for (int k = 0; k < set.level_count(lev) && n <= nterms; ++k, ++n) {
      Interval iv = set.interval(lev, k);
      double len = set.level_length(lev);
      SeriesTerm t;
      t.n = n;
      t.level = lev;
      t.len = len;
      t.eps = len * len * len / (static_cast<double>(n) * n);
      t.u = {0.0, 1.0};
      t.v = iv;
      t.witness_x = 0.5 * t.eps;
      t.witness_y = iv.a + 0.5 * len;
      terms.push_back(t);
    }
  }
  CounterexampleSeries s(SeriesKind::zigzag, set, std::move(terms));
  s.validate();
  return s;
}

namespace {

double zigzag_value(double x, double eps) {
  double r = x / eps;
  double p = std::floor(r);
  double frac = r - p;
  bool up = std::fmod(p, 2.0) == 0.0;
  return eps * (up ? frac : 1.0 - frac);
}

double zigzag_slope(double x, double eps, int term_id) {
  double r = x / eps;
  double nearest = std::round(r);
  double tol = std::max(1e-9, r * 8.8817841970012523e-16);
  if (std::abs(r - nearest) <= tol) {
    fail(ErrorCode::undefined_value, "derivative undefined at break node x=" + std::to_string(x) +
                                         " of term " + std::to_string(term_id));
  }
  return std::fmod(std::floor(r), 2.0) == 0.0 ? 1.0 : -1.0;
}

}  // namespace

double eval_series(const CounterexampleSeries& s, double x, double y, EvalWhat what) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    fail(ErrorCode::precondition, "eval_series: point (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") leaves [0,1]^2");
  }
  const BumpFunction& psi = standard_bump();
  if (s.kind() == SeriesKind::bumps) {
    int ti = s.active_term_by_x(x);
    if (ti < 0) return 0.0;
    const SeriesTerm& t = s.term(ti);
    if (!(y > t.v.a && y < t.v.b)) return 0.0;
    double tx = (x - t.u.a) / t.eps;
    double ty = (y - t.v.a) / t.eps;
    switch (what) {
      case EvalWhat::f:
        return t.eps * psi.value(tx) * psi.value(ty);
      case EvalWhat::fx:
        return psi.d1(tx) * psi.value(ty);
      case EvalWhat::fy:
        return psi.value(tx) * psi.d1(ty);
      case EvalWhat::fxx:
        return psi.d2(tx) * psi.value(ty) / t.eps;
      case EvalWhat::fyy:
        return psi.value(tx) * psi.d2(ty) / t.eps;
    }
  } else {
    int ti = s.active_term_by_y(y);
    if (ti < 0) return 0.0;
    const SeriesTerm& t = s.term(ti);
    double ty = (y - t.v.a) / t.len;
    switch (what) {
      case EvalWhat::f:
        return zigzag_value(x, t.eps) * psi.value(ty);
      case EvalWhat::fx:
        return zigzag_slope(x, t.eps, t.n) * psi.value(ty);
      case EvalWhat::fy:
        return zigzag_value(x, t.eps) * psi.d1(ty) / t.len;
      case EvalWhat::fxx:
        zigzag_slope(x, t.eps, t.n);  // throws on the break set
        return 0.0;
      case EvalWhat::fyy:
        return zigzag_value(x, t.eps) * psi.d2(ty) / (t.len * t.len);
    }
  }
  fail(ErrorCode::invalid_argument, "eval_series: unknown derivative selector");
}

std::pair<double, double> l1_second_derivative_bound(const CounterexampleSeries& s) {
  if (s.kind() != SeriesKind::bumps) {
    fail(ErrorCode::invalid_argument, "second-derivative line bounds apply to the bumps series");
  }
  const BumpFunction& psi = standard_bump();
  double sup_fxx = 0.0, sup_fyy = 0.0;
  // the supremum line crosses the transverse interval at its center, psi(1/2)
  double peak = psi.value(0.5);
  for (const SeriesTerm& t : s.terms()) {
    double ix = integrate_adaptive(
        [&](double x) { return std::abs(psi.d2((x - t.u.a) / t.eps)) / t.eps; }, t.u.a, t.u.b, 1e-10);
    sup_fxx = std::max(sup_fxx, peak * ix);
    double iy = integrate_adaptive(
        [&](double y) { return std::abs(psi.d2((y - t.v.a) / t.eps)) / t.eps; }, t.v.a, t.v.b, 1e-10);
    sup_fyy = std::max(sup_fyy, peak * iy);
  }
  return {sup_fxx, sup_fyy};
}

AnalyticFunction2D rescale_to_2pi(const CounterexampleSeries& s) {
  auto sp = std::make_shared<const CounterexampleSeries>(s);
  AnalyticFunction2D f;
  f.eval = [sp](double x, double y) { return eval_series(*sp, x / kTwoPi, y / kTwoPi, EvalWhat::f); };
  f.d_y = [sp](double x, double y) {
    return eval_series(*sp, x / kTwoPi, y / kTwoPi, EvalWhat::fy) / kTwoPi;
  };
  f.d_yy = [sp](double x, double y) {
    return eval_series(*sp, x / kTwoPi, y / kTwoPi, EvalWhat::fyy) / (kTwoPi * kTwoPi);
  };
  if (s.kind() == SeriesKind::bumps) {
    f.d_x = [sp](double x, double y) {
      return eval_series(*sp, x / kTwoPi, y / kTwoPi, EvalWhat::fx) / kTwoPi;
    };
    f.d_xx = [sp](double x, double y) {
      return eval_series(*sp, x / kTwoPi, y / kTwoPi, EvalWhat::fxx) / (kTwoPi * kTwoPi);
    };
  }
  return f;
}

std::string series_kind_name(SeriesKind kind) {
  return kind == SeriesKind::bumps ? "thm51" : "thm52";
}

std::string series_metadata_json(const CounterexampleSeries& s) {
  const BumpFunction& psi = standard_bump();
  nlohmann::json j;
  j["kind"] = series_kind_name(s.kind());
  j["cantor"] = {{"levels", s.cantor_levels()},
                 {"removal", s.cantor_removal()},
                 {"measure", s.cantor_measure()}};
  j["bump"] = {{"peak_slope", psi.peak_slope},
               {"peak_slope_arg", psi.peak_slope_arg},
               {"max_abs_d2", psi.max_abs_d2},
               {"l1_d2", psi.l1_d2}};
  j["nterms"] = s.num_terms();
  nlohmann::json terms = nlohmann::json::array();
  for (const SeriesTerm& t : s.terms()) {
    nlohmann::json e = {{"n", t.n},
                        {"level", t.level},
                        {"eps", t.eps},
                        {"u", {t.u.a, t.u.b}},
                        {"v", {t.v.a, t.v.b}},
                        {"witness", {t.witness_x, t.witness_y}}};
    if (s.kind() == SeriesKind::bumps) {
      e["box"] = {t.box_cx, t.box_cy, t.box_radius};
    } else {
      e["period"] = 2.0 * t.eps;
      e["bound"] = t.eps * psi.max_abs_d2 / (t.len * t.len);
    }
    terms.push_back(std::move(e));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

std::string series_witness_csv(const CounterexampleSeries& s) {
  std::string out = "term,x,y,fx\n";
  char line[160];
  for (const SeriesTerm& t : s.terms()) {
    double fx = eval_series(s, t.witness_x, t.witness_y, EvalWhat::fx);
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", t.n, t.witness_x, t.witness_y, fx);
    out += line;
  }
  return out;
}

}  // namespace mixspec
