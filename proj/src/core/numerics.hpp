#pragma once

#include <complex>
#include <functional>

namespace mixspec {

// Compensated (Kahan) accumulator. Sums here routinely mix O(1) terms with
// large index weights, and several downstream checks assert at the 1e-12
// level, so plain sequential accumulation is not accurate enough.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanSumComplex {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

// Adaptive Simpson quadrature of f over [a,b] to absolute tolerance tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

// Location of the maximum of f on [a,b] by golden-section search; f is
// assumed unimodal on the bracket. Returns the abscissa.
double argmax_golden(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12);

}  // namespace mixspec
