#pragma once

#include <cmath>
#include <complex>

namespace modchar {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  /// Merge another compensated sum (used for ordered block reductions).
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }
  void reset(double v = 0.0) noexcept {
    sum_ = v;
    comp_ = 0.0;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add_real(double x) noexcept { re_.add(x); }
  void add(const CompensatedComplexSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
  void reset(std::complex<double> v = {}) noexcept {
    re_.reset(v.real());
    im_.reset(v.imag());
  }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace modchar
