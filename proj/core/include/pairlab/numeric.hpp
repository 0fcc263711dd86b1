#pragma once

#include <cmath>
#include <complex>

#include "pairlab/errors.hpp"

namespace pairlab {

using Complex = std::complex<double>;

/// Rejects NaN/inf components at API boundaries.
inline Complex require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + ": non-finite complex value");
  }
  return z;
}

inline double require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite value");
  return x;
}

/// Neumaier compensated summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, carry_, x);
    } else {
      auto re = sum_.real(), re_c = carry_.real();
      auto im = sum_.imag(), im_c = carry_.imag();
      add_real(re, re_c, x.real());
      add_real(im, im_c, x.imag());
      sum_ = T(re, im);
      carry_ = T(re_c, im_c);
    }
  }
  CompensatedSum& operator+=(T x) noexcept {
    add(x);
    return *this;
  }
  T value() const noexcept { return sum_ + carry_; }

 private:
  template <class R>
  static void add_real(R& sum, R& carry, R x) noexcept {
    const R t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T carry_{};
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// log Γ(z) on the principal branch (Lanczos, reflection for Re z < 1/2).
Complex log_gamma(Complex z);

/// Γ(z) for complex z away from the non-positive integers.
inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

}  // namespace pairlab
