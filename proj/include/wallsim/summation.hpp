#pragma once

#include <cmath>
#include <complex>

namespace wallsim {

/// Neumaier-compensated accumulator. Real and imaginary parts are
/// compensated independently.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  T value() const noexcept { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> x) noexcept {
    re_.add(x.real());
    im_.add(x.imag());
  }

  std::complex<T> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace wallsim
