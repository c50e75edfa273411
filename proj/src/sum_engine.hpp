#pragma once

#include "heun/types.hpp"

namespace heun::detail {

// Running sums of a stabilized term stream t_n = coeff_n * z^n:
// s0 = sum t_n, s1 = sum n t_n, s2 = sum n(n-1) t_n, so that
// f = s0, f' = s1/z, f'' = s2/z^2.
struct SumState {
  Complex s0{};
  Complex s1{};
  Complex s2{};

  void add(long n, Complex t) {
    const double dn = static_cast<double>(n);
    s0 += t;
    s1 += dn * t;
    s2 += dn * (dn - 1.0) * t;
  }
};

// Stopping rule: the derivative partial sums must be bitwise unchanged over
// the last two terms and the last two term magnitudes must be below machine
// epsilon.  Requiring two consecutive negligible terms (instead of one)
// prevents a spurious stop on an exactly-zero coefficient mid-series, e.g.
// b_1 = 0 whenever q = 0.
class Terminator {
 public:
  bool done(Complex deriv_sum, double term_mag) {
    const bool small = term_mag < kMachineEps;
    const bool stable = seen_ >= 2 && bit_equal(deriv_sum, d1_) &&
                        bit_equal(d1_, d2_);
    const bool stop = stable && small && small1_;
    d2_ = d1_;
    d1_ = deriv_sum;
    small1_ = small;
    ++seen_;
    return stop;
  }

 private:
  static bool bit_equal(Complex x, Complex y) {
    return x.real() == y.real() && x.imag() == y.imag();
  }
  Complex d1_{};
  Complex d2_{};
  bool small1_ = false;
  int seen_ = 0;
};

}  // namespace heun::detail
