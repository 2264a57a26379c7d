// Shared aliases, numeric helpers and error types used across the library.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinloc {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209;
inline constexpr double kPi = 3.14159265358979323846264338;

// Numerical-degeneracy failures (CLI exit code 3).
struct NumericalDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature refinement hit the node cap without meeting the tolerance.
struct NonConvergence : NumericalDegeneracy {
  using NumericalDegeneracy::NumericalDegeneracy;
};

// Neumaier-compensated accumulator.
template <typename T = double>
class Kahan {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
};

// Row of binomial coefficients C(n,0..n) via the multiplicative recurrence.
// long double keeps rows exact-to-rounding far past the double overflow point
// (C(1600,800) ~ 1e480 still fits).
std::vector<long double> binomial_row(int n);

double binomial(int n, int k);
double log_binomial(int n, int k);

double digamma(double x);

bool is_integer_q(double q, int* rounded = nullptr);

// SplitMix64: counter-based stream derived from a 64-bit master seed.
// Used everywhere randomness is needed so that (seed, index) fully determines
// a sample independent of threading or platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform01();            // in (0,1]
  double normal();               // standard normal, Box-Muller
  cplx normal_cplx();            // independent N(0,1) real and imaginary parts

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace spinloc
