#include "spinloc/common.hpp"

#include <cmath>

namespace spinloc {

std::vector<long double> binomial_row(int n) {
  std::vector<long double> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1.0L;
  for (int k = 1; k <= n; ++k)
    row[k] = row[k - 1] * static_cast<long double>(n - k + 1) / k;
  return row;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  long double c = 1.0L;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return static_cast<double>(c);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (n <= 1000) {
    if (k > n - k) k = n - k;
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<double>(std::log(c));
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double digamma(double x) {
  // recurrence up to x >= 10, then the asymptotic series
  double r = 0.0;
  while (x < 10.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  double s = f * (1.0 / 12 -
             f * (1.0 / 120 -
             f * (1.0 / 252 -
             f * (1.0 / 240 -
             f * (1.0 / 132 -
             f * (691.0 / 32760 -
             f * (1.0 / 12)))))));
  return r + std::log(x) - 0.5 / x - s;
}

bool is_integer_q(double q, int* rounded) {
  const double r = std::round(q);
  if (std::abs(q - r) < 1e-12 && r >= 1.0 && r < 2147483000.0) {
    if (rounded) *rounded = static_cast<int>(r);
    return true;
  }
  return false;
}

namespace {
inline std::uint64_t splitmix64_step(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t RngStream::next_u64() { return splitmix64_step(state_); }

double RngStream::uniform01() {
  // top 53 bits -> (0,1]
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double m = std::sqrt(-2.0 * std::log(u1));
  spare_ = m * std::sin(2.0 * kPi * u2);
  have_spare_ = true;
  return m * std::cos(2.0 * kPi * u2);
}

cplx RngStream::normal_cplx() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t index) {
  // hash the pair so streams for consecutive indices are unrelated
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  splitmix64_step(s);
  return RngStream(s);
}

}  // namespace spinloc
