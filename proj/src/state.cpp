#include "spinloc/state.hpp"

#include <algorithm>
#include <cmath>

namespace spinloc {

double log_kernel(const SpherePoint& point, TwiceJ tj) {
  if (point.is_infinity())
    throw std::domain_error("kernel diverges at south pole");
  return tj.twice() * std::log1p(std::norm(point.value()));
}

double kernel(const SpherePoint& point, TwiceJ tj) {
  return std::exp(log_kernel(point, tj));
}

PureState::PureState(TwiceJ tj, std::vector<cplx> coeffs, double norm_tol)
    : tj_(tj), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != tj_.dim())
    throw std::invalid_argument("PureState: expected 2j+1 coefficients");
  const double err = norm_error();
  if (!(err <= norm_tol))
    throw std::invalid_argument("PureState: coefficients violate normalization (error " +
                                std::to_string(err) + ")");
}

PureState PureState::normalized(TwiceJ tj, std::vector<cplx> coeffs) {
  const double n2 = bargmann_norm_sq(tj, coeffs);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw std::invalid_argument("PureState: cannot normalize zero/non-finite coefficients");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& c : coeffs) c *= s;
  return PureState(tj, std::move(coeffs));
}

double bargmann_norm_sq(TwiceJ tj, std::span<const cplx> coeffs) {
  const auto row = binomial_row(tj.twice());
  long double acc = 0.0L;
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    const long double m2 = static_cast<long double>(coeffs[k].real()) * coeffs[k].real() +
                           static_cast<long double>(coeffs[k].imag()) * coeffs[k].imag();
    acc += m2 / row[k];
  }
  return static_cast<double>(acc);
}

double PureState::norm_error() const {
  return std::abs(bargmann_norm_sq(tj_, coeffs_) - 1.0);
}

std::vector<cplx> scaled_coeffs(TwiceJ tj, std::span<const cplx> coeffs) {
  const auto row = binomial_row(tj.twice());
  std::vector<cplx> c(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    c[k] = coeffs[k] / static_cast<double>(std::sqrt(row[k]));
  return c;
}

std::vector<cplx> PureState::scaled_coeffs() const {
  return spinloc::scaled_coeffs(tj_, coeffs_);
}

PureState PureState::canonicalized(double tol) const {
  for (const auto& c : coeffs_) {
    if (std::abs(c) > tol) {
      const cplx phase = std::abs(c) / c;
      std::vector<cplx> out(coeffs_);
      for (auto& x : out) x *= phase;
      return PureState(tj_, std::move(out), 1e-5);
    }
  }
  return *this;
}

PureState coherent_state(const SpherePoint& center, TwiceJ tj) {
  const int n = tj.twice();
  std::vector<cplx> f(tj.dim(), cplx(0.0, 0.0));
  if (center.is_infinity()) {
    f[n] = 1.0;
    return PureState(tj, std::move(f));
  }
  const cplx gbar = std::conj(center.value());
  const double log_den = 0.5 * tj.twice() * std::log1p(std::norm(center.value()));
  const auto row = binomial_row(n);
  // f_k = C(2j,k) gbar^k / (1+|g|^2)^j, assembled in log magnitude to stay
  // finite for large j and |g|
  const double la = std::abs(gbar) > 0 ? std::log(std::abs(gbar)) : 0.0;
  const cplx u = std::abs(gbar) > 0 ? gbar / std::abs(gbar) : cplx(1.0, 0.0);
  cplx uk(1.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) uk *= u;
    if (std::abs(gbar) == 0.0 && k > 0) continue;
    const double lm = static_cast<double>(std::log(row[k])) + k * la - log_den;
    f[k] = uk * std::exp(lm);
  }
  return PureState(tj, std::move(f), 1e-9);
}

PureState basis_state(int twice_m, TwiceJ tj) {
  const int n = tj.twice();
  if (std::abs(twice_m) > n || ((twice_m + n) % 2) != 0)
    throw std::invalid_argument("basis_state: m out of range for this j");
  const int k = (n - twice_m) / 2;  // k = j - m
  std::vector<cplx> f(tj.dim(), cplx(0.0, 0.0));
  f[k] = std::sqrt(binomial(n, k));
  return PureState(tj, std::move(f), 1e-9);
}

cplx bargmann_eval(const PureState& state, cplx gamma) {
  const auto& f = state.coeffs();
  cplx acc = f.back();
  for (int k = static_cast<int>(f.size()) - 2; k >= 0; --k) acc = acc * gamma + f[k];
  return acc;
}

double husimi_eval(const PureState& state, const SpherePoint& point) {
  const int n = state.twice_j().twice();
  if (point.is_infinity()) return std::norm(state.coeffs()[n]);
  const cplx g = point.value();
  const double r = std::abs(g);
  if (r == 0.0) return std::norm(state.coeffs()[0]);
  // H = |sum_k c_k b_k|^2 with |b_k| = exp(lnC/2 + k ln r - j ln(1+r^2)) <= 1;
  // overflow-free for any j
  const auto c = state.scaled_coeffs();
  const double lr = std::log(r);
  const double lk = 0.5 * state.twice_j().twice() * std::log1p(r * r);
  const cplx ph = g / r;  // gamma^k = r^k ph^k
  cplx phk(1.0, 0.0);
  cplx acc(0.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) phk *= ph;
    const double lb = 0.5 * log_binomial(n, k) + k * lr - lk;
    acc += c[k] * phk * std::exp(lb);
  }
  return std::norm(acc);
}

std::vector<cplx> amplitudes_from_state(const PureState& state) {
  const int n = state.twice_j().twice();
  const auto row = binomial_row(n);
  std::vector<cplx> a(state.dim());
  // index i <-> m = j - i; f_k = sqrt(C(2j,k)) conj(a_{j-k}) => a_i = conj(f_i)/sqrt(C)
  for (int i = 0; i <= n; ++i)
    a[i] = std::conj(state.coeffs()[i]) / static_cast<double>(std::sqrt(row[i]));
  return a;
}

PureState state_from_amplitudes(TwiceJ tj, std::span<const cplx> amps) {
  if (static_cast<int>(amps.size()) != tj.dim())
    throw std::invalid_argument("state_from_amplitudes: length mismatch");
  const auto row = binomial_row(tj.twice());
  std::vector<cplx> f(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k)
    f[k] = static_cast<double>(std::sqrt(row[k])) * std::conj(amps[k]);
  return PureState(tj, std::move(f), 1e-9);
}

cplx inner_product(const PureState& a, const PureState& b) {
  if (!(a.twice_j() == b.twice_j()))
    throw std::invalid_argument("inner_product: mismatched spins");
  const auto row = binomial_row(a.twice_j().twice());
  cplx acc(0.0, 0.0);
  for (int k = 0; k < a.dim(); ++k)
    acc += a.coeffs()[k] * std::conj(b.coeffs()[k]) / static_cast<double>(row[k]);
  return acc;
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  if (!(a.twice_j() == b.twice_j())) return false;
  const cplx ov = inner_product(a, b);
  if (std::abs(ov) < 1e-300) return false;
  const cplx phase = ov / std::abs(ov);
  for (int k = 0; k < a.dim(); ++k)
    if (std::abs(a.coeffs()[k] - phase * b.coeffs()[k]) > tol) return false;
  return true;
}

}  // namespace spinloc
