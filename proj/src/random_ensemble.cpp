#include "spinloc/random_ensemble.hpp"

#include <algorithm>

namespace spinloc {

PureState haar_random_state(TwiceJ tj, RngStream& rng) {
  std::vector<cplx> amps(tj.dim());
  long double n2 = 0.0L;
  for (auto& a : amps) {
    a = rng.normal_cplx();
    n2 += static_cast<long double>(std::norm(a));
  }
  const double inv = 1.0 / std::sqrt(static_cast<double>(n2));
  for (auto& a : amps) a *= inv;
  return state_from_amplitudes(tj, amps);
}

double expected_moment(int n_dim, double q) {
  if (n_dim < 2 || !(q > 0.0))
    throw std::invalid_argument("expected_moment: need N >= 2 and q > 0");
  return std::exp(std::log(static_cast<double>(n_dim)) + std::lgamma(n_dim) +
                  std::lgamma(q + 1.0) - std::lgamma(q + n_dim));
}

double expected_renyi(int n_dim, double q) {
  if (n_dim < 2 || !(q > 0.0))
    throw std::invalid_argument("expected_renyi: need N >= 2 and q > 0");
  if (std::abs(q - 1.0) < 1e-12) return expected_wehrl(n_dim);
  return (std::lgamma(n_dim + 1.0) + std::lgamma(q + 1.0) - std::lgamma(q + n_dim)) /
         (1.0 - q);
}

double expected_wehrl(int n_dim) {
  if (n_dim < 2) throw std::invalid_argument("expected_wehrl: need N >= 2");
  return digamma(n_dim + 1.0) - digamma(2.0);
}

namespace {

// grid for per-sample Wehrl entropies: fixed (not adaptive) so that a run is
// a pure map over sample indices; sized for ~1e-8 accuracy at small j
QuadratureGrid mc_entropy_grid(TwiceJ tj) {
  const int d = tj.twice();
  return QuadratureGrid::gauss_legendre(4 * d + 24, 8 * d + 24);
}

}  // namespace

McEstimate mc_mean_measure(TwiceJ tj, double q, int n_samples, std::uint64_t seed,
                           McMeasure kind, bool parallel) {
  if (n_samples < 2) throw std::invalid_argument("mc_mean_measure: need n_samples >= 2");
  if (!(q > 0.0)) throw std::invalid_argument("mc_mean_measure: q must be > 0");
  int qi = 0;
  const bool integer = is_integer_q(q, &qi);
  const bool boltzmann = std::abs(q - 1.0) < 1e-12;
  const QuadratureGrid egrid = mc_entropy_grid(tj);
  QuadOptions sample_opt;
  sample_opt.parallel = false;  // parallelism lives at the sample level

  std::vector<double> values(n_samples);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n_samples; ++i) {
    RngStream rng = derive_stream(seed, static_cast<std::uint64_t>(i));
    const PureState psi = haar_random_state(tj, rng);
    double v = 0.0;
    switch (kind) {
      case McMeasure::moment:
        v = integer ? moment_exact(psi, qi) : moment_quadrature(psi, q, sample_opt);
        break;
      case McMeasure::entropy:
        if (boltzmann) {
          const std::vector<std::vector<cplx>> fields{psi.scaled_coeffs()};
          const double val = integrate_fields<double>(
              tj, fields, egrid,
              [](std::span<const cplx> a) {
                const double h = std::norm(a[0]);
                return h > 0.0 ? h * std::log(h) : 0.0;
              },
              false);
          v = -psi.dim() * val;
        } else {
          const double w =
              integer ? moment_exact(psi, qi) : moment_quadrature(psi, q, sample_opt);
          v = std::log(w) / (1.0 - q);
        }
        break;
      case McMeasure::l2_squared:
        v = moment_exact(psi, 2) - 1.0 / psi.dim();
        break;
    }
    values[i] = v;
  }

  Kahan<double> sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / n_samples;
  Kahan<double> var;
  for (double v : values) var.add((v - mean) * (v - mean));
  const double sample_var = var.value() / (n_samples - 1);
  return {mean, std::sqrt(sample_var / n_samples), n_samples, seed};
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    // consume ties on both sides before comparing the empirical CDFs
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == x) ++ia;
    while (ib < b.size() && b[ib] == x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / a.size() -
                             static_cast<double>(ib) / b.size()));
  }
  return d;
}

}  // namespace spinloc
