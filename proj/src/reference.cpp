#include "spinloc/reference.hpp"

namespace spinloc::reference {

double husimi(const PureState& state, double u, double phi) {
  const double r = std::sqrt((1.0 - u) / (1.0 + u));
  const cplx gamma = std::polar(r, phi);
  const cplx psi = bargmann_eval(state, gamma);
  return std::norm(psi) / std::pow(1.0 + r * r, state.twice_j().twice());
}

double moment_quadrature(const PureState& state, double q, const QuadratureGrid& grid) {
  double total = 0.0;
  for (int i = 0; i < grid.n_u(); ++i) {
    double row = 0.0;
    for (int t = 0; t < grid.n_phi(); ++t) {
      const double phi = 2.0 * kPi * t / grid.n_phi();
      row += std::pow(husimi(state, grid.u_nodes()[i], phi), q);
    }
    total += row * grid.u_weights()[i] * 0.5 / grid.n_phi();
  }
  return state.dim() * total;
}

double wehrl_entropy(const PureState& state, const QuadratureGrid& grid) {
  double total = 0.0;
  for (int i = 0; i < grid.n_u(); ++i) {
    double row = 0.0;
    for (int t = 0; t < grid.n_phi(); ++t) {
      const double phi = 2.0 * kPi * t / grid.n_phi();
      const double h = husimi(state, grid.u_nodes()[i], phi);
      if (h > 0.0) row += h * std::log(h);
    }
    total += row * grid.u_weights()[i] * 0.5 / grid.n_phi();
  }
  return -state.dim() * total;
}

double moment_compositions(const PureState& state, int q) {
  if (q < 1) throw std::invalid_argument("moment_compositions: q must be >= 1");
  const int n = state.twice_j().twice();
  std::vector<cplx> bucket(static_cast<std::size_t>(q) * n + 1, cplx(0.0, 0.0));
  std::vector<int> idx(q, 0);
  for (;;) {
    cplx prod(1.0, 0.0);
    int m = 0;
    for (int s = 0; s < q; ++s) {
      prod *= state.coeffs()[idx[s]];
      m += idx[s];
    }
    bucket[m] += prod;
    int s = q - 1;
    while (s >= 0 && idx[s] == n) idx[s--] = 0;
    if (s < 0) break;
    ++idx[s];
  }
  double w = 0.0;
  for (int m = 0; m <= q * n; ++m)
    w += std::norm(bucket[m]) / binomial(q * n, m);
  return w * (n + 1.0) / (q * n + 1.0);
}

}  // namespace spinloc::reference
