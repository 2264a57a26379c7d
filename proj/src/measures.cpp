#include "spinloc/measures.hpp"

#include <algorithm>
#include <cmath>

namespace spinloc {

namespace {

void require_positive_q(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("Renyi index q must be > 0");
}

void require_dual_ok(TwiceJ tj) {
  if (tj.twice() < 1)
    throw std::invalid_argument("dual measures are undefined for 2j = 0 (N/(N-1) singular)");
}

// convolution of a scaled polynomial power with f, rescaled to unit max;
// returns the added log-scale
double conv_step(std::vector<cplx>& g, const std::vector<cplx>& f) {
  std::vector<cplx> out(g.size() + f.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == cplx(0.0, 0.0)) continue;
    for (std::size_t k = 0; k < f.size(); ++k) out[i + k] += g[i] * f[k];
  }
  double m = 0.0;
  for (const auto& c : out) m = std::max(m, std::abs(c));
  if (m > 0.0)
    for (auto& c : out) c /= m;
  g = std::move(out);
  return m > 0.0 ? std::log(m) : 0.0;
}

// log of sum_m C(n,m)^{-1} |g_m|^2 with the row in long double
double log_reduction(const std::vector<cplx>& g, int n) {
  const auto row = binomial_row(n);
  Kahan<long double> acc;
  for (int m = 0; m <= n && m < static_cast<int>(g.size()); ++m) {
    const long double re = g[m].real(), im = g[m].imag();
    acc.add((re * re + im * im) / row[m]);
  }
  const long double s = acc.value();
  if (!(s > 0.0L)) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::log(s));
}

}  // namespace

double moment_exact(const PureState& state, int q) {
  if (q < 1) throw std::invalid_argument("moment_exact: q must be a positive integer");
  const int tj = state.twice_j().twice();
  std::vector<cplx> g = state.coeffs();
  double log_scale = 0.0;
  for (int step = 2; step <= q; ++step) log_scale += conv_step(g, state.coeffs());
  const double log_w = log_reduction(g, q * tj) + 2.0 * log_scale +
                       std::log(static_cast<double>(tj + 1) / (q * tj + 1));
  return std::exp(log_w);
}

std::vector<double> moments_exact_batch(const PureState& state, int n_max) {
  if (n_max < 1) throw std::invalid_argument("moments_exact_batch: n_max must be >= 1");
  const int tj = state.twice_j().twice();
  std::vector<double> w(n_max + 1, 0.0);
  std::vector<cplx> g = state.coeffs();
  double log_scale = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) log_scale += conv_step(g, state.coeffs());
    w[n] = std::exp(log_reduction(g, n * tj) + 2.0 * log_scale +
                    std::log(static_cast<double>(tj + 1) / (n * tj + 1)));
  }
  return w;
}

namespace {

double integrate_husimi_pow(const PureState& state, double q, const QuadratureGrid& grid,
                            const QuadOptions& opt) {
  const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
  const int n = state.twice_j().dim() - 1;
  (void)n;
  int qi = 0;
  if (is_integer_q(q, &qi)) {
    return integrate_fields<double>(
        state.twice_j(), fields, grid,
        [qi](std::span<const cplx> a) {
          const double h = std::norm(a[0]);
          double p = h;
          for (int i = 1; i < qi; ++i) p *= h;
          return p;
        },
        opt.parallel);
  }
  return adaptive_integrate_fields(
      state.twice_j(), fields, grid.n_u(), grid.n_phi(),
      [q](std::span<const cplx> a) {
        const double h = std::norm(a[0]);
        return h > 0.0 ? std::pow(h, q) : 0.0;
      },
      opt);
}

QuadratureGrid start_grid(TwiceJ tj, double q) {
  const double degree = std::max(1.0, q * tj.twice());
  const int nu = static_cast<int>(degree / 2) + 1;
  const int nphi = 2 * static_cast<int>(std::ceil(degree)) + 2;
  return QuadratureGrid::gauss_legendre(nu, nphi);
}

}  // namespace

double moment_quadrature(const PureState& state, double q, const QuadratureGrid& grid,
                         const QuadOptions& opt) {
  require_positive_q(q);
  return state.dim() * integrate_husimi_pow(state, q, grid, opt);
}

double moment_quadrature(const PureState& state, double q, const QuadOptions& opt) {
  require_positive_q(q);
  int qi = 0;
  if (is_integer_q(q, &qi))
    return moment_quadrature(state, q, QuadratureGrid::exact_for(state.twice_j(), qi), opt);
  return moment_quadrature(state, q, start_grid(state.twice_j(), q), opt);
}

double wehrl_entropy(const PureState& state, const QuadOptions& opt) {
  const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
  const auto g0 = start_grid(state.twice_j(), 2.0);
  const double val = adaptive_integrate_fields(
      state.twice_j(), fields, g0.n_u(), g0.n_phi(),
      [](std::span<const cplx> a) {
        const double h = std::norm(a[0]);
        return h > 0.0 ? h * std::log(h) : 0.0;
      },
      opt);
  return -state.dim() * val;
}

double renyi_entropy(const PureState& state, double q, const QuadOptions& opt) {
  require_positive_q(q);
  if (std::abs(q - 1.0) < 1e-12) return wehrl_entropy(state, opt);
  int qi = 0;
  const double w =
      is_integer_q(q, &qi) ? moment_exact(state, qi) : moment_quadrature(state, q, opt);
  return std::log(w) / (1.0 - q);
}

double dual_moment(const PureState& state, double q, const QuadOptions& opt) {
  require_positive_q(q);
  require_dual_ok(state.twice_j());
  const int n_dim = state.dim();
  int qi = 0;
  if (is_integer_q(q, &qi) && qi <= 16) {
    // Y^(q) = N/(N-1) sum_k C(q,k) (-1)^k int H^k dmu, int H^k dmu = W^(k)/N
    const auto w = moments_exact_batch(state, qi);
    Kahan<long double> acc;
    acc.add(1.0L);
    const auto row = binomial_row(qi);
    for (int k = 1; k <= qi; ++k) {
      const long double term = row[k] * static_cast<long double>(w[k]) / n_dim;
      acc.add((k % 2) ? -term : term);
    }
    return static_cast<double>(acc.value() * n_dim / (n_dim - 1));
  }
  return dual_moment_quadrature(state, q, opt);
}

double dual_moment_quadrature(const PureState& state, double q, const QuadOptions& opt) {
  require_positive_q(q);
  require_dual_ok(state.twice_j());
  const int n_dim = state.dim();
  int qi = 0;
  const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
  const double pref = static_cast<double>(n_dim) / (n_dim - 1);
  if (is_integer_q(q, &qi)) {
    const auto grid = QuadratureGrid::exact_for(state.twice_j(), qi);
    return pref * integrate_fields<double>(
                      state.twice_j(), fields, grid,
                      [qi](std::span<const cplx> a) {
                        const double e = std::max(0.0, 1.0 - std::norm(a[0]));
                        double p = e;
                        for (int i = 1; i < qi; ++i) p *= e;
                        return p;
                      },
                      opt.parallel);
  }
  const auto g0 = start_grid(state.twice_j(), std::max(1.0, q));
  return pref * adaptive_integrate_fields(
                    state.twice_j(), fields, g0.n_u(), g0.n_phi(),
                    [q](std::span<const cplx> a) {
                      const double e = std::max(0.0, 1.0 - std::norm(a[0]));
                      return e > 0.0 ? std::pow(e, q) : 0.0;
                    },
                    opt);
}

double dual_entropy(const PureState& state, double q, const QuadOptions& opt) {
  require_positive_q(q);
  require_dual_ok(state.twice_j());
  if (std::abs(q - 1.0) < 1e-12) {
    const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
    const auto g0 = start_grid(state.twice_j(), 2.0);
    const double val = adaptive_integrate_fields(
        state.twice_j(), fields, g0.n_u(), g0.n_phi(),
        [](std::span<const cplx> a) {
          const double e = std::max(0.0, 1.0 - std::norm(a[0]));
          return e > 0.0 ? e * std::log(e) : 0.0;
        },
        opt);
    const double n_dim = state.dim();
    return -n_dim / (n_dim - 1.0) * val;
  }
  return std::log(dual_moment(state, q, opt)) / (1.0 - q);
}

double participation(const PureState& state) { return 1.0 / moment_exact(state, 2); }

double dual_participation(const PureState& state) { return 1.0 / dual_moment(state, 2.0); }

double l2_to_uniform(const PureState& state) {
  const double l22 = moment_exact(state, 2) - 1.0 / state.dim();
  return std::sqrt(std::max(0.0, l22));
}

double l2_to_uniform_quadrature(const PureState& state) {
  const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
  const double inv_n = 1.0 / state.dim();
  const double val = integrate_fields<double>(
      state.twice_j(), fields, QuadratureGrid::exact_for(state.twice_j(), 2),
      [inv_n](std::span<const cplx> a) {
        const double d = std::norm(a[0]) - inv_n;
        return d * d;
      },
      true);
  return std::sqrt(std::max(0.0, state.dim() * val));
}

MeasureReport coherent_closed_forms(TwiceJ tj, double q) {
  require_positive_q(q);
  MeasureReport rep;
  rep.twice_j = tj.twice();
  rep.method = "closed-form";
  const double n = tj.twice() + 1.0;
  const double w = n / (q * tj.twice() + 1.0);
  rep.W[q] = w;
  rep.S[q] = (std::abs(q - 1.0) < 1e-12) ? tj.twice() / n : std::log(w) / (1.0 - q);
  if (tj.twice() >= 1) {
    const double eps = 1.0 / tj.twice();  // 1/(2j)
    const double y = std::exp(std::lgamma(q + 1.0) + std::lgamma(2.0 + eps) -
                              std::lgamma(q + 1.0 + eps));
    rep.Y[q] = y;
    rep.Z[q] = (std::abs(q - 1.0) < 1e-12) ? digamma(2.0 + eps) + kEulerGamma - 1.0
                                           : std::log(y) / (1.0 - q);
    rep.T = (2.0 * tj.twice() + 1.0) / (2.0 * tj.twice());
  }
  rep.R = (2.0 * tj.twice() + 1.0) / n;
  rep.method_by_q[q] = "closed-form";
  return rep;
}

MeasureReport jz_closed_forms(TwiceJ tj, int twice_m, double q) {
  require_positive_q(q);
  const int n = tj.twice();
  if (std::abs(twice_m) > n || ((twice_m + n) % 2) != 0)
    throw std::invalid_argument("jz_closed_forms: m out of range for this j");
  const int k = (n - twice_m) / 2;  // j - m
  const int a = (n + twice_m) / 2;  // j + m
  MeasureReport rep;
  rep.twice_j = n;
  rep.method = "closed-form";
  int qi = 0;
  const bool integer = is_integer_q(q, &qi);
  if (k == 0 || k == n) {
    // |m| = j reproduces the coherent values; computed identically so the
    // rows agree bit for bit
    rep.W[q] = (n + 1.0) / (q * n + 1.0);
    rep.S[q] = (std::abs(q - 1.0) < 1e-12) ? n / (n + 1.0) : std::log(rep.W[q]) / (1.0 - q);
  } else if (integer) {
    const double log_w = std::log((n + 1.0) / (q * n + 1.0)) + qi * log_binomial(n, k) -
                         log_binomial(qi * n, qi * k);
    rep.W[q] = std::exp(log_w);
    rep.S[q] = (std::abs(q - 1.0) < 1e-12) ? 0.0 : log_w / (1.0 - q);
  }
  if (std::abs(q - 1.0) < 1e-12 && k != 0 && k != n) {
    rep.S[q] = n / (n + 1.0) - log_binomial(n, k) + n * digamma(n + 1.0) -
               a * digamma(a + 1.0) - k * digamma(k + 1.0);
  }
  rep.R = std::exp(std::log((2.0 * n + 1.0) / (n + 1.0)) + log_binomial(2 * n, 2 * k) -
                   2.0 * log_binomial(n, k));
  rep.method_by_q[q] = "closed-form";
  return rep;
}

double sud_coherent_wehrl(int d, int m) {
  if (d < 2 || m < 1) throw std::invalid_argument("sud_coherent_wehrl: need d >= 2, m >= 1");
  return m * (digamma(m + d) - digamma(m + 1.0));
}

MeasureReport measure_report(const PureState& state, std::span<const double> qs,
                             const QuadOptions& opt) {
  MeasureReport rep;
  rep.twice_j = state.twice_j().twice();
  const bool dual_ok = state.twice_j().twice() >= 1;
  bool any_quad = false, any_exact = false;
  for (double q : qs) {
    int qi = 0;
    const bool integer = is_integer_q(q, &qi);
    const bool boltzmann = std::abs(q - 1.0) < 1e-12;
    rep.W[q] = integer ? moment_exact(state, qi) : moment_quadrature(state, q, opt);
    rep.S[q] = boltzmann ? wehrl_entropy(state, opt) : std::log(rep.W[q]) / (1.0 - q);
    if (dual_ok) {
      rep.Y[q] = dual_moment(state, q, opt);
      rep.Z[q] = boltzmann ? dual_entropy(state, 1.0, opt) : std::log(rep.Y[q]) / (1.0 - q);
    }
    const bool through_quad = !integer || boltzmann;
    rep.method_by_q[q] = through_quad ? "quadrature" : "exact";
    any_quad |= through_quad;
    any_exact |= !through_quad;
  }
  rep.R = participation(state);
  if (dual_ok) rep.T = dual_participation(state);
  rep.method = (any_quad && any_exact) ? "mixed" : (any_quad ? "quadrature" : "exact");
  return rep;
}

SeriesResult z_from_w_series(const PureState& state, int n_max) {
  if (n_max < 2) throw std::invalid_argument("z_from_w_series: n_max must be >= 2");
  require_dual_ok(state.twice_j());
  const double tj = state.twice_j().twice();
  const auto w = moments_exact_batch(state, n_max);
  Kahan<double> sum;
  int n_used = 1;
  for (int n = 2; n <= n_max; ++n) {
    const double term = w[n] / (static_cast<double>(n) * (n - 1));
    sum.add(term);
    n_used = n;
    if (term < 1e-12) break;
  }
  return {(1.0 - sum.value()) / tj, 1.0 / (tj * n_used), n_used - 1};
}

SeriesResult s_from_y_series(const PureState& state, int n_max, const QuadOptions& opt) {
  if (n_max < 2) throw std::invalid_argument("s_from_y_series: n_max must be >= 2");
  require_dual_ok(state.twice_j());
  const double tj = state.twice_j().twice();
  const int n_dim = state.dim();
  const std::vector<std::vector<cplx>> fields{state.scaled_coeffs()};
  const auto grid = QuadratureGrid::exact_for(state.twice_j(), n_max);
  std::vector<double> integrals(n_max - 1, 0.0);  // int (1-H)^n dmu, n = 2..n_max
  integrate_fields_multi(
      state.twice_j(), fields, grid, n_max - 1,
      [n_max](std::span<const cplx> a, std::span<double> out) {
        const double e = std::max(0.0, 1.0 - std::norm(a[0]));
        double p = e;
        for (int n = 2; n <= n_max; ++n) {
          p *= e;
          out[n - 2] = p;
        }
      },
      integrals, opt.parallel);
  const double pref = static_cast<double>(n_dim) / (n_dim - 1);
  Kahan<double> sum;
  int n_used = 1;
  for (int n = 2; n <= n_max; ++n) {
    const double term = pref * integrals[n - 2] / (static_cast<double>(n) * (n - 1));
    sum.add(term);
    n_used = n;
    if (term < 1e-12) break;
  }
  return {tj * (1.0 - sum.value()), tj / n_used, n_used - 1};
}

}  // namespace spinloc
