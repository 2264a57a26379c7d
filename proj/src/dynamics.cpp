#include "spinloc/dynamics.hpp"

#include <Eigen/Eigenvalues>

namespace spinloc {

namespace {

Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
  Eigen::VectorXcd out(static_cast<int>(v.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = v[i];
  return out;
}

std::vector<cplx> scaled_field_from_amplitudes(const Eigen::VectorXcd& a) {
  // c_k = f_k / sqrt(C) = conj(a_k) with index k <-> m = j-k
  std::vector<cplx> c(a.size());
  for (int i = 0; i < a.size(); ++i) c[i] = std::conj(a(i));
  return c;
}

// A(gamma) = psi(gamma)/sqrt(K(gamma)) from the scaled coefficients
cplx scaled_field_eval(TwiceJ tj, const std::vector<cplx>& c, const SpherePoint& p) {
  const int n = tj.twice();
  if (p.is_infinity()) return c[n];
  const cplx g = p.value();
  const double r = std::abs(g);
  if (r == 0.0) return c[0];
  const double lr = std::log(r);
  const double lk = 0.5 * n * std::log1p(r * r);
  const cplx ph = g / r;
  cplx phk(1.0, 0.0);
  cplx acc(0.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) phk *= ph;
    acc += c[k] * phk * std::exp(0.5 * log_binomial(n, k) + k * lr - lk);
  }
  return acc;
}

struct FieldSet {
  std::vector<std::vector<cplx>> fields;  // scaled fields of psi, H psi, (H^2 psi ...)
};

FieldSet derivative_fields(const PureState& state, const SpinHamiltonian& h, int order) {
  FieldSet out;
  Eigen::VectorXcd a = to_eigen(amplitudes_from_state(state));
  out.fields.push_back(scaled_field_from_amplitudes(a));
  for (int i = 0; i < order; ++i) {
    a = h.matrix() * a;
    out.fields.push_back(scaled_field_from_amplitudes(a));
  }
  return out;
}

void require_qdual(TwiceJ tj) {
  if (tj.twice() < 1)
    throw std::invalid_argument("dual measures are undefined for 2j = 0 (N/(N-1) singular)");
}

inline double h_of(std::span<const cplx> a) { return std::norm(a[0]); }
inline double hdot_of(std::span<const cplx> a) {
  return 2.0 * std::imag(std::conj(a[1]) * a[0]);
}
inline double hddot_of(std::span<const cplx> a) {
  return -2.0 * std::real(std::conj(a[2]) * a[0]) + 2.0 * std::norm(a[1]);
}

}  // namespace

Generators generators(TwiceJ tj) {
  const int n = tj.twice();
  const int dim = tj.dim();
  Generators g{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim),
               Eigen::MatrixXcd::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) g.jz(i, i) = 0.5 * n - i;
  for (int i = 0; i + 1 < dim; ++i) {
    const double c = std::sqrt(static_cast<double>(i + 1) * (n - i));
    g.jminus(i + 1, i) = c;  // J- |m> = c |m-1>, index up
    g.jplus(i, i + 1) = c;
  }
  return g;
}

SpinHamiltonian::SpinHamiltonian(TwiceJ tj, Eigen::MatrixXcd matrix)
    : tj_(tj), h_(std::move(matrix)) {
  if (h_.rows() != tj.dim() || h_.cols() != tj.dim())
    throw std::invalid_argument("SpinHamiltonian: matrix must be (2j+1) x (2j+1)");
  const double scale = std::max(1.0, h_.norm());
  if ((h_ - h_.adjoint()).norm() > 1e-12 * scale)
    throw std::invalid_argument("SpinHamiltonian: matrix is not hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

SpinHamiltonian SpinHamiltonian::jz(TwiceJ tj) { return {tj, generators(tj).jz}; }

SpinHamiltonian SpinHamiltonian::jx(TwiceJ tj) {
  const auto g = generators(tj);
  return {tj, 0.5 * (g.jplus + g.jminus)};
}

SpinHamiltonian SpinHamiltonian::rotation_generator(TwiceJ tj, double a, cplx b) {
  const auto g = generators(tj);
  return {tj, a * g.jz + b * g.jplus + std::conj(b) * g.jminus};
}

SpinHamiltonian SpinHamiltonian::random_gue(TwiceJ tj, RngStream& rng) {
  const int dim = tj.dim();
  Eigen::MatrixXcd h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = rng.normal();
    for (int k = i + 1; k < dim; ++k) {
      const cplx z = rng.normal_cplx() / std::sqrt(2.0);
      h(i, k) = z;
      h(k, i) = std::conj(z);
    }
  }
  return {tj, std::move(h)};
}

PureState evolve(const PureState& state, const SpinHamiltonian& h, double t) {
  if (!(state.twice_j() == h.twice_j()))
    throw std::invalid_argument("evolve: state and Hamiltonian spins differ");
  const Eigen::VectorXcd a = to_eigen(amplitudes_from_state(state));
  Eigen::VectorXcd modes = h.eigenvectors().adjoint() * a;
  for (int i = 0; i < modes.size(); ++i)
    modes(i) *= std::polar(1.0, -h.eigenvalues()(i) * t);
  const Eigen::VectorXcd at = h.eigenvectors() * modes;
  std::vector<cplx> amps(at.data(), at.data() + at.size());
  return state_from_amplitudes(state.twice_j(), amps);
}

double husimi_time_derivative(const PureState& state, const SpinHamiltonian& h,
                              const SpherePoint& point) {
  const auto fs = derivative_fields(state, h, 1);
  const cplx a0 = scaled_field_eval(state.twice_j(), fs.fields[0], point);
  const cplx a1 = scaled_field_eval(state.twice_j(), fs.fields[1], point);
  return 2.0 * std::imag(std::conj(a1) * a0);
}

double husimi_second_time_derivative(const PureState& state, const SpinHamiltonian& h,
                                     const SpherePoint& point) {
  const auto fs = derivative_fields(state, h, 2);
  const cplx a0 = scaled_field_eval(state.twice_j(), fs.fields[0], point);
  const cplx a1 = scaled_field_eval(state.twice_j(), fs.fields[1], point);
  const cplx a2 = scaled_field_eval(state.twice_j(), fs.fields[2], point);
  return -2.0 * std::real(std::conj(a2) * a0) + 2.0 * std::norm(a1);
}

namespace {

// integrand factories for dW/dt and dY/dt
double rate_moment(const PureState& state, const SpinHamiltonian& h, double q, bool dual,
                   const QuadOptions& opt) {
  const auto fs = derivative_fields(state, h, 1);
  const TwiceJ tj = state.twice_j();
  const double n_dim = state.dim();
  int qi = 0;
  const bool integer = is_integer_q(q, &qi);
  auto integrand = [q, qi, integer, dual](std::span<const cplx> a) {
    const double hv = h_of(a);
    const double base = dual ? std::max(0.0, 1.0 - hv) : hv;
    double p;
    if (integer) {
      p = 1.0;
      for (int i = 1; i < qi; ++i) p *= base;
    } else {
      p = base > 1e-280 ? std::pow(base, q - 1.0) : 0.0;
    }
    return p * hdot_of(a);
  };
  double integral;
  if (integer) {
    integral = integrate_fields<double>(tj, fs.fields, QuadratureGrid::exact_for(tj, qi),
                                        integrand, opt.parallel);
  } else {
    const auto g0 = QuadratureGrid::exact_for(tj, static_cast<int>(std::ceil(q)) + 1);
    integral = adaptive_integrate_fields(tj, fs.fields, g0.n_u(), g0.n_phi(), integrand, opt);
  }
  if (dual) return -q * n_dim / (n_dim - 1.0) * integral;
  return q * n_dim * integral;
}

}  // namespace

double entropy_rate(const PureState& state, const SpinHamiltonian& h, double q, RateKind kind,
                    const QuadOptions& opt) {
  if (!(q > 0.0)) throw std::invalid_argument("entropy_rate: q must be > 0");
  const TwiceJ tj = state.twice_j();
  const double n_dim = state.dim();
  const bool boltzmann = std::abs(q - 1.0) < 1e-12;

  switch (kind) {
    case RateKind::W:
      return rate_moment(state, h, q, /*dual=*/false, opt);
    case RateKind::Y:
      require_qdual(tj);
      return rate_moment(state, h, q, /*dual=*/true, opt);
    case RateKind::S: {
      if (boltzmann) {
        const auto fs = derivative_fields(state, h, 1);
        const auto g0 = QuadratureGrid::exact_for(tj, 2);
        const double integral = adaptive_integrate_fields(
            tj, fs.fields, g0.n_u(), g0.n_phi(),
            [](std::span<const cplx> a) {
              const double hv = h_of(a);
              return hv > 1e-280 ? std::log(hv) * hdot_of(a) : 0.0;
            },
            opt);
        return -n_dim * integral;
      }
      const double w = moment_quadrature(state, q, opt);
      return rate_moment(state, h, q, false, opt) / ((1.0 - q) * w);
    }
    case RateKind::Z: {
      require_qdual(tj);
      if (boltzmann) {
        const auto fs = derivative_fields(state, h, 1);
        const auto g0 = QuadratureGrid::exact_for(tj, 2);
        const double integral = adaptive_integrate_fields(
            tj, fs.fields, g0.n_u(), g0.n_phi(),
            [](std::span<const cplx> a) {
              const double e = 1.0 - h_of(a);
              return e > 1e-280 ? std::log(e) * hdot_of(a) : 0.0;
            },
            opt);
        return n_dim / (n_dim - 1.0) * integral;
      }
      const double y = dual_moment(state, q, opt);
      return rate_moment(state, h, q, true, opt) / ((1.0 - q) * y);
    }
  }
  throw std::logic_error("entropy_rate: unreachable");
}

double moment_second_derivative(const PureState& state, const SpinHamiltonian& h, double q,
                                MomentKind kind, const QuadOptions& opt) {
  if (!(q > 0.0)) throw std::invalid_argument("moment_second_derivative: q must be > 0");
  const TwiceJ tj = state.twice_j();
  const double n_dim = state.dim();
  const bool dual = kind == MomentKind::Y;
  if (dual) require_qdual(tj);
  const auto fs = derivative_fields(state, h, 2);

  int qi = 0;
  const bool integer = is_integer_q(q, &qi);
  auto integrand = [q, qi, integer, dual](std::span<const cplx> a) {
    const double hv = h_of(a);
    const double base = dual ? std::max(1e-300, 1.0 - hv) : std::max(1e-300, hv);
    const double hd = hdot_of(a);
    const double hdd = dual ? -hddot_of(a) : hddot_of(a);
    double pm2;  // base^{q-2}
    if (integer) {
      pm2 = 1.0;
      for (int i = 2; i < qi; ++i) pm2 *= base;
      if (qi == 1) pm2 = 1.0 / base;
    } else {
      pm2 = std::pow(base, q - 2.0);
    }
    return (q - 1.0) * pm2 * hd * hd + pm2 * base * hdd;
  };
  double integral;
  if (integer) {
    integral = integrate_fields<double>(tj, fs.fields, QuadratureGrid::exact_for(tj, qi),
                                        integrand, opt.parallel);
  } else {
    // fixed dense grid; see header note on divergent cases
    const int deg = (static_cast<int>(std::ceil(q)) + 2) * std::max(1, tj.twice());
    const auto grid =
        QuadratureGrid::gauss_legendre(4 * (deg / 2 + 1), std::min(1 << 14, 8 * deg + 16));
    integral = integrate_fields<double>(tj, fs.fields, grid, integrand, opt.parallel);
  }
  const double pref = dual ? q * n_dim / (n_dim - 1.0) : q * n_dim;
  return pref * integral;
}

ExtremalityReport extremality_report(TwiceJ tj, std::span<const double> qs, int n_hamiltonians,
                                     std::uint64_t seed, const QuadOptions& opt) {
  ExtremalityReport rep;
  rep.twice_j = tj.twice();
  rep.seed = seed;
  const PureState coh = coherent_state(SpherePoint(0.0, 0.0), tj);
  rep.max_abs_first = 0.0;
  rep.max_second_q2 = -std::numeric_limits<double>::infinity();
  rep.min_second_qhalf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_hamiltonians; ++i) {
    RngStream rng = derive_stream(seed, static_cast<std::uint64_t>(i));
    const auto h = SpinHamiltonian::random_gue(tj, rng);
    ExtremalityRow row;
    row.hamiltonian_index = i;
    for (double q : qs) {
      const double d = entropy_rate(coh, h, q, RateKind::W, opt);
      row.first_derivative[q] = d;
      rep.max_abs_first = std::max(rep.max_abs_first, std::abs(d));
    }
    row.second_w_q2 = moment_second_derivative(coh, h, 2.0, MomentKind::W, opt);
    row.second_w_qhalf = moment_second_derivative(coh, h, 0.5, MomentKind::W, opt);
    rep.max_second_q2 = std::max(rep.max_second_q2, row.second_w_q2);
    rep.min_second_qhalf = std::min(rep.min_second_qhalf, row.second_w_qhalf);
    rep.rows.push_back(std::move(row));
  }
  rep.first_derivatives_vanish = rep.max_abs_first < 1e-8;
  rep.second_derivative_signs_ok =
      rep.max_second_q2 <= 1e-8 && rep.min_second_qhalf >= -1e-8;
  return rep;
}

EntropyTimeSeries evolve_series(const PureState& state, const SpinHamiltonian& h, double t_max,
                                int n_steps, std::span<const double> qs,
                                const QuadOptions& opt) {
  if (n_steps < 1) throw std::invalid_argument("evolve_series: n_steps must be >= 1");
  EntropyTimeSeries ts;
  ts.qs.assign(qs.begin(), qs.end());
  const double fd_delta = 1e-4;
  for (int i = 0; i <= n_steps; ++i) {
    const double t = t_max * i / n_steps;
    ts.times.push_back(t);
    const PureState st = evolve(state, h, t);
    const PureState stp = evolve(state, h, t + fd_delta);
    const PureState stm = evolve(state, h, t - fd_delta);
    for (double q : qs) {
      const double s = renyi_entropy(st, q, opt);
      int qi = 0;
      const double w = is_integer_q(q, &qi) ? moment_exact(st, qi)
                                            : moment_quadrature(st, q, opt);
      const double ds = entropy_rate(st, h, q, RateKind::S, opt);
      const double ds_fd =
          (renyi_entropy(stp, q, opt) - renyi_entropy(stm, q, opt)) / (2.0 * fd_delta);
      ts.S.push_back(s);
      ts.W.push_back(w);
      ts.dSdt_analytic.push_back(ds);
      ts.dSdt_fd.push_back(ds_fd);
    }
  }
  return ts;
}

}  // namespace spinloc
