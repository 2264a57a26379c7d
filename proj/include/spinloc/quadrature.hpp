// Product quadrature on the sphere and the field-evaluation kernel.
//
// The measure is dmu = (1/4pi) sin(theta) dtheta dphi, i.e. a Gauss-Legendre
// rule in u = cos(theta) on [-1,1] (weights summing to 2, scaled by 1/2)
// times the uniform rule in phi (weight 1/n_phi).  With n_u nodes the rule
// integrates polynomials in u up to degree 2*n_u - 1 exactly, and the phi
// rule annihilates e^{ik phi} exactly for 0 < |k| < n_phi.
//
// Integrands are functionals of "scaled field" values
//   A_s(gamma) = psi_s(gamma) / sqrt(K(gamma)),
// one per Bargmann coefficient vector psi_s; e.g. the Husimi function of a
// state is |A|^2.  Magnitudes are assembled in log space so any j is safe.
//
// integrate_fields is the OpenMP-parallel kernel: rows (u-nodes) are
// independent, row results are stored and reduced in index order, so the
// result is identical for any thread count.  spinloc::reference holds the
// naive serial implementation used as an oracle in tests and benchmarks.
#pragma once

#include <memory>
#include <span>

#include "spinloc/common.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

class QuadratureGrid {
 public:
  static QuadratureGrid gauss_legendre(int n_u, int n_phi);

  // Exact grid for integrands of the H^q family at integer q:
  // total u-degree D = q*2j, so n_u = D/2 + 1 and n_phi = 2D + 2.
  static QuadratureGrid exact_for(TwiceJ tj, int q);

  int n_u() const { return static_cast<int>(gl_->first.size()); }
  int n_phi() const { return n_phi_; }
  const std::vector<double>& u_nodes() const { return gl_->first; }
  const std::vector<double>& u_weights() const { return gl_->second; }

 private:
  QuadratureGrid() = default;
  int n_phi_ = 0;
  std::shared_ptr<const std::pair<std::vector<double>, std::vector<double>>> gl_;
};

namespace detail {

template <typename R>
struct Accum {
  using type = long double;
};
template <>
struct Accum<cplx> {
  using type = std::complex<long double>;
};

// |b_k(u)| = exp(lnC(2j,k)/2 + k ln r - j ln(1+r^2)), r^2 = (1-u)/(1+u)
inline void scaled_monomials(int twice_j, double u, std::span<const double> half_log_binom,
                             std::span<double> out) {
  const double ln_r = 0.5 * (std::log1p(-u) - std::log1p(u));
  const double ln_k = 0.5 * twice_j * (std::log(2.0) - std::log1p(u));
  for (int k = 0; k <= twice_j; ++k)
    out[k] = std::exp(half_log_binom[k] + k * ln_r - ln_k);
}

inline std::vector<double> half_log_binom_row(int n) {
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) h[k] = 0.5 * log_binomial(n, k);
  return h;
}

}  // namespace detail

// Integrates func(A) dmu where A[s] is the scaled value of field s at the
// node.  `fields` holds scaled coefficient vectors (see scaled_coeffs).
template <typename R, typename F>
R integrate_fields(TwiceJ tj, std::span<const std::vector<cplx>> fields,
                   const QuadratureGrid& grid, F&& func, bool parallel = true) {
  const int n = tj.twice();
  const int n_u = grid.n_u();
  const int n_phi = grid.n_phi();
  const int n_fields = static_cast<int>(fields.size());
  const auto hlb = detail::half_log_binom_row(n);

  std::vector<cplx> twiddle(n_phi);
  for (int t = 0; t < n_phi; ++t) {
    const double phi = 2.0 * kPi * t / n_phi;
    twiddle[t] = {std::cos(phi), std::sin(phi)};
  }

  std::vector<R> rows(n_u);

#pragma omp parallel if (parallel)
  {
    std::vector<double> bk(static_cast<std::size_t>(n) + 1);
    std::vector<cplx> d(static_cast<std::size_t>(n_fields) * (n + 1));
    std::vector<cplx> a(n_fields);

#pragma omp for schedule(static)
    for (int i = 0; i < n_u; ++i) {
      detail::scaled_monomials(n, grid.u_nodes()[i], hlb, bk);
      for (int s = 0; s < n_fields; ++s)
        for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(s) * (n + 1) + k] = fields[s][k] * bk[k];

      typename detail::Accum<R>::type row_acc{};
      for (int t = 0; t < n_phi; ++t) {
        const cplx w = twiddle[t];
        for (int s = 0; s < n_fields; ++s) {
          const cplx* ds = d.data() + static_cast<std::size_t>(s) * (n + 1);
          cplx acc = ds[n];
          for (int k = n - 1; k >= 0; --k) acc = acc * w + ds[k];
          a[s] = acc;
        }
        row_acc += static_cast<typename detail::Accum<R>::type>(func(std::span<const cplx>(a)));
      }
      rows[i] = static_cast<R>(row_acc) * (grid.u_weights()[i] * 0.5 / n_phi);
    }
  }

  Kahan<R> total;
  for (const R& r : rows) total.add(r);
  return total.value();
}

// Batched variant: func(A, out) adds its per-node contributions into `out`
// (size n_out); the framework applies the node weight.  Used where many
// functionals of the same fields are integrated in one sweep.
template <typename F>
void integrate_fields_multi(TwiceJ tj, std::span<const std::vector<cplx>> fields,
                            const QuadratureGrid& grid, int n_out, F&& func,
                            std::span<double> out, bool parallel = true) {
  const int n = tj.twice();
  const int n_u = grid.n_u();
  const int n_phi = grid.n_phi();
  const int n_fields = static_cast<int>(fields.size());
  const auto hlb = detail::half_log_binom_row(n);

  std::vector<cplx> twiddle(n_phi);
  for (int t = 0; t < n_phi; ++t) {
    const double phi = 2.0 * kPi * t / n_phi;
    twiddle[t] = {std::cos(phi), std::sin(phi)};
  }

  std::vector<long double> rows(static_cast<std::size_t>(n_u) * n_out, 0.0L);

#pragma omp parallel if (parallel)
  {
    std::vector<double> bk(static_cast<std::size_t>(n) + 1);
    std::vector<cplx> d(static_cast<std::size_t>(n_fields) * (n + 1));
    std::vector<cplx> a(n_fields);
    std::vector<double> node_out(n_out);
    std::vector<long double> row_acc(n_out);

#pragma omp for schedule(static)
    for (int i = 0; i < n_u; ++i) {
      detail::scaled_monomials(n, grid.u_nodes()[i], hlb, bk);
      for (int s = 0; s < n_fields; ++s)
        for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(s) * (n + 1) + k] = fields[s][k] * bk[k];

      std::fill(row_acc.begin(), row_acc.end(), 0.0L);
      for (int t = 0; t < n_phi; ++t) {
        const cplx w = twiddle[t];
        for (int s = 0; s < n_fields; ++s) {
          const cplx* ds = d.data() + static_cast<std::size_t>(s) * (n + 1);
          cplx acc = ds[n];
          for (int k = n - 1; k >= 0; --k) acc = acc * w + ds[k];
          a[s] = acc;
        }
        std::fill(node_out.begin(), node_out.end(), 0.0);
        func(std::span<const cplx>(a), std::span<double>(node_out));
        for (int m = 0; m < n_out; ++m) row_acc[m] += node_out[m];
      }
      const long double scale = grid.u_weights()[i] * 0.5L / n_phi;
      for (int m = 0; m < n_out; ++m) rows[static_cast<std::size_t>(i) * n_out + m] = row_acc[m] * scale;
    }
  }

  for (int m = 0; m < n_out; ++m) {
    Kahan<long double> total;
    for (int i = 0; i < n_u; ++i) total.add(rows[static_cast<std::size_t>(i) * n_out + m]);
    out[m] = static_cast<double>(total.value());
  }
}

struct QuadOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  int max_nodes = 1 << 14;  // per direction
  bool parallel = true;
};

// Direction-adaptive refinement: probes u- and phi-doubling separately and
// refines only directions that still move the value, so phi-symmetric
// integrands stay cheap.  Throws NonConvergence at the node cap.
template <typename F>
double adaptive_integrate_fields(TwiceJ tj, std::span<const std::vector<cplx>> fields,
                                 int start_nu, int start_nphi, F&& func,
                                 const QuadOptions& opt = {}) {
  int nu = std::max(2, start_nu);
  int nphi = std::max(4, start_nphi);
  auto eval = [&](int a, int b) {
    return integrate_fields<double>(tj, fields, QuadratureGrid::gauss_legendre(a, b), func,
                                    opt.parallel);
  };
  double v = eval(nu, nphi);
  for (;;) {
    const double vu = eval(2 * nu, nphi);
    const double vp = eval(nu, 2 * nphi);
    const double du = std::abs(vu - v);
    const double dp = std::abs(vp - v);
    const double scale = std::max({std::abs(v), std::abs(vu), std::abs(vp)});
    const double tol = std::max(opt.atol, opt.rtol * scale);
    if (du <= tol && dp <= tol) return vu + vp - v;
    bool refined = false;
    if (du > tol) {
      if (2 * nu > opt.max_nodes)
        throw NonConvergence("quadrature: u-direction not converged at node cap");
      nu *= 2;
      v = vu;
      refined = true;
    }
    if (dp > tol) {
      if (2 * nphi > opt.max_nodes)
        throw NonConvergence("quadrature: phi-direction not converged at node cap");
      nphi *= 2;
      v = refined ? eval(nu, nphi) : vp;
      refined = true;
    }
  }
}

}  // namespace spinloc
