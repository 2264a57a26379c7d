#include "spinloc/stellar.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>

namespace spinloc {

std::vector<SpherePoint> StellarRoots::as_points() const {
  std::vector<SpherePoint> pts;
  pts.reserve(total());
  for (const auto& r : finite_roots) pts.emplace_back(r);
  for (int i = 0; i < roots_at_infinity; ++i) pts.push_back(SpherePoint::infinity());
  return pts;
}

double StellarRoots::cluster_spread() const {
  const auto pts = as_points();
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = i + 1; k < pts.size(); ++k)
      m = std::max(m, chordal_distance(pts[i], pts[k]));
  return m;
}

namespace {

cplx horner(std::span<const cplx> c, cplx x) {
  cplx acc = c.back();
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) acc = acc * x + c[k];
  return acc;
}

cplx horner_deriv(std::span<const cplx> c, cplx x) {
  const int d = static_cast<int>(c.size()) - 1;
  cplx acc = static_cast<double>(d) * c[d];
  for (int k = d - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * c[k];
  return acc;
}

}  // namespace

StellarRoots roots_from_state(const PureState& state) {
  const auto& f = state.coeffs();
  double fmax = 0.0;
  for (const auto& c : f) fmax = std::max(fmax, std::abs(c));
  if (fmax == 0.0) throw std::invalid_argument("roots_from_state: zero state");
  const double cutoff = 1e-14 * fmax;

  int hi = static_cast<int>(f.size()) - 1;
  while (hi > 0 && std::abs(f[hi]) <= cutoff) --hi;
  int lo = 0;
  while (lo < hi && std::abs(f[lo]) <= cutoff) ++lo;

  StellarRoots out{state.twice_j(), {}, state.twice_j().twice() - hi, f[hi]};
  out.finite_roots.assign(lo, cplx(0.0, 0.0));  // exact zeros from vanishing low coefficients

  const int deg = hi - lo;
  if (deg > 0) {
    // balanced companion matrix of the monic polynomial on f[lo..hi]
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -f[lo + i] / f[hi];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<cplx> poly(f.begin() + lo, f.begin() + hi + 1);
    for (int i = 0; i < deg; ++i) {
      cplx r = es.eigenvalues()(i);
      for (int it = 0; it < 2; ++it) {
        const cplx dp = horner_deriv(poly, r);
        if (std::abs(dp) < 1e-300) break;
        const cplx step = horner(poly, r) / dp;
        if (!std::isfinite(std::abs(step))) break;
        r -= step;
      }
      if (std::abs(r) > 1e12) {
        out.roots_at_infinity += 1;
        continue;
      }
      out.finite_roots.push_back(r);
    }
  }

  std::sort(out.finite_roots.begin(), out.finite_roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

PureState state_from_roots(const StellarRoots& roots) {
  const TwiceJ tj = roots.twice_j;
  if (roots.total() != tj.twice())
    throw std::invalid_argument("state_from_roots: root count must equal 2j");
  // expand prod(gamma - r); rescale after each factor so intermediate
  // coefficients never overflow (the overall constant is renormalized away)
  std::vector<cplx> p{cplx(1.0, 0.0)};
  p.reserve(roots.finite_roots.size() + 1);
  for (const auto& r : roots.finite_roots) {
    p.push_back(cplx(0.0, 0.0));
    for (int k = static_cast<int>(p.size()) - 1; k >= 1; --k) p[k] = p[k - 1] - r * p[k];
    p[0] = -r * p[0];
    double m = 0.0;
    for (const auto& c : p) m = std::max(m, std::abs(c));
    if (m > 0.0)
      for (auto& c : p) c /= m;
  }
  std::vector<cplx> f(tj.dim(), cplx(0.0, 0.0));
  std::copy(p.begin(), p.end(), f.begin());
  return PureState::normalized(tj, std::move(f)).canonicalized();
}

StellarRoots roots_from_points(TwiceJ tj, const std::vector<SpherePoint>& points) {
  StellarRoots out{tj, {}, 0, cplx(1.0, 0.0)};
  for (const auto& p : points) {
    if (p.is_infinity())
      out.roots_at_infinity += 1;
    else
      out.finite_roots.push_back(p.value());
  }
  if (out.total() != tj.twice())
    throw std::invalid_argument("roots_from_points: need exactly 2j points");
  return out;
}

}  // namespace spinloc
