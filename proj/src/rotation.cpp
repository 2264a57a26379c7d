#include "spinloc/rotation.hpp"

namespace spinloc {

namespace {
double wrap_2pi(double phi) {
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0) phi += 2.0 * kPi;
  return phi;
}
}  // namespace

Su2 Su2::normalized() const {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n <= 0.0) throw std::invalid_argument("Su2: zero column");
  return {a / n, b / n};
}

Rotation::Rotation(cplx alpha, double phi) : alpha_(alpha), phi_(wrap_2pi(phi)) {}

Su2 Rotation::su2() const {
  const double s = 1.0 / std::sqrt(1.0 + std::norm(alpha_));
  const cplx e = std::polar(1.0, 0.5 * phi_);
  return {e * s, alpha_ * e * s};
}

Rotation Rotation::from_su2(const Su2& m_in) {
  const Su2 m = m_in.normalized();
  if (std::abs(m.a) < 1e-12)
    throw std::invalid_argument("Rotation::from_su2: a == 0 is outside the (alpha, phi) chart");
  return Rotation(m.b / m.a, 2.0 * std::arg(m.a));
}

Rotation Rotation::compose(const Rotation& second, const Rotation& first) {
  return from_su2(second.su2() * first.su2());
}

Rotation Rotation::about_y(double beta) { return Rotation(std::tan(0.5 * beta), 0.0); }

Rotation Rotation::about_x(double beta) {
  return Rotation(cplx(0.0, -std::tan(0.5 * beta)), 0.0);
}

Rotation Rotation::random(RngStream& rng) {
  for (;;) {
    const cplx a = rng.normal_cplx();
    const cplx b = rng.normal_cplx();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n < 1e-8) continue;
    if (std::abs(a) / n < 1e-3) continue;  // dodge the excluded a==0 chart boundary
    return from_su2({a / n, b / n});
  }
}

SpherePoint mobius_rotate_point(const Su2& m_in, const SpherePoint& p) {
  const Su2 m = m_in.normalized();
  if (p.is_infinity()) {
    // limit of (b + conj(a) g)/(a - conj(b) g) as g -> inf
    if (std::abs(m.b) < 1e-300) return SpherePoint::infinity();
    return SpherePoint(-std::conj(m.a) / std::conj(m.b));
  }
  const cplx g = p.value();
  const cplx num = m.b + std::conj(m.a) * g;
  const cplx den = m.a - std::conj(m.b) * g;
  if (std::abs(den) <= 1e-13 * (std::abs(m.a) + std::abs(std::conj(m.b) * g)))
    return SpherePoint::infinity();
  return SpherePoint(num / den);
}

SpherePoint mobius_rotate_point(const Rotation& rot, const SpherePoint& p) {
  return mobius_rotate_point(rot.su2(), p);
}

namespace {

// psi'(gamma) = (1+|a|^2)^{-j} e^{-i phi j} sum_k f_k e^{ik phi}
//               (gamma - a)^k (1 + conj(a) gamma)^{2j-k}
PureState rotate_state_direct(const Rotation& rot, const PureState& state) {
  const int n = state.twice_j().twice();
  const cplx a = rot.alpha();
  const cplx ab = std::conj(a);
  const double phi = rot.phi();

  std::vector<cplx> neg_a_pow(n + 1), ab_pow(n + 1);
  neg_a_pow[0] = ab_pow[0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    neg_a_pow[i] = neg_a_pow[i - 1] * (-a);
    ab_pow[i] = ab_pow[i - 1] * ab;
  }

  std::vector<cplx> out(n + 1, cplx(0.0, 0.0));
  const cplx eiphi = std::polar(1.0, phi);
  cplx fk_phase(1.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fk_phase *= eiphi;
    const cplx fk = state.coeffs()[k] * fk_phase;
    if (fk == cplx(0.0, 0.0)) continue;
    const auto rowk = binomial_row(k);
    const auto rownk = binomial_row(n - k);
    // (gamma - a)^k = sum_i C(k,i) gamma^i (-a)^{k-i}
    // (1 + ab gamma)^{n-k} = sum_l C(n-k,l) ab^l gamma^l
    for (int i = 0; i <= k; ++i) {
      const cplx ti = fk * static_cast<double>(rowk[i]) * neg_a_pow[k - i];
      for (int l = 0; l <= n - k; ++l)
        out[i + l] += ti * static_cast<double>(rownk[l]) * ab_pow[l];
    }
  }

  const double j = 0.5 * n;
  const cplx pref = std::exp(cplx(-j * std::log1p(std::norm(a)), -phi * j));
  for (auto& c : out) c *= pref;
  return PureState(state.twice_j(), std::move(out), 1e-7);
}

PureState rotate_state_su2_impl(const Su2& m_in, const PureState& state, int depth) {
  const Su2 m = m_in.normalized();
  if (std::abs(m.a) > 1e-12 && std::abs(m.b) <= 3.0 * std::abs(m.a))
    return rotate_state_direct(Rotation::from_su2(m), state);
  if (depth > 3) throw std::logic_error("rotate_state: factorization did not terminate");
  // factor off a quarter turn about y to leave a well-conditioned chart element
  const Su2 q = Rotation::about_y(0.5 * kPi).su2();
  const Su2 rest = m * q.dagger();
  return rotate_state_su2_impl(rest, rotate_state_direct(Rotation::from_su2(q), state), depth + 1);
}

}  // namespace

PureState rotate_state(const Su2& m, const PureState& state) {
  return rotate_state_su2_impl(m, state, 0);
}

PureState rotate_state(const Rotation& rot, const PureState& state) {
  if (std::norm(rot.alpha()) <= 9.0) return rotate_state_direct(rot, state);
  return rotate_state(rot.su2(), state);
}

}  // namespace spinloc
