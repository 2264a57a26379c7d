// Spin-j pure states in the Bargmann representation.
//
// The canonical storage is the coefficient vector f_0..f_{2j} of the Bargmann
// polynomial psi(gamma) = sum_k f_k gamma^k.  A normalized state satisfies
//   sum_k C(2j,k)^{-1} |f_k|^2 = 1,
// and the Husimi function is H(gamma) = |psi(gamma)|^2 / (1+|gamma|^2)^{2j}.
// The |m> amplitude view (index 0 <-> m = j) is related by
//   f_k = sqrt(C(2j,k)) * conj(a_{j-k}).
#pragma once

#include <span>
#include <vector>

#include "spinloc/common.hpp"
#include "spinloc/sphere.hpp"

namespace spinloc {

// Stores 2j so half-integer spins stay exact; N = 2j + 1.
class TwiceJ {
 public:
  explicit TwiceJ(int twice_j) : twice_j_(twice_j) {
    if (twice_j < 0) throw std::invalid_argument("TwiceJ: 2j must be >= 0");
  }
  int twice() const { return twice_j_; }
  int dim() const { return twice_j_ + 1; }
  double j() const { return 0.5 * twice_j_; }
  friend bool operator==(TwiceJ a, TwiceJ b) { return a.twice_j_ == b.twice_j_; }

 private:
  int twice_j_;
};

// K(gamma) = (1+|gamma|^2)^{2j}, computed in log space.
double kernel(const SpherePoint& point, TwiceJ tj);
double log_kernel(const SpherePoint& point, TwiceJ tj);

class PureState {
 public:
  // Validates the normalization invariant to `norm_tol`.
  PureState(TwiceJ tj, std::vector<cplx> coeffs, double norm_tol = 1e-6);

  // Rescales arbitrary nonzero coefficients onto the unit sphere.
  static PureState normalized(TwiceJ tj, std::vector<cplx> coeffs);

  TwiceJ twice_j() const { return tj_; }
  int dim() const { return tj_.dim(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  // c_k = f_k / sqrt(C(2j,k)); the amplitude-normalized view used by the
  // quadrature kernels (|c| has unit 2-norm for a normalized state).
  std::vector<cplx> scaled_coeffs() const;

  // Global phase rotated so the first coefficient above `tol` is real > 0.
  PureState canonicalized(double tol = 1e-12) const;

  double norm_error() const;  // |sum C^{-1}|f|^2 - 1|

 private:
  TwiceJ tj_;
  std::vector<cplx> coeffs_;
};

// sum_k C(2j,k)^{-1} |f_k|^2 for an arbitrary coefficient vector.
double bargmann_norm_sq(TwiceJ tj, std::span<const cplx> coeffs);

// c_k = f_k / sqrt(C(2j,k)) for an arbitrary (not necessarily normalized)
// coefficient vector.
std::vector<cplx> scaled_coeffs(TwiceJ tj, std::span<const cplx> coeffs);

PureState coherent_state(const SpherePoint& center, TwiceJ tj);
PureState basis_state(int twice_m, TwiceJ tj);

cplx bargmann_eval(const PureState& state, cplx gamma);

// Husimi value in [0,1]; the point at infinity evaluates the limit |f_{2j}|^2.
double husimi_eval(const PureState& state, const SpherePoint& point);

// Unitary bridge between |m>-basis amplitudes (index 0 <-> m = j) and
// Bargmann coefficients.  Round-trips are exact to rounding.
std::vector<cplx> amplitudes_from_state(const PureState& state);
PureState state_from_amplitudes(TwiceJ tj, std::span<const cplx> amps);

// <psi1|psi2> = sum_k C(2j,k)^{-1} f1_k conj(f2_k)
cplx inner_product(const PureState& a, const PureState& b);

// True when two states coincide up to a global phase, coefficient-wise
// within `tol`.
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol);

}  // namespace spinloc
