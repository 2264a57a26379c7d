// SU(2) rotations: the (alpha, phi) parameterization, the induced Moebius
// action on the sphere and the exact coefficient-level action on states.
//
// The j=1/2 matrix is
//   [[ e^{i phi/2},          -conj(alpha) e^{-i phi/2} ],
//    [ alpha e^{i phi/2},     e^{-i phi/2}             ]] / sqrt(1+|alpha|^2)
// and the point action is gamma -> (gamma + alpha e^{i phi}) /
// (e^{i phi} - conj(alpha) gamma).  On Bargmann coefficients the action is a
// closed-form polynomial substitution (norm-preserving, exact up to rounding).
#pragma once

#include "spinloc/common.hpp"
#include "spinloc/sphere.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

// An SU(2) element as the first column (a, b); the matrix is [[a, -conj b],[b, conj a]].
struct Su2 {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  Su2 normalized() const;
  Su2 dagger() const { return {std::conj(a), -b}; }
  friend Su2 operator*(const Su2& l, const Su2& r) {
    return {l.a * r.a - std::conj(l.b) * r.b, l.b * r.a + std::conj(l.a) * r.b};
  }
};

class Rotation {
 public:
  Rotation(cplx alpha, double phi);

  cplx alpha() const { return alpha_; }
  double phi() const { return phi_; }

  Su2 su2() const;
  // Fails on the measure-zero set a == 0 (phi would be undefined).
  static Rotation from_su2(const Su2& m);

  // group composition: apply `first`, then `second`
  static Rotation compose(const Rotation& second, const Rotation& first);

  // rotation about the y-axis by angle beta (alpha = tan(beta/2), phi = 0)
  static Rotation about_y(double beta);
  // rotation about the x-axis by angle beta (alpha = -i tan(beta/2), phi = 0)
  static Rotation about_x(double beta);
  // Haar-uniform rotation
  static Rotation random(RngStream& rng);

 private:
  cplx alpha_;
  double phi_;
};

SpherePoint mobius_rotate_point(const Su2& m, const SpherePoint& p);
SpherePoint mobius_rotate_point(const Rotation& rot, const SpherePoint& p);

PureState rotate_state(const Rotation& rot, const PureState& state);
// Arbitrary SU(2) elements (including a ~ 0) via internal factorization.
PureState rotate_state(const Su2& m, const PureState& state);

}  // namespace spinloc
