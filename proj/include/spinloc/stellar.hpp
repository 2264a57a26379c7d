// Stellar representation: a spin-j state as the 2j zeros of its Bargmann
// polynomial (roots at the south pole counted separately as degree drop).
#pragma once

#include "spinloc/common.hpp"
#include "spinloc/sphere.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

struct StellarRoots {
  TwiceJ twice_j;
  std::vector<cplx> finite_roots;  // multiplicity by repetition
  int roots_at_infinity = 0;
  // 1/N in psi = N^{-1} prod(gamma - root); phase fixed so the first nonzero
  // coefficient of the rebuilt state is real positive.
  cplx inv_normalization{1.0, 0.0};

  int total() const { return static_cast<int>(finite_roots.size()) + roots_at_infinity; }
  std::vector<SpherePoint> as_points() const;

  // max pairwise chordal distance of the full root multiset
  double cluster_spread() const;
};

// Zeros of the coefficient polynomial via a balanced companion matrix with a
// Newton polish; coefficients below 1e-14 * max|f| at the leading end count
// as roots at infinity.
StellarRoots roots_from_state(const PureState& state);

// Expands prod(gamma - root), renormalizes and canonicalizes the phase.
PureState state_from_roots(const StellarRoots& roots);

StellarRoots roots_from_points(TwiceJ tj, const std::vector<SpherePoint>& points);

}  // namespace spinloc
