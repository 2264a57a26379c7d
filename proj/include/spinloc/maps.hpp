// Candidate entropy-reducing maps on pure states and the driver that
// realizes the integer-q extremality argument:
//   F1 : every zero rotates about the z-axis onto the phi = 0 meridian
//        (gamma_k -> |gamma_k|); F1' composes F1 with a quarter x-rotation
//        and F1 again, collapsing all zeros to one point.
//   F2 : coefficient phase stripping, f_k -> |f_k| (never decreases W^(q)
//        for integer q >= 2, with equality iff f_k = e^{i alpha k} |f_k|).
//   F3 : every zero slides along its great circle toward the direction of
//        the zero barycenter by a fraction `step` of the angular distance.
// The driver iterates F2 with the meridian rotation that maximizes
// f~_0[x] = (1+x^2)^{-j} sum f_k x^k until W^(q) reaches the coherent value.
#pragma once

#include "spinloc/measures.hpp"
#include "spinloc/rotation.hpp"
#include "spinloc/state.hpp"
#include "spinloc/stellar.hpp"

namespace spinloc {

struct MapResult {
  PureState state;
  StellarRoots roots;  // the root multiset the map constructed
};

MapResult map_f1(const PureState& state);
MapResult map_f1_prime_collapse(const PureState& state);
PureState map_f2(const PureState& state);
// Throws NumericalDegeneracy("degenerate barycenter") when sum of unit
// vectors to the zeros vanishes (antipodal configurations).
MapResult map_f3(const PureState& state, double step);

// Overlap-based coherence test: 1 - sup_gamma H < tol.  (Root clustering of
// a recovered multiset is not usable here: a 2j-fold zero disperses like
// eps^(1/2j) under coefficient roundoff.)
bool is_coherent(const PureState& state, double tol = 1e-9);
// sup of the Husimi function over the sphere (coarse scan + golden section).
double husimi_sup(const PureState& state);

struct Lemma1Report {
  double w_before = 0;
  double w_after = 0;
  bool inequality_holds = false;
  bool equality_case_detected = false;
};

Lemma1Report lemma1_check(const PureState& state, int q);

// True iff the coefficient phases fit arg f_k = delta + alpha k (zeros skipped).
bool phase_pattern_matches(const PureState& state, double tol = 1e-9);

struct ScanResult {
  double x_max = 0;
  double f0_max = 0;
  bool south_dominant = false;  // sup attained at x = infinity (f_{2j})
  PureState rotated;            // R(alpha = -x_max, phi = 0) applied
};

// Pre: coefficients real non-negative (apply map_f2 first).
ScanResult rotation_scan_x(const PureState& state);

struct TraceSnapshot {
  int iter = 0;
  PureState state;
  double w = 0;
  double s = 0;
  double x_max = 0;
};

struct MapTrace {
  std::string map_name;
  int q = 0;
  std::vector<TraceSnapshot> snapshots;
  bool converged = false;
  bool monotone = true;
  std::string status;  // converged | max-iters | stalled
};

MapTrace theorem2_driver(const PureState& state, int q, int max_iters);

}  // namespace spinloc
