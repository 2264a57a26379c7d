// Localization measures of spin-j pure states.
//
//   W^(q) = N int H^q dmu            S^(q) = log(W^(q)) / (1-q),  S^(1) Wehrl
//   Y^(q) = N/(N-1) int (1-H)^q dmu  Z^(q) = log(Y^(q)) / (1-q)
//   R = 1/W^(2) = exp S^(2),         T = 1/Y^(2) = exp Z^(2)
//
// Integer q moments are exact: W^(q) reduces to the q-fold coefficient
// self-convolution g = f^{*q},
//   W^(q) = (2j+1)/(2qj+1) sum_m C(2qj,m)^{-1} |g_m|^2,
// and integer-q dual moments expand binomially into W^(k).  Everything else
// goes through sphere quadrature (exact grids for trig-polynomial integrands,
// direction-adaptive refinement otherwise).
#pragma once

#include <map>
#include <optional>

#include "spinloc/quadrature.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

double moment_exact(const PureState& state, int q);

// W^(1..n_max) in one convolution sweep (used by the series identities).
std::vector<double> moments_exact_batch(const PureState& state, int n_max);

// Integer q: single evaluation on `grid` (pass an exact grid).  Non-integer:
// direction-adaptive refinement starting from `grid`.
double moment_quadrature(const PureState& state, double q, const QuadratureGrid& grid,
                         const QuadOptions& opt = {});
double moment_quadrature(const PureState& state, double q, const QuadOptions& opt = {});

double wehrl_entropy(const PureState& state, const QuadOptions& opt = {});
double renyi_entropy(const PureState& state, double q, const QuadOptions& opt = {});

double dual_moment(const PureState& state, double q, const QuadOptions& opt = {});
// Quadrature route for Y^(q) regardless of q (the exact binomial expansion
// stays available through dual_moment); used as the second leg of dual-route
// checks.
double dual_moment_quadrature(const PureState& state, double q, const QuadOptions& opt = {});
double dual_entropy(const PureState& state, double q, const QuadOptions& opt = {});

double participation(const PureState& state);
double dual_participation(const PureState& state);

// L2 distance of the Husimi density to the uniform one: L2^2 = W^(2) - 1/N.
double l2_to_uniform(const PureState& state);
// Independent route: direct quadrature of N int (H - 1/N)^2 dmu.
double l2_to_uniform_quadrature(const PureState& state);

struct MeasureReport {
  int twice_j = 0;
  std::string method;  // exact | quadrature | closed-form | mixed
  std::map<double, double> W, S, Y, Z;
  std::map<double, std::string> method_by_q;
  std::optional<double> R, T;
};

MeasureReport coherent_closed_forms(TwiceJ tj, double q);
MeasureReport jz_closed_forms(TwiceJ tj, int twice_m, double q);

// Wehrl entropy of an SU(d) coherent state, S = m [psi(m+d) - psi(m+1)].
double sud_coherent_wehrl(int d, int m);

// Full report for a state over a q-list; R/T always filled from the exact
// q=2 moments.
MeasureReport measure_report(const PureState& state, std::span<const double> qs,
                             const QuadOptions& opt = {});

struct SeriesResult {
  double value = 0;
  double truncation_bound = 0;
  int n_terms = 0;
};

// Z = (1/2j) [1 - sum_{n>=2} W^(n)/(n(n-1))]; tail bound 1/(2j n).
SeriesResult z_from_w_series(const PureState& state, int n_max);
// S = 2j [1 - sum_{n>=2} Y^(n)/(n(n-1))]; tail bound 2j/n.
SeriesResult s_from_y_series(const PureState& state, int n_max,
                             const QuadOptions& opt = {});

}  // namespace spinloc
