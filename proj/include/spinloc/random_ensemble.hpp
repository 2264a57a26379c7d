// Haar-random pure states and ensemble averages of the localization
// measures.
//
// A Haar-random state is sampled as a normalized vector of iid standard
// complex Gaussian amplitudes (same distribution as U|j> with U Haar).
// Exact averages over that measure:
//   <W^(q)> = N Gamma(N) Gamma(q+1) / Gamma(q+N)
//   <S^(q)> = ln[Gamma(N+1) Gamma(q+1)/Gamma(q+N)] / (1-q)
//   <S>     = Psi(N+1) - Psi(2) = sum_{n=2..N} 1/n
// Monte-Carlo runs are reproducible: sample i of a run with master seed s
// uses the derived stream (s, i), so results do not depend on thread count.
#pragma once

#include "spinloc/measures.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

PureState haar_random_state(TwiceJ tj, RngStream& rng);

double expected_moment(int n_dim, double q);
double expected_renyi(int n_dim, double q);  // q != 1
double expected_wehrl(int n_dim);

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

enum class McMeasure { moment, entropy, l2_squared };

// Per-sample measure: moment_exact for integer q, quadrature otherwise;
// entropy at q=1 uses a fixed grid sized for ~1e-8 per-sample accuracy.
McEstimate mc_mean_measure(TwiceJ tj, double q, int n_samples, std::uint64_t seed,
                           McMeasure kind = McMeasure::moment, bool parallel = true);

// two-sample Kolmogorov-Smirnov statistic (inputs need not be sorted)
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace spinloc
