#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinloc/maps.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/rotation.hpp"

using namespace spinloc;
using doctest::Approx;

TEST_CASE("fixed seed reproduces the state") {
  RngStream a = derive_stream(42, 7);
  RngStream b = derive_stream(42, 7);
  const auto s1 = haar_random_state(TwiceJ(5), a);
  const auto s2 = haar_random_state(TwiceJ(5), b);
  for (int k = 0; k < s1.dim(); ++k) CHECK(s1.coeffs()[k] == s2.coeffs()[k]);
  RngStream c = derive_stream(43, 7);
  const auto s3 = haar_random_state(TwiceJ(5), c);
  CHECK(std::abs(s3.coeffs()[0] - s1.coeffs()[0]) > 1e-12);
}

TEST_CASE("amplitude moduli average to 1/N") {
  const int n_samples = 10000;
  const TwiceJ tj(3);
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n_samples; ++i) {
    RngStream rng = derive_stream(0xD1CE, i);
    const auto amps = amplitudes_from_state(haar_random_state(tj, rng));
    const double v = std::norm(amps[1]);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n_samples;
  const double se = std::sqrt((sum2 / n_samples - mean * mean) / n_samples);
  CHECK(std::abs(mean - 0.25) < 3.0 * se);
}

TEST_CASE("every spin-1/2 draw is coherent") {
  for (int i = 0; i < 50; ++i) {
    RngStream rng = derive_stream(0xD1CF, i);
    CHECK(is_coherent(haar_random_state(TwiceJ(1), rng)));
  }
}

TEST_CASE("exact ensemble averages") {
  CHECK(expected_moment(4, 2.0) == Approx(2.0 / 5.0).epsilon(1e-14));
  CHECK(expected_moment(7, 1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(expected_moment(3, 3.0) == Approx(3.0 / 10.0).epsilon(1e-14));
  CHECK(expected_wehrl(3) == Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(expected_wehrl(2) == Approx(0.5).epsilon(1e-14));
  CHECK(expected_wehrl(5) == Approx(77.0 / 60.0).epsilon(1e-14));
  // q -> 1 limit of the Renyi mean approaches the Wehrl mean
  CHECK(expected_renyi(6, 1.0 + 1e-6) == Approx(expected_wehrl(6)).epsilon(1e-5));
  CHECK(expected_renyi(6, 1.0 - 1e-6) == Approx(expected_wehrl(6)).epsilon(1e-5));
  // asymptotics: <S>_N -> ln N + gamma - 1
  CHECK(std::abs(expected_wehrl(1000) - (std::log(1000.0) + kEulerGamma - 1.0)) < 1e-3);
  CHECK_THROWS_AS(expected_moment(1, 2.0), std::invalid_argument);
}

TEST_CASE("monte-carlo means agree with the exact averages") {
  for (int n_dim : {3, 5, 9}) {
    const auto w2 = mc_mean_measure(TwiceJ(n_dim - 1), 2.0, 4000, 0xABCD, McMeasure::moment);
    CHECK(std::abs(w2.mean - 2.0 / (n_dim + 1.0)) < 3.0 * w2.std_error);
    const auto w3 = mc_mean_measure(TwiceJ(n_dim - 1), 3.0, 4000, 0xABD0, McMeasure::moment);
    CHECK(std::abs(w3.mean - expected_moment(n_dim, 3.0)) < 3.0 * w3.std_error);
    const auto s = mc_mean_measure(TwiceJ(n_dim - 1), 1.0, 2000, 0xABCE, McMeasure::entropy);
    CHECK(std::abs(s.mean - expected_wehrl(n_dim)) < 3.0 * s.std_error);
    CHECK(s.seed == 0xABCE);
    CHECK(s.n_samples == 2000);
  }
  // N = 2: every draw is coherent, zero variance
  const auto flat = mc_mean_measure(TwiceJ(1), 2.0, 500, 0xABCF, McMeasure::moment);
  CHECK(flat.mean == Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(flat.std_error < 1e-14);
}

TEST_CASE("fixed entropy grid is accurate enough for sampling") {
  // the MC entropy path uses a fixed grid; its bias (~1e-6 on random draws)
  // sits orders of magnitude below the Monte-Carlo error 3 sigma/sqrt(n)
  for (int tj : {2, 4, 8}) {
    for (int i = 0; i < 3; ++i) {
      RngStream rng = derive_stream(0xFEED, 16 * tj + i);
      const auto psi = haar_random_state(TwiceJ(tj), rng);
      const auto grid = QuadratureGrid::gauss_legendre(4 * tj + 24, 8 * tj + 24);
      const std::vector<std::vector<cplx>> fields{psi.scaled_coeffs()};
      const double fixed = -psi.dim() * integrate_fields<double>(
                                            psi.twice_j(), fields, grid,
                                            [](std::span<const cplx> a) {
                                              const double h = std::norm(a[0]);
                                              return h > 0.0 ? h * std::log(h) : 0.0;
                                            });
      CHECK(fixed == Approx(wehrl_entropy(psi)).epsilon(1e-5));
    }
  }
}

TEST_CASE("monte-carlo l2 distance matches the ensemble value") {
  const int tj = 8;
  const auto est = mc_mean_measure(TwiceJ(tj), 2.0, 4000, 0xBEE, McMeasure::l2_squared);
  const double exact = static_cast<double>(tj) / ((tj + 1.0) * (tj + 2.0));
  CHECK(std::abs(est.mean - exact) < 3.0 * est.std_error);
  // the ensemble-average distance decreases with j (toward uniformity)
  double prev = 1.0;
  for (int t : {2, 8, 32, 128}) {
    const double v = static_cast<double>(t) / ((t + 1.0) * (t + 2.0));
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("haar invariance: rotated batch passes a KS test") {
  const int n = 1000;
  std::vector<double> plain(n), rotated(n);
  RngStream rot_rng = derive_stream(0x40772, 0);
  const Rotation rot = Rotation::random(rot_rng);
  for (int i = 0; i < n; ++i) {
    RngStream r1 = derive_stream(0x222, i);
    RngStream r2 = derive_stream(0x333, i);
    plain[i] = renyi_entropy(haar_random_state(TwiceJ(4), r1), 2.0);
    rotated[i] = renyi_entropy(rotate_state(rot, haar_random_state(TwiceJ(4), r2)), 2.0);
  }
  // two-sample KS critical value at 1%: 1.628 sqrt(2/n)
  CHECK(ks_statistic(plain, rotated) < 1.628 * std::sqrt(2.0 / n));
}

TEST_CASE("ks statistic sanity") {
  std::vector<double> a{0.1, 0.2, 0.3, 0.4};
  std::vector<double> b{1.1, 1.2, 1.3, 1.4};
  CHECK(ks_statistic(a, b) == Approx(1.0));
  CHECK(ks_statistic(a, a) == Approx(0.0));
  CHECK_THROWS_AS(ks_statistic({}, a), std::invalid_argument);
}

TEST_CASE("parallel and serial sampling reduce identically") {
  const auto par = mc_mean_measure(TwiceJ(6), 2.0, 3000, 0x7777, McMeasure::moment, true);
  const auto ser = mc_mean_measure(TwiceJ(6), 2.0, 3000, 0x7777, McMeasure::moment, false);
  CHECK(par.mean == ser.mean);
  CHECK(par.std_error == ser.std_error);
}
