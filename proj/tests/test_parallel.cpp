// The OpenMP kernels store per-row results and reduce them in index order,
// so parallel and single-thread runs must agree bit for bit; the naive
// reference implementation pins the numerics themselves.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/reference.hpp"

using namespace spinloc;
using doctest::Approx;

TEST_CASE("quadrature kernel: OpenMP equals serial bitwise") {
  for (int tj : {3, 10, 24}) {
    RngStream rng = derive_stream(0x9A9A, tj);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const auto grid = QuadratureGrid::exact_for(TwiceJ(tj), 2);
    QuadOptions ser;
    ser.parallel = false;
    const double a = moment_quadrature(psi, 2.0, grid, QuadOptions{});
    const double b = moment_quadrature(psi, 2.0, grid, ser);
    CHECK(a == b);
  }
}

TEST_CASE("multi-output kernel: OpenMP equals serial bitwise") {
  RngStream rng = derive_stream(0x9A9B, 0);
  const auto psi = haar_random_state(TwiceJ(4), rng);
  QuadOptions ser;
  ser.parallel = false;
  const auto a = s_from_y_series(psi, 60, QuadOptions{});
  const auto b = s_from_y_series(psi, 60, ser);
  CHECK(a.value == b.value);
}

TEST_CASE("adaptive path: OpenMP equals serial bitwise") {
  RngStream rng = derive_stream(0x9A9C, 0);
  const auto psi = haar_random_state(TwiceJ(6), rng);
  QuadOptions par, ser;
  ser.parallel = false;
  CHECK(wehrl_entropy(psi, par) == wehrl_entropy(psi, ser));
  CHECK(moment_quadrature(psi, 1.5, par) == moment_quadrature(psi, 1.5, ser));
}

TEST_CASE("kernels agree with the naive reference") {
  for (int tj : {2, 9, 20}) {
    RngStream rng = derive_stream(0x9A9D, tj);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const auto grid = QuadratureGrid::exact_for(TwiceJ(tj), 2);
    CHECK(moment_quadrature(psi, 2.0, grid) ==
          Approx(reference::moment_quadrature(psi, 2.0, grid)).epsilon(1e-12));
  }
}

TEST_CASE("monte-carlo sampler: thread count cannot change the estimate") {
  const auto par = mc_mean_measure(TwiceJ(4), 3.0, 2000, 0xC0DE, McMeasure::moment, true);
  const auto ser = mc_mean_measure(TwiceJ(4), 3.0, 2000, 0xC0DE, McMeasure::moment, false);
  CHECK(par.mean == ser.mean);
  CHECK(par.std_error == ser.std_error);
  CHECK(par.seed == ser.seed);
}
