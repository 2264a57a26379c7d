#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinloc/measures.hpp"
#include "spinloc/quadrature.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/reference.hpp"

using namespace spinloc;
using doctest::Approx;

namespace {

PureState random_state(int tj, int idx) {
  RngStream rng = derive_stream(0xAB, idx * 100 + tj);
  return haar_random_state(TwiceJ(tj), rng);
}

}  // namespace

TEST_CASE("measure is normalized: integral of 1 dmu = 1") {
  for (int nu : {2, 9, 40}) {
    const auto g = QuadratureGrid::gauss_legendre(nu, 7);
    const std::vector<std::vector<cplx>> fields{{cplx(1.0, 0.0)}};
    const double one = integrate_fields<double>(TwiceJ(0), fields, g,
                                                [](std::span<const cplx>) { return 1.0; });
    CHECK(one == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("gauss-legendre exactness on u-polynomials") {
  // int u^a du/2 over [-1,1] = 1/(a+1) for even a, 0 for odd
  const auto g = QuadratureGrid::gauss_legendre(6, 4);
  for (int a = 0; a <= 11; ++a) {
    double acc = 0.0;
    for (int i = 0; i < g.n_u(); ++i) acc += 0.5 * g.u_weights()[i] * std::pow(g.u_nodes()[i], a);
    const double expect = (a % 2 == 0) ? 1.0 / (a + 1) : 0.0;
    CHECK(acc == Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("uniform phi rule annihilates harmonics below n_phi") {
  const int n_phi = 9;
  for (int k = 1; k < n_phi; ++k) {
    cplx acc(0.0, 0.0);
    for (int t = 0; t < n_phi; ++t) acc += std::polar(1.0, 2.0 * kPi * k * t / n_phi);
    CHECK(std::abs(acc) / n_phi < 1e-14);
  }
}

TEST_CASE("husimi normalization: N int H dmu = 1") {
  for (int tj : {1, 4, 11}) {
    const auto psi = random_state(tj, 1);
    const double w1 = moment_quadrature(psi, 1.0, QuadratureGrid::exact_for(TwiceJ(tj), 1));
    CHECK(w1 == Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("scalar product via quadrature matches coefficient space") {
  const int tj = 6;
  const auto a = random_state(tj, 2);
  const auto b = random_state(tj, 3);
  const std::vector<std::vector<cplx>> fields{a.scaled_coeffs(), b.scaled_coeffs()};
  // <a|b> = N int K^{-1} psi_a conj(psi_b) dmu = N int A_a conj(A_b) dmu
  const cplx quad =
      static_cast<double>(tj + 1) *
      integrate_fields<cplx>(TwiceJ(tj), fields, QuadratureGrid::exact_for(TwiceJ(tj), 1),
                             [](std::span<const cplx> v) { return v[0] * std::conj(v[1]); });
  const cplx direct = inner_product(a, b);
  CHECK(std::abs(quad - direct) < 1e-13);
}

TEST_CASE("optimized kernel agrees with the naive reference") {
  for (int tj : {2, 7, 16}) {
    const auto psi = random_state(tj, 4);
    const auto grid = QuadratureGrid::exact_for(TwiceJ(tj), 3);
    const double opt_w = moment_quadrature(psi, 3.0, grid);
    const double ref_w = reference::moment_quadrature(psi, 3.0, grid);
    CHECK(opt_w == Approx(ref_w).epsilon(1e-12));

    const auto egrid = QuadratureGrid::gauss_legendre(4 * tj + 8, 8 * tj + 8);
    const std::vector<std::vector<cplx>> fields{psi.scaled_coeffs()};
    const double opt_s = -psi.dim() * integrate_fields<double>(
                                          psi.twice_j(), fields, egrid,
                                          [](std::span<const cplx> v) {
                                            const double h = std::norm(v[0]);
                                            return h > 0.0 ? h * std::log(h) : 0.0;
                                          });
    const double ref_s = reference::wehrl_entropy(psi, egrid);
    CHECK(opt_s == Approx(ref_s).epsilon(1e-11));
  }
}

TEST_CASE("adaptive refinement converges and flags the node cap") {
  const auto psi = coherent_state(SpherePoint(0.0, 0.0), TwiceJ(2));
  const std::vector<std::vector<cplx>> fields{psi.scaled_coeffs()};
  const double val = adaptive_integrate_fields(
      TwiceJ(2), fields, 2, 4,
      [](std::span<const cplx> v) { return std::pow(std::norm(v[0]), 0.75); });
  // H_coh^{3/4} = v^{3/2} in v = (1+u)/2; its mean over the sphere is 1/2.5
  CHECK(val == Approx(1.0 / 2.5).epsilon(1e-10));

  QuadOptions tight;
  tight.rtol = 1e-16;
  tight.atol = 0.0;
  tight.max_nodes = 32;
  CHECK_THROWS_AS(adaptive_integrate_fields(
                      TwiceJ(2), fields, 2, 4,
                      [](std::span<const cplx> v) { return std::pow(std::norm(v[0]), 0.75); },
                      tight),
                  NonConvergence);
}

TEST_CASE("exact_for grid sizes satisfy the exactness contract") {
  const auto g = QuadratureGrid::exact_for(TwiceJ(5), 3);
  // u-degree 15 needs n_u >= 8; phi harmonics to 15 need n_phi >= 16
  CHECK(g.n_u() == 8);
  CHECK(g.n_phi() == 32);
  CHECK_THROWS_AS(QuadratureGrid::exact_for(TwiceJ(5), 0), std::invalid_argument);
}
