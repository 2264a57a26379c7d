#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinloc/state.hpp"

using namespace spinloc;
using doctest::Approx;

TEST_CASE("kernel values and south-pole error") {
  CHECK(kernel(SpherePoint(0.0, 0.0), TwiceJ(4)) == Approx(1.0));
  CHECK(kernel(SpherePoint(1.0, 0.0), TwiceJ(2)) == Approx(4.0));
  CHECK(kernel(SpherePoint(0.0, 2.0), TwiceJ(2)) == Approx(25.0));
  CHECK_THROWS_AS(kernel(SpherePoint::infinity(), TwiceJ(2)), std::domain_error);
  // large j stays finite through the log-space path
  CHECK(std::isfinite(log_kernel(SpherePoint(10.0, 0.0), TwiceJ(500))));
}

TEST_CASE("coherent state coefficients") {
  const auto north = coherent_state(SpherePoint(0.0, 0.0), TwiceJ(2));
  CHECK(north.coeffs()[0].real() == Approx(1.0));
  CHECK(std::abs(north.coeffs()[1]) == Approx(0.0));
  CHECK(std::abs(north.coeffs()[2]) == Approx(0.0));

  const auto south = coherent_state(SpherePoint::infinity(), TwiceJ(2));
  CHECK(std::abs(south.coeffs()[2]) == Approx(1.0));
  CHECK(std::abs(south.coeffs()[0]) == Approx(0.0));

  const auto one = coherent_state(SpherePoint(1.0, 0.0), TwiceJ(2));
  CHECK(one.coeffs()[0].real() == Approx(0.5));
  CHECK(one.coeffs()[1].real() == Approx(1.0));
  CHECK(one.coeffs()[2].real() == Approx(0.5));
}

TEST_CASE("basis states") {
  const auto top = basis_state(2, TwiceJ(2));  // m = j
  CHECK(equal_up_to_phase(top, coherent_state(SpherePoint(0.0, 0.0), TwiceJ(2)), 1e-14));
  const auto bottom = basis_state(-2, TwiceJ(2));  // m = -j
  CHECK(equal_up_to_phase(bottom, coherent_state(SpherePoint::infinity(), TwiceJ(2)), 1e-14));
  const auto mid = basis_state(0, TwiceJ(2));
  CHECK(mid.coeffs()[0] == cplx(0.0, 0.0));
  CHECK(mid.coeffs()[1].real() == Approx(std::sqrt(2.0)));
  CHECK(mid.coeffs()[2] == cplx(0.0, 0.0));
  CHECK_THROWS_AS(basis_state(3, TwiceJ(2)), std::invalid_argument);
  CHECK_THROWS_AS(basis_state(1, TwiceJ(2)), std::invalid_argument);  // parity
}

TEST_CASE("bargmann evaluation") {
  const auto north = coherent_state(SpherePoint(0.0, 0.0), TwiceJ(2));
  CHECK(std::abs(bargmann_eval(north, cplx(0.3, -0.7)) - cplx(1.0, 0.0)) < 1e-15);
  const auto one = coherent_state(SpherePoint(1.0, 0.0), TwiceJ(2));
  CHECK(bargmann_eval(one, cplx(1.0, 0.0)).real() == Approx(2.0));
  const auto mid = basis_state(0, TwiceJ(2));
  CHECK(bargmann_eval(mid, cplx(3.0, 0.0)).real() == Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("husimi values") {
  const auto north = coherent_state(SpherePoint(0.0, 0.0), TwiceJ(2));
  CHECK(husimi_eval(north, SpherePoint(0.0, 0.0)) == Approx(1.0));
  CHECK(husimi_eval(north, SpherePoint(std::polar(1.0, 0.4))) == Approx(0.25));
  CHECK(husimi_eval(basis_state(0, TwiceJ(2)), SpherePoint(0.0, 0.0)) == Approx(0.0));
  // infinity limit is |f_{2j}|^2
  CHECK(husimi_eval(basis_state(-2, TwiceJ(2)), SpherePoint::infinity()) == Approx(1.0));
  // peak value 1 at the center for generic coherent states
  const SpherePoint c(0.8, -0.55);
  const auto coh = coherent_state(c, TwiceJ(9));
  CHECK(husimi_eval(coh, c) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("husimi bound on random states") {
  for (int i = 0; i < 1000; ++i) {
    RngStream rng = derive_stream(99, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 12);
    std::vector<cplx> amps(tj + 1);
    long double n2 = 0;
    for (auto& a : amps) {
      a = rng.normal_cplx();
      n2 += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(static_cast<double>(n2));
    const auto psi = state_from_amplitudes(TwiceJ(tj), amps);
    const double r = std::exp(3.0 * (rng.uniform01() - 0.5));
    const double h = husimi_eval(psi, SpherePoint(std::polar(r, 2 * kPi * rng.uniform01())));
    CHECK(h >= 0.0);
    CHECK(h <= 1.0 + 1e-12);
  }
}

TEST_CASE("normalization invariant enforced") {
  std::vector<cplx> bad{cplx(2.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK_THROWS_AS(PureState(TwiceJ(2), bad), std::invalid_argument);
  const auto fixed = PureState::normalized(TwiceJ(2), bad);
  CHECK(fixed.norm_error() < 1e-14);
  std::vector<cplx> zero{cplx(0.0, 0.0)};
  CHECK_THROWS_AS(PureState::normalized(TwiceJ(0), zero), std::invalid_argument);
}

TEST_CASE("amplitude bridge round-trips and norm preservation") {
  // |j> maps to f = (1, 0, ..., 0)
  std::vector<cplx> a(5, cplx(0.0, 0.0));
  a[0] = 1.0;
  CHECK(state_from_amplitudes(TwiceJ(4), a).coeffs()[0].real() == Approx(1.0));
  // 2j=2, a_{m=0} = 1 -> f_1 = sqrt(2)
  std::vector<cplx> b(3, cplx(0.0, 0.0));
  b[1] = 1.0;
  CHECK(state_from_amplitudes(TwiceJ(2), b).coeffs()[1].real() == Approx(std::sqrt(2.0)));

  for (int i = 0; i < 50; ++i) {
    RngStream rng = derive_stream(7, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 20);
    std::vector<cplx> amps(tj + 1);
    long double n2 = 0;
    for (auto& x : amps) {
      x = rng.normal_cplx();
      n2 += std::norm(x);
    }
    for (auto& x : amps) x /= std::sqrt(static_cast<double>(n2));
    const auto psi = state_from_amplitudes(TwiceJ(tj), amps);
    CHECK(psi.norm_error() < 1e-12);
    const auto back = amplitudes_from_state(psi);
    for (int k = 0; k <= tj; ++k) CHECK(std::abs(back[k] - amps[k]) < 1e-14);
  }
  CHECK_THROWS_AS(state_from_amplitudes(TwiceJ(3), a), std::invalid_argument);
}

TEST_CASE("sphere point conversions") {
  CHECK(SpherePoint(0.0, 0.0).cos_theta() == Approx(1.0));
  CHECK(SpherePoint::infinity().cos_theta() == Approx(-1.0));
  const SpherePoint p(0.3, -0.8);
  const auto v = p.unit_vector();
  CHECK(norm(v) == Approx(1.0));
  const auto q = SpherePoint::from_unit_vector(v);
  CHECK(std::abs(q.value() - p.value()) < 1e-14);
  CHECK(chordal_distance(SpherePoint(0.0, 0.0), SpherePoint::infinity()) == Approx(2.0));
}
