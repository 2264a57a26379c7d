#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "spinloc/random_ensemble.hpp"
#include "spinloc/stellar.hpp"

using namespace spinloc;
using doctest::Approx;

TEST_CASE("coherent state roots: single 2j-fold zero at the antipode") {
  const cplx center(0.6, -0.4);
  const auto roots = roots_from_state(coherent_state(SpherePoint(center), TwiceJ(6)));
  CHECK(roots.roots_at_infinity == 0);
  REQUIRE(roots.finite_roots.size() == 6);
  // a 2j-fold zero disperses like eps^(1/2j) under coefficient roundoff,
  // so membership is checked at the matching scale
  const cplx expect = -1.0 / std::conj(center);
  for (const auto& r : roots.finite_roots) CHECK(std::abs(r - expect) < 1e-2);
  cplx mean(0, 0);
  for (const auto& r : roots.finite_roots) mean += r;
  CHECK(std::abs(mean / 6.0 - expect) < 1e-3);

  const auto north = roots_from_state(coherent_state(SpherePoint(0.0, 0.0), TwiceJ(6)));
  CHECK(north.roots_at_infinity == 6);
  CHECK(north.finite_roots.empty());
}

TEST_CASE("basis state roots: j-m zeros at origin, j+m at infinity") {
  for (int tm : {-4, 0, 2, 4}) {
    const auto roots = roots_from_state(basis_state(tm, TwiceJ(4)));
    const int k = (4 - tm) / 2;
    CHECK(static_cast<int>(roots.finite_roots.size()) == k);
    for (const auto& r : roots.finite_roots) CHECK(std::abs(r) < 1e-12);
    CHECK(roots.roots_at_infinity == 4 - k);
  }
}

TEST_CASE("simple polynomial roots") {
  // coeffs ~ (-1, 0, 1): gamma^2 - 1, roots +-1
  const auto psi = PureState::normalized(TwiceJ(2), {cplx(-1, 0), cplx(0, 0), cplx(1, 0)});
  auto roots = roots_from_state(psi);
  REQUIRE(roots.finite_roots.size() == 2);
  std::sort(roots.finite_roots.begin(), roots.finite_roots.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(roots.finite_roots[0] - cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(roots.finite_roots[1] - cplx(1, 0)) < 1e-12);
}

TEST_CASE("state_from_roots basics") {
  // all roots at infinity -> the north coherent state
  StellarRoots all_inf{TwiceJ(3), {}, 3, cplx(1, 0)};
  CHECK(equal_up_to_phase(state_from_roots(all_inf),
                          coherent_state(SpherePoint(0.0, 0.0), TwiceJ(3)), 1e-14));

  StellarRoots pair{TwiceJ(2), {cplx(1, 0), cplx(-1, 0)}, 0, cplx(1, 0)};
  const auto psi = state_from_roots(pair);
  const auto expect = PureState::normalized(TwiceJ(2), {cplx(-1, 0), cplx(0, 0), cplx(1, 0)});
  CHECK(equal_up_to_phase(psi, expect, 1e-14));
  // canonical phase: first nonzero coefficient real positive
  CHECK(psi.coeffs()[0].real() > 0.0);
  CHECK(std::abs(psi.coeffs()[0].imag()) < 1e-15);

  StellarRoots bad{TwiceJ(2), {cplx(1, 0)}, 0, cplx(1, 0)};
  CHECK_THROWS_AS(state_from_roots(bad), std::invalid_argument);
}

TEST_CASE("round-trip state -> roots -> state up to phase") {
  for (int i = 0; i < 40; ++i) {
    RngStream rng = derive_stream(0x57E11A, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 12);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const auto back = state_from_roots(roots_from_state(psi));
    CHECK(equal_up_to_phase(psi, back, 1e-9));
  }
}

TEST_CASE("zero state is rejected") {
  std::vector<cplx> z(3, cplx(0, 0));
  CHECK_THROWS_AS(roots_from_state(PureState(TwiceJ(2), z, 1e18)), std::invalid_argument);
}

TEST_CASE("husimi vanishes at the stellar roots") {
  for (int i = 0; i < 20; ++i) {
    RngStream rng = derive_stream(0x57E11B, i);
    const int tj = 2 + static_cast<int>(rng.next_u64() % 8);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    for (const auto& r : roots_from_state(psi).finite_roots)
      CHECK(husimi_eval(psi, SpherePoint(r)) < 1e-10);
  }
}

TEST_CASE("expansion rescaling keeps extreme root magnitudes finite") {
  std::vector<cplx> big;
  for (int k = 0; k < 8; ++k) big.push_back(std::polar(1e3, 0.7 * k));
  StellarRoots roots{TwiceJ(8), big, 0, cplx(1, 0)};
  const auto psi = state_from_roots(roots);
  CHECK(psi.norm_error() < 1e-12);
}
