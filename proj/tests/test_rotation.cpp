#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/rotation.hpp"
#include "spinloc/stellar.hpp"

using namespace spinloc;
using doctest::Approx;

TEST_CASE("j=1/2 matrix is special unitary") {
  const Rotation rot(cplx(0.3, -1.1), 2.4);
  const Su2 m = rot.su2();
  // det = |a|^2 + |b|^2, unitarity is columns orthonormal by construction
  CHECK(std::norm(m.a) + std::norm(m.b) == Approx(1.0).epsilon(1e-14));
  const Su2 prod = m * m.dagger();
  CHECK(std::abs(prod.a - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(prod.b) < 1e-14);
}

TEST_CASE("mobius action special values") {
  // alpha = 0: gamma -> gamma e^{-i phi}
  const Rotation zrot(cplx(0, 0), 0.9);
  const cplx g(0.4, 0.7);
  CHECK(std::abs(mobius_rotate_point(zrot, SpherePoint(g)).value() -
                 g * std::polar(1.0, -0.9)) < 1e-14);
  // gamma = 0 -> alpha
  const Rotation rot(cplx(0.5, 0.2), 1.3);
  CHECK(std::abs(mobius_rotate_point(rot, SpherePoint(0.0, 0.0)).value() - cplx(0.5, 0.2)) <
        1e-14);
  // the pole gamma = e^{i phi}/conj(alpha) maps to infinity
  const cplx pole = std::polar(1.0, 1.3) / std::conj(cplx(0.5, 0.2));
  CHECK(mobius_rotate_point(rot, SpherePoint(pole)).is_infinity());
}

TEST_CASE("identity rotation fixes states") {
  RngStream rng = derive_stream(0xF0, 0);
  const auto psi = haar_random_state(TwiceJ(5), rng);
  const auto same = rotate_state(Rotation(cplx(0, 0), 0.0), psi);
  for (int k = 0; k < psi.dim(); ++k) CHECK(std::abs(psi.coeffs()[k] - same.coeffs()[k]) < 1e-14);
}

TEST_CASE("rotating the north coherent state transports its center") {
  const cplx alpha(0.8, -0.3);
  const auto rotated =
      rotate_state(Rotation(alpha, 0.0), coherent_state(SpherePoint(0.0, 0.0), TwiceJ(4)));
  CHECK(equal_up_to_phase(rotated, coherent_state(SpherePoint(alpha), TwiceJ(4)), 1e-13));
}

TEST_CASE("coherent centers transform by the mobius action") {
  RngStream rng = derive_stream(0xF1, 0);
  for (int i = 0; i < 20; ++i) {
    const Rotation rot = Rotation::random(rng);
    const SpherePoint c(rng.normal(), rng.normal());
    const auto direct = rotate_state(rot, coherent_state(c, TwiceJ(3)));
    const auto expect = coherent_state(mobius_rotate_point(rot, c), TwiceJ(3));
    CHECK(equal_up_to_phase(direct, expect, 1e-12));
  }
}

TEST_CASE("roots transform by the mobius action") {
  RngStream rng = derive_stream(0xF2, 0);
  for (int i = 0; i < 10; ++i) {
    const int tj = 2 + static_cast<int>(rng.next_u64() % 6);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const Rotation rot = Rotation::random(rng);
    const auto rotated_roots = roots_from_state(rotate_state(rot, psi));
    std::vector<SpherePoint> transported;
    for (const auto& p : roots_from_state(psi).as_points())
      transported.push_back(mobius_rotate_point(rot, p));
    // compare as multisets under the chordal metric
    auto remaining = rotated_roots.as_points();
    for (const auto& p : transported) {
      double best = 1e9;
      std::size_t best_i = 0;
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        const double d = chordal_distance(p, remaining[k]);
        if (d < best) {
          best = d;
          best_i = k;
        }
      }
      CHECK(best < 1e-6);
      remaining.erase(remaining.begin() + best_i);
    }
  }
}

TEST_CASE("group composition acts on states up to a global phase") {
  RngStream rng = derive_stream(0xF3, 0);
  for (int i = 0; i < 25; ++i) {
    const int tj = 1 + static_cast<int>(rng.next_u64() % 8);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const Rotation r1 = Rotation::random(rng);
    const Rotation r2 = Rotation::random(rng);
    const auto two_step = rotate_state(r2, rotate_state(r1, psi));
    const auto one_step = rotate_state(Rotation::compose(r2, r1), psi);
    CHECK(equal_up_to_phase(two_step, one_step, 1e-10));
  }
}

TEST_CASE("rotation preserves the norm and W^(2)") {
  RngStream rng = derive_stream(0xF4, 0);
  for (int i = 0; i < 25; ++i) {
    const int tj = 1 + static_cast<int>(rng.next_u64() % 10);
    const auto psi = haar_random_state(TwiceJ(tj), rng);
    const Rotation rot = Rotation::random(rng);
    const auto rotated = rotate_state(rot, psi);
    CHECK(rotated.norm_error() < 1e-12);
    CHECK(moment_exact(rotated, 2) == Approx(moment_exact(psi, 2)).epsilon(1e-10));
  }
}

TEST_CASE("large-alpha rotations go through the factorized path") {
  RngStream rng = derive_stream(0xF5, 0);
  const auto psi = haar_random_state(TwiceJ(6), rng);
  const Rotation big(cplx(40.0, -15.0), 0.7);
  const auto rotated = rotate_state(big, psi);
  CHECK(rotated.norm_error() < 1e-11);
  CHECK(moment_exact(rotated, 2) == Approx(moment_exact(psi, 2)).epsilon(1e-9));
}

TEST_CASE("about_x quarter turn maps the meridian to the equator") {
  const Rotation rx = Rotation::about_x(0.5 * kPi);
  // north pole lands on the equator
  const auto moved = mobius_rotate_point(rx, SpherePoint(0.0, 0.0));
  CHECK(std::abs(std::abs(moved.value()) - 1.0) < 1e-14);
  // the x-axis point gamma = 1 is fixed
  CHECK(std::abs(mobius_rotate_point(rx, SpherePoint(1.0, 0.0)).value() - cplx(1.0, 0.0)) <
        1e-14);
}
