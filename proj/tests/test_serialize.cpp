#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "spinloc/random_ensemble.hpp"
#include "spinloc/serialize.hpp"

using namespace spinloc;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/spinloc_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("state json round-trip") {
  RngStream rng = derive_stream(0x5E1A, 0);
  const auto psi = haar_random_state(TwiceJ(7), rng);
  const auto back = state_from_json(state_to_json(psi));
  CHECK(back.twice_j().twice() == 7);
  for (int k = 0; k < psi.dim(); ++k) CHECK(psi.coeffs()[k] == back.coeffs()[k]);
}

TEST_CASE("roots json round-trip") {
  StellarRoots roots{TwiceJ(4), {cplx(0.5, -1.0), cplx(2.0, 0.25)}, 2, cplx(1, 0)};
  const auto back = roots_from_json(roots_to_json(roots));
  CHECK(back.twice_j.twice() == 4);
  CHECK(back.roots_at_infinity == 2);
  REQUIRE(back.finite_roots.size() == 2);
  CHECK(back.finite_roots[0] == roots.finite_roots[0]);
}

TEST_CASE("hamiltonian json round-trip") {
  RngStream rng = derive_stream(0x5E1B, 0);
  const auto h = SpinHamiltonian::random_gue(TwiceJ(3), rng);
  const auto back = hamiltonian_from_json(hamiltonian_to_json(h));
  CHECK((back.matrix() - h.matrix()).norm() == 0.0);
}

TEST_CASE("report json carries every filled field") {
  const auto rep = coherent_closed_forms(TwiceJ(4), 2.0);
  const json j = report_to_json(rep);
  CHECK(j.at("twice_j") == 4);
  CHECK(j.at("method") == "closed-form");
  CHECK(j.at("W").at("2").get<double>() == rep.W.at(2.0));
  CHECK(j.at("R").get<double>() == *rep.R);
}

TEST_CASE("load_state_file accepts coeff and root records") {
  RngStream rng = derive_stream(0x5E1C, 0);
  const auto psi = haar_random_state(TwiceJ(5), rng);
  TempFile coeffs("state.json");
  save_json_file(coeffs.path, state_to_json(psi));
  CHECK(equal_up_to_phase(load_state_file(coeffs.path), psi, 1e-14));

  TempFile roots("roots.json");
  save_json_file(roots.path, roots_to_json(roots_from_state(psi)));
  CHECK(equal_up_to_phase(load_state_file(roots.path), psi, 1e-8));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(load_state_file("/nonexistent/state.json"), std::invalid_argument);
  TempFile bad("bad.json");
  {
    std::ofstream out(bad.path);
    out << "{\"twice_j\": 2}\n";
  }
  CHECK_THROWS_AS(load_state_file(bad.path), std::invalid_argument);
  TempFile denorm("denorm.json");
  {
    std::ofstream out(denorm.path);
    out << "{\"twice_j\": 2, \"coeffs\": [[5.0, 0], [0, 0], [0, 0]]}\n";
  }
  CHECK_THROWS_AS(load_state_file(denorm.path), std::invalid_argument);
}

TEST_CASE("full-precision formatting survives a round trip") {
  const double x = 0.1234567890123456789;
  CHECK(std::stod(format_full(x)) == x);
  CHECK(std::stod(format_full(5.0 / 3.0)) == 5.0 / 3.0);
}
