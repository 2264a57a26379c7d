#include "spinloc/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "spinloc/dynamics.hpp"
#include "spinloc/maps.hpp"
#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/rotation.hpp"

namespace spinloc {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  double worst = 0.0;
  bool ok = true;
  void expect(double err, double tol) {
    worst = std::max(worst, err);
    ok = ok && err <= tol;
  }
  void require(bool cond) { ok = ok && cond; }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// ---- 1. coherent closed-form battery -------------------------------------

CriterionResult criterion_closed_form_battery(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  Checker exact, quad;
  const double qs[] = {0.5, 1.0, 2.0, 3.0, 4.0};
  for (int tj = 1; tj <= 20; ++tj) {
    const TwiceJ j2(tj);
    const PureState coh = coherent_state(SpherePoint(0.0, 0.0), j2);
    for (double q : qs) {
      const MeasureReport cf = coherent_closed_forms(j2, q);
      int qi = 0;
      const bool integer = is_integer_q(q, &qi);
      const bool boltzmann = std::abs(q - 1.0) < 1e-12;
      // exact path (integer q only)
      if (integer && !boltzmann) {
        const double w = moment_exact(coh, qi);
        exact.expect(std::abs(w - cf.W.at(q)), 1e-12);
        exact.expect(std::abs(std::log(w) / (1.0 - q) - cf.S.at(q)), 1e-12);
        const double y = dual_moment(coh, q);
        exact.expect(std::abs(y - cf.Y.at(q)), 1e-12);
        exact.expect(std::abs(std::log(y) / (1.0 - q) - cf.Z.at(q)), 1e-12);
      }
      if (boltzmann) exact.expect(std::abs(moment_exact(coh, 1) - cf.W.at(q)), 1e-12);
      // quadrature path
      const double wq = moment_quadrature(coh, q, opt);
      quad.expect(std::abs(wq - cf.W.at(q)), 1e-10);
      const double sq = boltzmann ? wehrl_entropy(coh, opt) : std::log(wq) / (1.0 - q);
      quad.expect(std::abs(sq - cf.S.at(q)), 1e-10);
      const double yq = dual_moment_quadrature(coh, q, opt);
      quad.expect(std::abs(yq - cf.Y.at(q)), 1e-10);
      const double zq = boltzmann ? dual_entropy(coh, 1.0, opt) : std::log(yq) / (1.0 - q);
      quad.expect(std::abs(zq - cf.Z.at(q)), 1e-10);
    }
    exact.expect(std::abs(participation(coh) - (2.0 * tj + 1.0) / (tj + 1.0)), 1e-12);
    exact.expect(std::abs(dual_participation(coh) - (2.0 * tj + 1.0) / (2.0 * tj)), 1e-12);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{1, "coherent closed-form battery (2j<=20, q in {0.5,1,2,3,4})", false, "", secs};
  r.pass = exact.ok && quad.ok && secs < 10.0;
  r.detail = "max dev exact=" + fmt(exact.worst) + " quad=" + fmt(quad.worst) +
             " runtime=" + fmt(secs) + "s";
  return r;
}

// ---- 2. Jz eigenstate battery ---------------------------------------------

CriterionResult criterion_jz_battery(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  Checker c;
  bool edge_exact = true;
  for (int tj = 1; tj <= 20; ++tj) {
    const TwiceJ j2(tj);
    for (int tm = -tj; tm <= tj; tm += 2) {
      const PureState st = basis_state(tm, j2);
      for (int q : {1, 2, 3}) {
        const MeasureReport cf = jz_closed_forms(j2, tm, q);
        c.expect(std::abs(moment_exact(st, q) - cf.W.at(q)), 1e-9);
        if (q == 1) c.expect(std::abs(wehrl_entropy(st, opt) - cf.S.at(1.0)), 1e-9);
      }
      if (std::abs(tm) == tj) {
        for (double q : {0.5, 1.0, 2.0, 3.0}) {
          const MeasureReport cf = jz_closed_forms(j2, tm, q);
          const MeasureReport coh = coherent_closed_forms(j2, q);
          edge_exact = edge_exact && cf.W.at(q) == coh.W.at(q) && cf.S.at(q) == coh.S.at(q);
        }
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{2, "Jz eigenstate battery (all m, 2j<=20, q in {1,2,3})", false, "", secs};
  r.pass = c.ok && edge_exact;
  r.detail = "max dev=" + fmt(c.worst) + (edge_exact ? ", m=+-j rows exact" : ", m=+-j rows DIFFER") +
             ", runtime=" + fmt(secs) + "s";
  return r;
}

// ---- 3. integer-moment oracle ----------------------------------------------

CriterionResult criterion_moment_oracle(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  Checker c;
  for (int i = 0; i < 200; ++i) {
    RngStream rng = derive_stream(0x5EED0003ULL, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 16);
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    for (int q : {2, 3, 4}) {
      const double we = moment_exact(psi, q);
      const double wq = moment_quadrature(psi, q, opt);
      c.expect(std::abs(we - wq), 1e-10);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{3, "integer-moment oracle (200 random states, 2j<=16, q in {2,3,4})", c.ok,
                    "max |exact - quadrature| = " + fmt(c.worst), secs};
  return r;
}

// ---- 4. monotonicity in q ----------------------------------------------------

CriterionResult criterion_monotonicity(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  // S gaps between successive q are O(0.1); 1e-8 relative accuracy leaves
  // orders of magnitude of headroom over the 1e-10 violation tolerance
  opt.rtol = 1e-8;
  opt.atol = 1e-12;
  Checker c;
  const double qs[] = {0.5, 1.0, 2.0, 3.0, 4.0};
  for (int i = 0; i < 100; ++i) {
    RngStream rng = derive_stream(0x5EED0004ULL, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 10);
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double q : qs) {
      const double s = renyi_entropy(psi, q, opt);
      c.expect(std::max(0.0, s - prev), 1e-10);
      prev = s;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{4, "S^(q) monotone non-increasing in q (100 random states)", c.ok,
                    "max violation = " + fmt(c.worst), secs};
  return r;
}

// ---- 5. Lemma 1 (phase stripping) -------------------------------------------

CriterionResult criterion_lemma1() {
  const auto t0 = Clock::now();
  Checker c;
  for (int i = 0; i < 1000; ++i) {
    RngStream rng = derive_stream(0x5EED0005ULL, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 10);
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    for (int q : {2, 3}) {
      const auto rep = lemma1_check(psi, q);
      c.require(rep.inequality_holds);
      c.expect(std::max(0.0, rep.w_before - rep.w_after), 1e-12);
    }
  }
  // equality iff phases follow f_k = e^{i alpha k} |f_k|
  bool equality_ok = true;
  for (int i = 0; i < 50; ++i) {
    RngStream rng = derive_stream(0x5EED0055ULL, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 8);
    const PureState base = haar_random_state(TwiceJ(tj), rng);
    const double alpha = 2.0 * kPi * rng.uniform01();
    std::vector<cplx> f(base.coeffs());
    for (int k = 0; k < static_cast<int>(f.size()); ++k)
      f[k] = std::abs(f[k]) * std::polar(1.0, alpha * k);
    const PureState patterned(TwiceJ(tj), std::move(f));
    const auto rep = lemma1_check(patterned, 2);
    equality_ok = equality_ok && rep.equality_case_detected &&
                  std::abs(rep.w_after - rep.w_before) <= 1e-12;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{5, "Lemma 1: W^(q)(F2 psi) >= W^(q)(psi), equality on phase patterns", false,
                    "", secs};
  r.pass = c.ok && equality_ok;
  r.detail = "max decrease = " + fmt(c.worst) +
             (equality_ok ? ", equality cases detected" : ", equality detection FAILED");
  return r;
}

// ---- 6. Theorem 2 driver ------------------------------------------------------

CriterionResult criterion_theorem2_driver() {
  const auto t0 = Clock::now();
  Checker c;
  int converged = 0;
  for (int i = 0; i < 50; ++i) {
    RngStream rng = derive_stream(0x5EED0006ULL, i);
    const int tj = 2 * (1 + static_cast<int>(rng.next_u64() % 4));  // {2,4,6,8}
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    const MapTrace trace = theorem2_driver(psi, 2, 3000);
    const double w_coh = (tj + 1.0) / (2.0 * tj + 1.0);
    c.require(trace.monotone);
    c.expect(std::abs(trace.snapshots.back().w - w_coh), 1e-6);
    if (trace.converged) ++converged;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{6, "Theorem 2 driver: 50 random states reach W^(2)_coh (monotone)", c.ok,
                    "max |W_final - W_coh| = " + fmt(c.worst) + ", converged " +
                        std::to_string(converged) + "/50",
                    secs};
  return r;
}

// ---- 7. Theorem 1 (extremality at coherent states) ---------------------------

CriterionResult criterion_extremality(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  const double qs[] = {0.5, 1.0, 2.0, 3.0};
  bool ok = true;
  double worst_first = 0, worst_q2 = -1e300, worst_qh = 1e300;
  for (int tj : {2, 4}) {
    const auto rep = extremality_report(TwiceJ(tj), qs, 100, 0x5EED0007ULL, opt);
    ok = ok && rep.first_derivatives_vanish && rep.second_derivative_signs_ok;
    worst_first = std::max(worst_first, rep.max_abs_first);
    worst_q2 = std::max(worst_q2, rep.max_second_q2);
    worst_qh = std::min(worst_qh, rep.min_second_qhalf);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{7, "Theorem 1: dW/dt = 0 and d2W/dt2 sign pattern at coherent states", ok,
                    "max |dW/dt| = " + fmt(worst_first) + ", max d2W2 = " + fmt(worst_q2) +
                        ", min d2W(1/2) = " + fmt(worst_qh),
                    secs};
  return r;
}

// ---- 8. random-ensemble means -------------------------------------------------

CriterionResult criterion_random_means(bool parallel) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (int n_dim : {3, 5, 9}) {
    const TwiceJ tj(n_dim - 1);
    const auto s_est = mc_mean_measure(tj, 1.0, 10000, 0x5EED0008ULL, McMeasure::entropy, parallel);
    const double s_exact = expected_wehrl(n_dim);
    const double zs = std::abs(s_est.mean - s_exact) / s_est.std_error;
    const auto w_est = mc_mean_measure(tj, 2.0, 10000, 0x5EED0018ULL, McMeasure::moment, parallel);
    const double w_exact = 2.0 / (n_dim + 1.0);
    const double zw = std::abs(w_est.mean - w_exact) / w_est.std_error;
    ok = ok && zs < 3.0 && zw < 3.0;
    detail << "N=" << n_dim << " zS=" << fmt(zs) << " zW=" << fmt(zw) << "  ";
  }
  const double asym = std::abs(expected_wehrl(1000) - (std::log(1000.0) + kEulerGamma - 1.0));
  ok = ok && asym < 0.01;
  detail << "|<S>_1000 - (ln N + g - 1)| = " << fmt(asym);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ok = ok && secs < 60.0;
  CriterionResult r{8, "random-ensemble means (N in {3,5,9}, 1e4 samples, 3 sigma)", ok,
                    detail.str() + ", runtime=" + fmt(secs) + "s", secs};
  return r;
}

// ---- 9. L2 distances ------------------------------------------------------------

CriterionResult criterion_l2(bool parallel) {
  const auto t0 = Clock::now();
  Checker c;
  // coherent closed form (derivation-consistent value 4j^2/((4j+1)(2j+1)),
  // see 1/R - 1/N with R_coh = (4j+1)/(2j+1))
  for (int tj : {2, 8, 32, 200}) {
    const PureState coh = coherent_state(SpherePoint(0.0, 0.0), TwiceJ(tj));
    const double l22 = std::pow(l2_to_uniform(coh), 2);
    const double expect = static_cast<double>(tj) * tj / ((2.0 * tj + 1.0) * (tj + 1.0));
    c.expect(std::abs(l22 - expect), 1e-13);
    if (tj <= 32) {
      const double l22q = std::pow(l2_to_uniform_quadrature(coh), 2);
      c.expect(std::abs(l22q - expect), 1e-9);
    }
  }
  bool limit_ok = true;
  double prev = 0.0;
  for (int tj : {2, 8, 32, 200, 2000}) {
    const double expect = static_cast<double>(tj) * tj / ((2.0 * tj + 1.0) * (tj + 1.0));
    limit_ok = limit_ok && expect > prev && expect < 0.5;
    prev = expect;
  }
  bool mc_ok = true;
  std::ostringstream detail;
  for (int tj : {2, 8, 32}) {
    const auto est =
        mc_mean_measure(TwiceJ(tj), 2.0, 4000, 0x5EED0009ULL, McMeasure::l2_squared, parallel);
    const double exact = static_cast<double>(tj) / ((tj + 1.0) * (tj + 2.0));
    const double z = std::abs(est.mean - exact) / est.std_error;
    mc_ok = mc_ok && z < 3.0;
    detail << "2j=" << tj << " z=" << fmt(z) << "  ";
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{9, "L2 distances: coherent closed form exact, random average 3 sigma", false,
                    "", secs};
  r.pass = c.ok && limit_ok && mc_ok;
  r.detail = "max closed-form dev = " + fmt(c.worst) + "  " + detail.str();
  return r;
}

// ---- 10. rotation invariance -----------------------------------------------------

CriterionResult criterion_rotation_invariance(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  opt.rtol = 1e-10;  // per-evaluation error ~1e-10 against the 1e-9 budget
  Checker inv, comp;
  for (int i = 0; i < 100; ++i) {
    RngStream rng = derive_stream(0x5EED000AULL, i);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 10);
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    const Rotation rot = Rotation::random(rng);
    const PureState rotated = rotate_state(rot, psi);
    inv.expect(std::abs(moment_exact(psi, 2) - moment_exact(rotated, 2)), 1e-9);
    inv.expect(std::abs(moment_exact(psi, 3) - moment_exact(rotated, 3)), 1e-9);
    inv.expect(std::abs(dual_moment(psi, 2.0) - dual_moment(rotated, 2.0)), 1e-9);
    inv.expect(std::abs(wehrl_entropy(psi, opt) - wehrl_entropy(rotated, opt)), 1e-9);
  }
  for (int i = 0; i < 100; ++i) {
    RngStream rng = derive_stream(0x5EED00AAULL, i);
    const Rotation r1 = Rotation::random(rng);
    const Rotation r2 = Rotation::random(rng);
    const Rotation r21 = Rotation::compose(r2, r1);
    const SpherePoint p(rng.normal(), rng.normal());
    comp.expect(
        chordal_distance(mobius_rotate_point(r2, mobius_rotate_point(r1, p)),
                         mobius_rotate_point(r21, p)),
        1e-10);
    comp.expect(chordal_distance(mobius_rotate_point(r2, mobius_rotate_point(r1, SpherePoint::infinity())),
                                 mobius_rotate_point(r21, SpherePoint::infinity())),
                1e-10);
    const int tj = 1 + static_cast<int>(rng.next_u64() % 6);
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    comp.require(equal_up_to_phase(rotate_state(r2, rotate_state(r1, psi)),
                                   rotate_state(r21, psi), 1e-10));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{10, "rotation invariance of all measures + composition law", false, "", secs};
  r.pass = inv.ok && comp.ok;
  r.detail = "max measure drift = " + fmt(inv.worst) + ", max composition dev = " + fmt(comp.worst);
  return r;
}

// ---- 11. series identities ---------------------------------------------------------

CriterionResult criterion_series(bool parallel) {
  const auto t0 = Clock::now();
  QuadOptions opt;
  opt.parallel = parallel;
  opt.rtol = 1e-8;  // truncation bounds are ~1e-3; direct values need far less
  Checker c;
  for (int i = 0; i < 20; ++i) {
    RngStream rng = derive_stream(0x5EED000BULL, i);
    const int tj = 2 * (1 + static_cast<int>(rng.next_u64() % 3));  // {2,4,6}
    const PureState psi = haar_random_state(TwiceJ(tj), rng);
    const auto z = z_from_w_series(psi, 200);
    const double z_direct = dual_entropy(psi, 1.0, opt);
    c.require(std::abs(z.value - z_direct) <= z.truncation_bound);
    const auto s = s_from_y_series(psi, 200, opt);
    const double s_direct = wehrl_entropy(psi, opt);
    c.require(std::abs(s.value - s_direct) <= s.truncation_bound);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{11, "series identities Z<-{W^(n)} and S<-{Y^(n)} within truncation bounds",
                    c.ok, "20 random states, 2j in {2,4,6}, n_max=200", secs};
  return r;
}

// ---- 12. dynamics consistency --------------------------------------------------------

CriterionResult criterion_dynamics(bool parallel) {
  const auto t0 = Clock::now();
  // Finite differences amplify per-evaluation error by ~1/delta while the
  // 5-point truncation grows as delta^4 (GUE spectra make 5th derivatives
  // ~1e5 at 2j=8); rtol 1e-10 with delta 1e-3 balances both under 1e-6.
  // The rate integrands log(H) dH/dt are less smooth at the Husimi zeros
  // than the entropies themselves, so the analytic side runs at its own
  // (sufficient) 3e-8 tolerance instead of chasing 1e-10 through the cap.
  QuadOptions opt;
  opt.parallel = parallel;
  opt.rtol = 1e-10;
  QuadOptions rate_opt;
  rate_opt.parallel = parallel;
  rate_opt.rtol = 3e-8;
  rate_opt.atol = 1e-10;
  Checker c;
  const double delta = 1e-3;
  for (int i = 0; i < 20; ++i) {
    RngStream rng = derive_stream(0x5EED000CULL, i);
    const int tj = 2 * (1 + static_cast<int>(rng.next_u64() % 4));  // {2,4,6,8}
    const TwiceJ j2(tj);
    const PureState psi = haar_random_state(j2, rng);
    const SpinHamiltonian h = SpinHamiltonian::random_gue(j2, rng);
    auto measure = [&](RateKind kind, double q, const PureState& st) {
      switch (kind) {
        case RateKind::W:
          return moment_exact(st, static_cast<int>(q));
        case RateKind::S:
          return renyi_entropy(st, q, opt);
        case RateKind::Y:
          return dual_moment(st, q, opt);
        case RateKind::Z:
          return dual_entropy(st, q, opt);
      }
      return 0.0;
    };
    const std::pair<RateKind, double> kinds[] = {
        {RateKind::W, 2.0}, {RateKind::S, 1.0}, {RateKind::Y, 2.0}, {RateKind::Z, 1.0}};
    for (const auto& [kind, q] : kinds) {
      const double analytic = entropy_rate(psi, h, q, kind, rate_opt);
      const double mp = measure(kind, q, evolve(psi, h, delta));
      const double mm = measure(kind, q, evolve(psi, h, -delta));
      const double mp2 = measure(kind, q, evolve(psi, h, 2.0 * delta));
      const double mm2 = measure(kind, q, evolve(psi, h, -2.0 * delta));
      const double fd = (8.0 * (mp - mm) - (mp2 - mm2)) / (12.0 * delta);
      c.expect(std::abs(analytic - fd), 1e-6);
    }
  }
  // rotation-generated Hamiltonians leave every S^(q) constant
  Checker flat;
  {
    const TwiceJ j2(4);
    RngStream rng = derive_stream(0x5EED00CCULL, 0);
    const PureState psi = haar_random_state(j2, rng);
    const SpinHamiltonian h = SpinHamiltonian::rotation_generator(j2, 0.3, cplx(0.2, 0.1));
    const double s0 = std::log(moment_exact(psi, 2)) / (1.0 - 2.0);
    for (int i = 1; i <= 20; ++i) {
      const PureState st = evolve(psi, h, 0.25 * i);
      flat.expect(std::abs(std::log(moment_exact(st, 2)) / (1.0 - 2.0) - s0), 1e-9);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  CriterionResult r{12, "dynamics: analytic rates match finite differences; rotations leave S flat",
                    false, "", secs};
  r.pass = c.ok && flat.ok;
  r.detail = "max |analytic - FD| = " + fmt(c.worst) + ", max S drift under rotation = " +
             fmt(flat.worst);
  return r;
}

}  // namespace

namespace {
void print_line(const CriterionResult& r, std::ostream& out) {
  out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << "  [" << r.detail
      << "]  (" << fmt(r.seconds) << "s)\n";
}
}  // namespace

std::vector<CriterionResult> run_acceptance(bool parallel, std::ostream* progress) {
  std::vector<CriterionResult> results;
  auto push = [&](CriterionResult r) {
    if (progress) {
      print_line(r, *progress);
      progress->flush();
    }
    results.push_back(std::move(r));
  };
  push(criterion_closed_form_battery(parallel));
  push(criterion_jz_battery(parallel));
  push(criterion_moment_oracle(parallel));
  push(criterion_monotonicity(parallel));
  push(criterion_lemma1());
  push(criterion_theorem2_driver());
  push(criterion_extremality(parallel));
  push(criterion_random_means(parallel));
  push(criterion_l2(parallel));
  push(criterion_rotation_invariance(parallel));
  push(criterion_series(parallel));
  push(criterion_dynamics(parallel));
  return results;
}

int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  int failures = 0;
  for (const auto& r : results) {
    print_line(r, out);
    if (!r.pass) ++failures;
  }
  out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
      << "\n";
  return failures;
}

}  // namespace spinloc
