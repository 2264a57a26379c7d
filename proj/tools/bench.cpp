// Timing comparison of the OpenMP quadrature/sampling kernels against the
// naive serial reference, with agreement checks.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "spinloc/measures.hpp"
#include "spinloc/random_ensemble.hpp"
#include "spinloc/reference.hpp"

using namespace spinloc;

namespace {

template <typename F>
double time_ms(int reps, F&& f) {
  f();  // warmup (grid caches, page faults)
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() /
         reps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinloc kernel benchmarks: reference serial vs OpenMP"};
  int reps = 3;
  int tj = 64;
  int samples = 20000;
  app.add_option("--reps", reps, "repetitions per timing");
  app.add_option("--twice-j", tj, "spin size for the quadrature benchmarks");
  app.add_option("--samples", samples, "Monte-Carlo batch size");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads available: %d\n\n", omp_get_max_threads());

  RngStream rng = derive_stream(42, 0);
  const PureState psi = haar_random_state(TwiceJ(tj), rng);
  const auto grid = QuadratureGrid::exact_for(TwiceJ(tj), 2);

  {
    double v_ref = 0, v_par = 0;
    const double ms_ref = time_ms(reps, [&] { v_ref = reference::moment_quadrature(psi, 2, grid); });
    QuadOptions serial_opt;
    serial_opt.parallel = false;
    double v_ser = 0;
    const double ms_ser =
        time_ms(reps, [&] { v_ser = moment_quadrature(psi, 2.0, grid, serial_opt); });
    const double ms_par = time_ms(reps, [&] { v_par = moment_quadrature(psi, 2.0, grid); });
    std::printf("W^(2) quadrature, 2j=%d, grid %dx%d\n", tj, grid.n_u(), grid.n_phi());
    std::printf("  reference serial   %9.3f ms\n", ms_ref);
    std::printf("  kernel 1 thread    %9.3f ms\n", ms_ser);
    std::printf("  kernel OpenMP      %9.3f ms   speedup vs serial kernel: %.2fx\n", ms_par,
                ms_ser / ms_par);
    std::printf("  |kernel - reference| = %.3g, |omp - serial| = %.3g\n\n",
                std::abs(v_par - v_ref), std::abs(v_par - v_ser));
  }

  {
    const auto egrid = QuadratureGrid::gauss_legendre(2 * tj, 4 * tj);
    double v_ref = 0, v_par = 0;
    const double ms_ref = time_ms(reps, [&] { v_ref = reference::wehrl_entropy(psi, egrid); });
    const double ms_par = time_ms(reps, [&] {
      const std::vector<std::vector<cplx>> fields{psi.scaled_coeffs()};
      v_par = -psi.dim() * integrate_fields<double>(
                               psi.twice_j(), fields, egrid,
                               [](std::span<const cplx> a) {
                                 const double h = std::norm(a[0]);
                                 return h > 0.0 ? h * std::log(h) : 0.0;
                               },
                               true);
    });
    std::printf("Wehrl integrand, 2j=%d, grid %dx%d\n", tj, egrid.n_u(), egrid.n_phi());
    std::printf("  reference serial   %9.3f ms\n", ms_ref);
    std::printf("  kernel OpenMP      %9.3f ms   speedup: %.2fx\n", ms_par, ms_ref / ms_par);
    std::printf("  |kernel - reference| = %.3g\n\n", std::abs(v_par - v_ref));
  }

  {
    const TwiceJ tj8(8);
    double m_ser = 0, m_par = 0;
    const double ms_ser = time_ms(1, [&] {
      m_ser = mc_mean_measure(tj8, 2.0, samples, 7, McMeasure::moment, false).mean;
    });
    const double ms_par = time_ms(1, [&] {
      m_par = mc_mean_measure(tj8, 2.0, samples, 7, McMeasure::moment, true).mean;
    });
    std::printf("Monte-Carlo <W^(2)>, 2j=8, %d samples\n", samples);
    std::printf("  sampler serial     %9.3f ms\n", ms_ser);
    std::printf("  sampler OpenMP     %9.3f ms   speedup: %.2fx\n", ms_par, ms_ser / ms_par);
    std::printf("  |omp - serial| = %.3g (bit-identical reduction expected: %s)\n",
                std::abs(m_par - m_ser), m_par == m_ser ? "yes" : "NO");
  }
  return 0;
}
