// Schroedinger evolution (hbar = 1) and the analytic time derivatives of the
// localization measures.
//
// With |psi_dot> = -i H |psi>, the scaled field A = psi/sqrt(K) of the state
// and of H psi, H^2 psi give pointwise
//   dH/dt   = 2 Im( conj(A_Hpsi) A_psi )
//   d2H/dt2 = -2 Re( conj(A_HHpsi) A_psi ) + 2 |A_Hpsi|^2
// which are quadrature-integrated against the rate formulas, e.g.
//   dW^(q)/dt = q N int H^{q-1} (dH/dt) dmu.
// Evolution goes through the eigendecomposition of H (exactly unitary).
#pragma once

#include <Eigen/Dense>

#include "spinloc/measures.hpp"
#include "spinloc/state.hpp"

namespace spinloc {

struct Generators {
  Eigen::MatrixXcd jz, jplus, jminus;
};

// |m> basis ordered m = j, j-1, ..., -j (index 0 is m = j).
Generators generators(TwiceJ tj);

class SpinHamiltonian {
 public:
  // Validates hermiticity to 1e-12 relative; eigendecomposes eagerly.
  SpinHamiltonian(TwiceJ tj, Eigen::MatrixXcd matrix);

  static SpinHamiltonian jz(TwiceJ tj);
  static SpinHamiltonian jx(TwiceJ tj);
  // a Jz + b J+ + conj(b) J-  : generates a rigid rotation of the sphere
  static SpinHamiltonian rotation_generator(TwiceJ tj, double a, cplx b);
  // GUE: unit-variance complex off-diagonals, N(0,1) diagonal
  static SpinHamiltonian random_gue(TwiceJ tj, RngStream& rng);

  TwiceJ twice_j() const { return tj_; }
  const Eigen::MatrixXcd& matrix() const { return h_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

 private:
  TwiceJ tj_;
  Eigen::MatrixXcd h_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

PureState evolve(const PureState& state, const SpinHamiltonian& h, double t);

double husimi_time_derivative(const PureState& state, const SpinHamiltonian& h,
                              const SpherePoint& point);
double husimi_second_time_derivative(const PureState& state, const SpinHamiltonian& h,
                                     const SpherePoint& point);

enum class RateKind { S, W, Y, Z };

double entropy_rate(const PureState& state, const SpinHamiltonian& h, double q,
                    RateKind kind, const QuadOptions& opt = {});

enum class MomentKind { W, Y };

// Integer q: exact grid.  Non-integer q: evaluated on a fixed dense grid; at
// states with high-multiplicity Husimi zeros and q < 2 the defining integral
// can be unbounded, and the returned value is its grid regularization (the
// sign, which is what Theorem-1-type checks use, is still meaningful).
double moment_second_derivative(const PureState& state, const SpinHamiltonian& h, double q,
                                MomentKind kind, const QuadOptions& opt = {});

struct ExtremalityRow {
  int hamiltonian_index = 0;
  std::map<double, double> first_derivative;  // q -> dW^(q)/dt at the coherent state
  double second_w_q2 = 0;
  double second_w_qhalf = 0;
};

struct ExtremalityReport {
  int twice_j = 0;
  std::uint64_t seed = 0;
  std::vector<ExtremalityRow> rows;
  double max_abs_first = 0;
  double max_second_q2 = 0;     // should be <= tol (locally maximal moment)
  double min_second_qhalf = 0;  // should be >= -tol (locally minimal moment)
  bool first_derivatives_vanish = false;
  bool second_derivative_signs_ok = false;
};

ExtremalityReport extremality_report(TwiceJ tj, std::span<const double> qs, int n_hamiltonians,
                                     std::uint64_t seed, const QuadOptions& opt = {});

struct EntropyTimeSeries {
  std::vector<double> times;
  std::vector<double> qs;
  // row-major [time][q]
  std::vector<double> S, W, dSdt_analytic, dSdt_fd;
};

EntropyTimeSeries evolve_series(const PureState& state, const SpinHamiltonian& h, double t_max,
                                int n_steps, std::span<const double> qs,
                                const QuadOptions& opt = {});

}  // namespace spinloc
