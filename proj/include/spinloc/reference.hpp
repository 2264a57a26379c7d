// Naive serial reference implementations.
//
// Straight-line evaluations kept deliberately independent of the optimized
// OpenMP kernels: plain Horner + kernel division per node, plain running
// sums, and the literal composition-sum form of the integer moments.  Tests
// pin the optimized paths against these; the bench tool times both.
// Plain-double range only (fine for the 2j used in tests/benchmarks).
#pragma once

#include "spinloc/quadrature.hpp"
#include "spinloc/state.hpp"

namespace spinloc::reference {

double husimi(const PureState& state, double u, double phi);

double moment_quadrature(const PureState& state, double q, const QuadratureGrid& grid);

double wehrl_entropy(const PureState& state, const QuadratureGrid& grid);

// Literal composition sum over index tuples (i_1..i_q), cost (2j+1)^q.
double moment_compositions(const PureState& state, int q);

}  // namespace spinloc::reference
