#pragma once

// Finite-difference ground state of H = -(hbar^2/2M) d^2/dx^2 + V(x) on
// [-x_max, x_max] with Dirichlet ends.

#include <span>
#include <vector>

#include "vpt/grid.hpp"
#include "vpt/params.hpp"

namespace vpt::oracle {

struct EigenResult {
  double energy = 0.0;
  GridFunction psi;  // full line, normalized, positive
  double x_max = 0.0;
  int points = 0;
};

/// Default box half-width: 8 for g <= 50 (natural units), shrinking like
/// (hbar^2 / 2Mg)^(1/6) beyond, always in units of the oscillator length.
double default_x_max(const OscillatorParams& p);

/// Lowest eigenpair on n and 2n - 1 points, Richardson-combined.
/// Throws std::invalid_argument for n < 200 or a box too small to contain the
/// state, NumericError when inverse iteration stalls or psi leaks to the walls.
EigenResult ground_state(const OscillatorParams& p, double x_max, int n = 4001);
EigenResult ground_state(const OscillatorParams& p);

/// Single grid, no extrapolation. Exposed for the convergence tests.
EigenResult ground_state_single(const OscillatorParams& p, double x_max, int n);

/// Smallest eigenvalue of the symmetric tridiagonal matrix (diag, off) by
/// bisection on the Sturm count; off.size() == diag.size() - 1.
double lowest_eigenvalue(std::span<const double> diag, std::span<const double> off, double rel_tol = 1e-15);

/// Number of eigenvalues strictly below lambda.
int sturm_count(std::span<const double> diag, std::span<const double> off, double lambda);

/// Eigenvector for an eigenvalue estimate by shifted inverse iteration.
std::vector<double> inverse_iteration(std::span<const double> diag, std::span<const double> off, double lambda,
                                      int max_sweeps = 50);

/// <T> = (hbar^2/2M) int psi'^2 and <x V'(x)>; for an eigenstate 2<T> = <x V'>.
struct VirialTerms {
  double kinetic = 0.0;
  double x_dv = 0.0;
  double relative_residual() const;
};
VirialTerms virial_terms(const GridFunction& psi, const OscillatorParams& p);

}  // namespace vpt::oracle
