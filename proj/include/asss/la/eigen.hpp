#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "asss/la/csr.hpp"
#include "asss/la/dense.hpp"
#include "asss/la/multivector.hpp"

namespace asss::la {

struct EigenIterationConfig {
  /// Converged when successive Rayleigh quotients differ by at most tol relatively.
  double tol_relative = 1e-8;
  std::size_t max_iterations = 100000;
  unsigned seed = 12345;
};

struct EigenEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of an SPD operator of size n.
EigenEstimate power_iteration(const LinearOperator& a, std::size_t n,
                              const EigenIterationConfig& cfg = {});

/// Smallest eigenvalue of an SPD matrix via Cholesky-based inverse iteration.
/// A shift strictly below the spectrum iterates with (A - shift I)^{-1},
/// which converges much faster when the shift is close.
EigenEstimate inverse_power_iteration(const CsrMatrix& a, const EigenIterationConfig& cfg = {},
                                      double shift = 0.0);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> dense_eig_symmetric(const DenseMatrix& a, double off_tol = 1e-12);

/// All eigenvalues of a general real matrix: Householder reduction to upper
/// Hessenberg form, then Francis double-shift QR. Throws ConvergenceError
/// after 30*n QR sweeps without deflation.
std::vector<std::complex<double>> dense_eig_general(const DenseMatrix& a);

/// Upper Hessenberg form similar to `a` (Householder reflections).
DenseMatrix hessenberg(DenseMatrix a);

double spectral_radius(std::span<const std::complex<double>> spectrum);

/// Writes `re,im` rows.
void write_spectrum_csv(std::ostream& out, std::span<const std::complex<double>> spectrum);

}  // namespace asss::la
