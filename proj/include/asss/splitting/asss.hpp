#pragma once

#include <cstddef>
#include <span>

#include "asss/blocksys/system.hpp"
#include "asss/la/dense.hpp"
#include "asss/la/eigen.hpp"
#include "asss/la/krylov.hpp"
#include "asss/splitting/shifted_solver.hpp"

namespace asss::splitting {

struct AsssConfig {
  double alpha = 0.0;
  /// Outer stopping on the relative residual of the 4x4 real system.
  la::KrylovConfig outer{1e-6, 500, 30, 0.0};
  /// Inner solves: relative Frobenius residual of the four-column block.
  la::KrylovConfig inner{1e-4, 1000, 30, 0.0};
  InnerMode mode = InnerMode::exact;
  double ichol_droptol = 1e-3;

  void validate() const;
};

enum class AlphaMethod {
  /// 3/4 of the constant diagonal of a Q1 mass matrix.
  q1_closed_form,
  /// sqrt(mu_min mu_max) from power and inverse power iteration.
  eigen_estimate,
};

struct AlphaStar {
  double value = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  bool converged = true;
};

/// `lower_bound`, if known to lie strictly below the mass spectrum, shifts
/// the inverse iteration of the eigenvalue estimate.
AlphaStar alpha_star(const la::CsrMatrix& mass, AlphaMethod method,
                     const la::EigenIterationConfig& cfg = {}, double lower_bound = 0.0);

/// max over mu in {mu_min, mu_max} of sqrt(alpha^2 + mu^2) / (alpha + mu).
double zeta(double alpha, double mu_min, double mu_max);

/// zeta over the mass spectrum times the same factor over the scaled stiffness
/// spectrum [lambda_min, lambda_max] (already multiplied by eta). lambda_min
/// may be 0, in which case the second factor is 1.
double gamma_bound(double alpha, double mu_min, double mu_max, double lambda_min,
                   double lambda_max);

/// Exact two half-step iteration from x = 0 with Cholesky inner solves.
la::SolveResult asss_solve(const blocksys::BOperator& op, std::span<const double> b,
                           const AsssConfig& cfg);

/// One exact two half-step sweep starting from x.
la::Vector asss_sweep(const blocksys::BOperator& op, std::span<const double> x,
                      std::span<const double> b, double alpha);

/// Residual-correction form: each half-step solves a shifted system for a
/// correction with four right-hand sides. The inner solver follows cfg.mode.
la::SolveResult iasss_solve(const blocksys::BOperator& op, std::span<const double> b,
                            const AsssConfig& cfg);

/// Dense blocks of the splitting for small problems.
struct DenseSplitting {
  la::DenseMatrix mbar;  // blockdiag(M, M, M, M)
  la::DenseMatrix kbar;  // blockdiag(eta K, ...)
  la::DenseMatrix g;
  la::DenseMatrix b;  // mbar + g kbar
};

/// Throws ConfigError when 4m exceeds max_dim.
DenseSplitting dense_splitting(const blocksys::BOperator& op, std::size_t max_dim = 900);

/// (aI + K)^{-1} (aI + G M) (aI + M)^{-1} (aI - G K).
la::DenseMatrix iteration_matrix_dense(const blocksys::BOperator& op, double alpha);
la::DenseMatrix iteration_matrix_dense(const DenseSplitting& s, double alpha);

/// (aI + G M)(aI + M)^{-1} (aI - G K)(aI + K)^{-1}, similar to the iteration matrix.
la::DenseMatrix similar_iteration_matrix_dense(const DenseSplitting& s, double alpha);

/// exp of the least-squares slope of log(history) over the last `window` entries.
double fitted_contraction(std::span<const double> history, std::size_t window = 10);

}  // namespace asss::splitting
