#pragma once

#include <span>
#include <utility>

#include "asss/la/csr.hpp"
#include "asss/la/multivector.hpp"
#include "asss/la/solve_report.hpp"

namespace asss::la {

LinearOperator as_operator(const CsrMatrix& a);

struct SolveResult {
  Vector x;
  SolveReport report;
};

struct BlockSolveResult {
  MultiVector x;
  SolveReport report;
};

/// Preconditioned conjugate gradients from a zero initial guess. Stops when
/// ||b - A x|| <= tol * ||b||. Throws IndefiniteError if p^T A p <= 0.
SolveResult cg(const LinearOperator& a, std::span<const double> b,
               const LinearOperator& precond, const KrylovConfig& cfg);

/// Global CG for A X = B with the trace inner product, zero initial guess.
/// Stops when ||R||_F <= tol * ||B||_F.
BlockSolveResult global_cg(const BlockOperator& a, const MultiVector& b,
                           const BlockOperator& precond, const KrylovConfig& cfg);

/// Restarted GMRES with right preconditioning (precond may be empty).
SolveResult gmres(const LinearOperator& a, std::span<const double> b,
                  const LinearOperator& precond, const KrylovConfig& cfg);

/// Restarted flexible GMRES; the preconditioner may change between calls.
SolveResult fgmres(const LinearOperator& a, std::span<const double> b,
                   const LinearOperator& precond, const KrylovConfig& cfg);

}  // namespace asss::la
