#include "asss/precond/block_diag.hpp"

namespace asss::precond {

la::CsrMatrix block_diag_matrix(const la::CsrMatrix& mass, const la::CsrMatrix& stiffness,
                                const blocksys::ProblemParams& p, BlockDiagVariant variant) {
  const double shift = variant == BlockDiagVariant::scaled_shift ? p.w() : p.omega();
  return la::linear_combination(1.0 + shift, mass, p.sqrt_nu(), stiffness);
}

BlockDiagPreconditioner::BlockDiagPreconditioner(const blocksys::BOperator& op,
                                                 const InnerSettings& inner,
                                                 BlockDiagVariant variant)
    : solve_(block_diag_matrix(op.mass(), op.stiffness(), op.params(), variant), inner.mode,
             inner.krylov, inner.ichol_droptol) {}

void BlockDiagPreconditioner::apply(std::span<const double> r, std::span<double> z) const {
  counter_.add(solve_.solve(r, z));
}

la::LinearOperator BlockDiagPreconditioner::as_operator() const {
  return [this](std::span<const double> r, std::span<double> z) { apply(r, z); };
}

}  // namespace asss::precond
