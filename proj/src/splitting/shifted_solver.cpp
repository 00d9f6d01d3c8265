#include "asss/splitting/shifted_solver.hpp"

#include <algorithm>

#include "asss/la/krylov.hpp"
#include "asss/la/multivector.hpp"

namespace asss::splitting {

ShiftedBlockSolver::ShiftedBlockSolver(la::CsrMatrix a, InnerMode mode,
                                       const la::KrylovConfig& inner, double ichol_droptol)
    : a_(std::move(a)), mode_(mode), inner_(inner) {
  inner_.validate();
  if (mode_ == InnerMode::exact) {
    chol_ = la::CholeskyFactor::factor(a_);
  } else {
    ic_ = la::IncompleteCholeskyFactor::factor_with_fallback(a_, ichol_droptol);
  }
}

std::size_t ShiftedBlockSolver::solve(std::span<const double> rhs, std::span<double> x) const {
  la::check_same_size(rhs.size(), 4 * m(), "ShiftedBlockSolver::solve");
  la::check_same_size(x.size(), 4 * m(), "ShiftedBlockSolver::solve");
  if (chol_) {
    std::copy(rhs.begin(), rhs.end(), x.begin());
    for (std::size_t j = 0; j < 4; ++j) chol_->solve_in_place(x.subspan(j * m(), m()));
    return 0;
  }
  const auto b = la::MultiVector::from_stacked(rhs, 4);
  const la::BlockOperator apply = [this](const la::MultiVector& in, la::MultiVector& out) {
    for (std::size_t j = 0; j < in.ncols(); ++j) a_.multiply(in.col(j), out.col(j));
  };
  const la::BlockOperator precond = [this](const la::MultiVector& in, la::MultiVector& out) {
    for (std::size_t j = 0; j < in.ncols(); ++j) {
      const auto src = in.col(j);
      auto dst = out.col(j);
      std::copy(src.begin(), src.end(), dst.begin());
      ic_->solve_in_place(dst);
    }
  };
  const auto res = la::global_cg(apply, b, precond, inner_);
  const auto data = res.x.data();
  std::copy(data.begin(), data.end(), x.begin());
  return res.report.iterations;
}

}  // namespace asss::splitting
