#include "asss/precond/common.hpp"

namespace asss::precond {

la::SolveResult fgmres_counted(const la::LinearOperator& a, std::span<const double> b,
                               const la::LinearOperator& precond, const InnerCounter& counter,
                               const la::KrylovConfig& cfg) {
  const std::size_t before = counter.value();
  auto res = la::fgmres(a, b, precond, cfg);
  res.report.inner_iteration_totals = counter.value() - before;
  return res;
}

}  // namespace asss::precond
