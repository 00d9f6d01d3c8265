#include "asss/precond/asss_precond.hpp"

namespace asss::precond {

AsssPreconditioner::AsssPreconditioner(const blocksys::BOperator& op, double alpha,
                                       const InnerSettings& inner)
    : alpha_(alpha),
      g_(op.g()),
      msolve_(la::shifted(op.mass(), alpha), inner.mode, inner.krylov, inner.ichol_droptol),
      ksolve_(la::shifted(op.scaled_stiffness(), alpha), inner.mode, inner.krylov,
              inner.ichol_droptol) {
  if (!(alpha > 0.0)) throw ConfigError("AsssPreconditioner: alpha must be positive");
}

void AsssPreconditioner::apply(std::span<const double> r, std::span<double> s) const {
  const std::size_t n = r.size();
  la::Vector v(n), w(n);
  g_.apply(r, v);
  for (std::size_t i = 0; i < n; ++i) v[i] = -alpha_ * (r[i] + v[i]);
  counter_.add(msolve_.solve(v, w));
  g_.apply(w, v);
  counter_.add(ksolve_.solve(v, s));
}

la::LinearOperator AsssPreconditioner::as_operator() const {
  return [this](std::span<const double> r, std::span<double> s) { apply(r, s); };
}

la::SolveResult fgmres_asss(const blocksys::BOperator& op, std::span<const double> b,
                            const AsssPreconditioner& p, const la::KrylovConfig& cfg) {
  const la::LinearOperator a = [&op](std::span<const double> x, std::span<double> y) {
    op.apply(x, y);
  };
  return fgmres_counted(a, b, p.as_operator(), p.counter(), cfg);
}

la::DenseMatrix dense_asss_P(const splitting::DenseSplitting& s, double alpha) {
  const auto eye = la::DenseMatrix::identity(s.mbar.rows());
  return (1.0 / alpha) * la::inverse(eye + s.g) * (alpha * eye + s.mbar) * s.g *
         (alpha * eye + s.kbar);
}

la::DenseMatrix dense_asss_Q(const splitting::DenseSplitting& s, double alpha) {
  const auto eye = la::DenseMatrix::identity(s.mbar.rows());
  return (1.0 / alpha) * la::inverse(eye + s.g) * (alpha * s.g - s.mbar) *
         (alpha * eye - s.g * s.kbar);
}

}  // namespace asss::precond
