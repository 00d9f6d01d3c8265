#include "asss/la/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asss::la {

LinearOperator as_operator(const CsrMatrix& a) {
  return [&a](std::span<const double> x, std::span<double> y) { a.multiply(x, y); };
}

namespace {

bool out_of_time(const KrylovConfig& cfg, const Stopwatch& clock) {
  return cfg.max_seconds > 0.0 && clock.seconds() > cfg.max_seconds;
}

void finish(SolveReport& report, StopReason reason, const Stopwatch& clock) {
  report.reason = reason;
  report.converged = reason == StopReason::converged;
  report.wall_time = clock.seconds();
}

}  // namespace

SolveResult cg(const LinearOperator& a, std::span<const double> b, const LinearOperator& precond,
               const KrylovConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  const std::size_t n = b.size();
  SolveResult out{Vector(n, 0.0), {}};
  auto& report = out.report;
  Vector r(b.begin(), b.end());
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    report.relative_residual_history.push_back(0.0);
    finish(report, StopReason::converged, clock);
    return out;
  }
  double rnorm = bnorm;
  report.relative_residual_history.push_back(1.0);

  Vector z(n), p(n), q(n);
  if (precond) precond(r, z);
  else copy(r, z);
  copy(z, p);
  double rz = dot(r, z);

  StopReason reason = StopReason::max_iterations;
  while (true) {
    if (rnorm <= cfg.tol_relative * bnorm) {
      reason = StopReason::converged;
      break;
    }
    if (report.iterations >= cfg.max_iterations) break;
    if (out_of_time(cfg, clock)) {
      reason = StopReason::time_limit;
      break;
    }
    a(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) throw IndefiniteError("cg: p^T A p <= 0, operator is not positive definite");
    const double step = rz / pq;
    axpy(step, p, out.x);
    axpy(-step, q, r);
    ++report.iterations;
    rnorm = norm2(r);
    report.relative_residual_history.push_back(rnorm / bnorm);
    if (precond) precond(r, z);
    else copy(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  finish(report, reason, clock);
  return out;
}

BlockSolveResult global_cg(const BlockOperator& a, const MultiVector& b,
                           const BlockOperator& precond, const KrylovConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  const std::size_t n = b.nrows(), s = b.ncols();
  BlockSolveResult out{MultiVector(n, s), {}};
  auto& report = out.report;
  MultiVector r = b;  // R_0 = B - A X_0 with X_0 = 0
  const double bnorm = frobenius_norm(b);
  if (bnorm == 0.0) {
    report.relative_residual_history.push_back(0.0);
    finish(report, StopReason::converged, clock);
    return out;
  }
  double rnorm = bnorm;
  report.relative_residual_history.push_back(1.0);

  MultiVector z(n, s), p(n, s), ap(n, s);
  if (precond) precond(r, z);
  else z = r;
  p = z;
  double rz = trace_dot(r, z);

  StopReason reason = StopReason::max_iterations;
  while (true) {
    if (rnorm <= cfg.tol_relative * bnorm) {
      reason = StopReason::converged;
      break;
    }
    if (report.iterations >= cfg.max_iterations) break;
    if (out_of_time(cfg, clock)) {
      reason = StopReason::time_limit;
      break;
    }
    a(p, ap);
    const double pap = trace_dot(ap, p);
    if (!(pap > 0.0)) {
      throw IndefiniteError("global_cg: <AP, P> <= 0, operator is not positive definite");
    }
    const double step = rz / pap;
    axpy(step, p.data(), out.x.data());
    axpy(-step, ap.data(), r.data());
    ++report.iterations;
    rnorm = frobenius_norm(r);
    report.relative_residual_history.push_back(rnorm / bnorm);
    if (precond) precond(r, z);
    else z = r;
    const double rz_new = trace_dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    auto pd = p.data();
    const auto zd = z.data();
    for (std::size_t i = 0; i < pd.size(); ++i) pd[i] = zd[i] + beta * pd[i];
  }
  finish(report, reason, clock);
  return out;
}

namespace {

constexpr double kReorthogonalizeAbove = 1e-8;

SolveResult gmres_impl(const LinearOperator& a, std::span<const double> b,
                       const LinearOperator& precond, const KrylovConfig& cfg, bool flexible) {
  cfg.validate();
  Stopwatch clock;
  const std::size_t n = b.size();
  const std::size_t restart = cfg.restart;
  SolveResult out{Vector(n, 0.0), {}};
  auto& report = out.report;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    report.relative_residual_history.push_back(0.0);
    finish(report, StopReason::converged, clock);
    return out;
  }
  report.relative_residual_history.push_back(1.0);

  std::vector<Vector> v(restart + 1, Vector(n));
  std::vector<Vector> zs(flexible ? restart : 0, Vector(n));
  Vector z(n), w(n), r(n);
  // Hessenberg matrix column-major, (restart + 1) x restart.
  std::vector<double> h((restart + 1) * restart, 0.0);
  auto H = [&](std::size_t i, std::size_t j) -> double& { return h[j * (restart + 1) + i]; };
  std::vector<double> cs(restart), sn(restart), g(restart + 1), y(restart);

  double previous_cycle_residual = std::numeric_limits<double>::infinity();
  StopReason reason = StopReason::max_iterations;
  while (true) {
    a(out.x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double beta = norm2(r);
    if (beta <= cfg.tol_relative * bnorm) {
      reason = StopReason::converged;
      break;
    }
    if (report.iterations >= cfg.max_iterations) break;
    if (out_of_time(cfg, clock)) {
      reason = StopReason::time_limit;
      break;
    }
    if (beta >= previous_cycle_residual) {
      reason = StopReason::stagnation;
      break;
    }
    previous_cycle_residual = beta;

    for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::size_t used = 0;
    for (std::size_t j = 0; j < restart; ++j) {
      Vector& zj = flexible ? zs[j] : z;
      if (precond) precond(v[j], zj);
      else copy(v[j], zj);
      a(zj, w);
      const double wnorm_in = norm2(w);

      for (std::size_t i = 0; i <= j; ++i) {
        const double hij = dot(w, v[i]);
        H(i, j) = hij;
        axpy(-hij, v[i], w);
      }
      double wnorm = norm2(w);
      if (wnorm > 0.0) {
        double loss = 0.0;
        for (std::size_t i = 0; i <= j; ++i) loss = std::max(loss, std::abs(dot(w, v[i])));
        if (loss > kReorthogonalizeAbove * wnorm) {
          for (std::size_t i = 0; i <= j; ++i) {
            const double hij = dot(w, v[i]);
            H(i, j) += hij;
            axpy(-hij, v[i], w);
          }
          wnorm = norm2(w);
        }
      }
      H(j + 1, j) = wnorm;

      for (std::size_t i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = denom == 0.0 ? 1.0 : H(j, j) / denom;
      sn[j] = denom == 0.0 ? 0.0 : H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      ++report.iterations;
      used = j + 1;
      const double estimate = std::abs(g[j + 1]);
      report.relative_residual_history.push_back(estimate / bnorm);

      const bool happy_breakdown =
          wnorm <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(wnorm_in, 1e-300);
      if (estimate <= cfg.tol_relative * bnorm || happy_breakdown ||
          report.iterations >= cfg.max_iterations || out_of_time(cfg, clock)) {
        break;
      }
      for (std::size_t i = 0; i < n; ++i) v[j + 1][i] = w[i] / wnorm;
    }

    for (std::size_t i = used; i-- > 0;) {
      double s = g[i];
      for (std::size_t k = i + 1; k < used; ++k) s -= H(i, k) * y[k];
      y[i] = H(i, i) == 0.0 ? 0.0 : s / H(i, i);
    }
    if (flexible) {
      for (std::size_t i = 0; i < used; ++i) axpy(y[i], zs[i], out.x);
    } else {
      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t i = 0; i < used; ++i) axpy(y[i], v[i], w);
      if (precond) precond(w, z);
      else copy(w, z);
      axpy(1.0, z, out.x);
    }
  }
  finish(report, reason, clock);
  return out;
}

}  // namespace

SolveResult gmres(const LinearOperator& a, std::span<const double> b,
                  const LinearOperator& precond, const KrylovConfig& cfg) {
  return gmres_impl(a, b, precond, cfg, false);
}

SolveResult fgmres(const LinearOperator& a, std::span<const double> b,
                   const LinearOperator& precond, const KrylovConfig& cfg) {
  return gmres_impl(a, b, precond, cfg, true);
}

}  // namespace asss::la
