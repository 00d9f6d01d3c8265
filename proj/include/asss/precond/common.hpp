#pragma once

#include <atomic>
#include <cstddef>
#include <span>

#include "asss/la/krylov.hpp"
#include "asss/splitting/shifted_solver.hpp"

namespace asss::precond {

using splitting::InnerMode;

/// Settings shared by the inner solves of every preconditioner.
struct InnerSettings {
  InnerMode mode = InnerMode::inexact;
  la::KrylovConfig krylov{1e-4, 1000, 30, 0.0};
  double ichol_droptol = 1e-3;
};

/// Running total of inner iterations; safe to bump from const apply().
class InnerCounter {
 public:
  void add(std::size_t n) const { count_.fetch_add(n, std::memory_order_relaxed); }
  std::size_t value() const { return count_.load(std::memory_order_relaxed); }
  void reset() const { count_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::size_t> count_{0};
};

/// Right-preconditioned FGMRES with the preconditioner's inner iterations
/// recorded in the report.
la::SolveResult fgmres_counted(const la::LinearOperator& a, std::span<const double> b,
                               const la::LinearOperator& precond, const InnerCounter& counter,
                               const la::KrylovConfig& cfg);

}  // namespace asss::precond
