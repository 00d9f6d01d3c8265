#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace asss::la {

enum class StopReason { converged, max_iterations, time_limit, stagnation };

std::string to_string(StopReason reason);

/// Outcome of one solver run.
struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  StopReason reason = StopReason::max_iterations;
  /// Monitored relative residual; entry 0 is the initial residual.
  std::vector<double> relative_residual_history;
  /// Sum of inner iterations spent by preconditioners or inner solves.
  std::size_t inner_iteration_totals = 0;
  double wall_time = 0.0;
};

/// Writes `iter,relres` rows.
void write_history_csv(std::ostream& out, const SolveReport& report);

/// Stopping rule shared by the Krylov solvers.
struct KrylovConfig {
  double tol_relative = 1e-6;
  std::size_t max_iterations = 500;
  std::size_t restart = 30;
  /// Wall-clock budget in seconds; 0 disables the limit.
  double max_seconds = 0.0;

  void validate() const;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace asss::la
