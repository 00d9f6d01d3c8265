#include "asss/la/solve_report.hpp"

#include <iomanip>
#include <ostream>

#include "asss/la/errors.hpp"

namespace asss::la {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::converged: return "converged";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::time_limit: return "time_limit";
    case StopReason::stagnation: return "stagnation";
  }
  return "unknown";
}

void write_history_csv(std::ostream& out, const SolveReport& report) {
  out << "iter,relres\n";
  const auto old = out.precision();
  out << std::setprecision(17);
  for (std::size_t k = 0; k < report.relative_residual_history.size(); ++k) {
    out << k << ',' << report.relative_residual_history[k] << '\n';
  }
  out.precision(old);
}

void KrylovConfig::validate() const {
  if (!(tol_relative > 0.0 && tol_relative < 1.0)) {
    throw ConfigError("KrylovConfig: tol_relative must lie in (0, 1)");
  }
  if (max_iterations < 1) throw ConfigError("KrylovConfig: max_iterations must be >= 1");
  if (restart < 1) throw ConfigError("KrylovConfig: restart must be >= 1");
  if (max_seconds < 0.0) throw ConfigError("KrylovConfig: max_seconds must be >= 0");
}

}  // namespace asss::la
