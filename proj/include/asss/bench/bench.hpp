#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asss/fem/q1.hpp"
#include "asss/la/solve_report.hpp"
#include "asss/precond/block_diag.hpp"

namespace asss::bench {

enum class Method { iasss, ibas, p_asss, p_bas, p_presb, p_bd, asss_exact };

std::string to_string(Method m);
/// Accepts the CLI spellings ("iasss", "p-bas", ...). Throws ConfigError.
Method parse_method(const std::string& name);
std::span<const Method> all_methods();

struct BenchSpec {
  std::vector<Method> methods;
  std::vector<int> ks{5};
  std::vector<double> nus{1e-2, 1e-4, 1e-6, 1e-8};
  std::vector<double> omegas{1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4};
  /// Replaces the method's default parameter for every method that has one.
  std::optional<double> alpha;
  double outer_tol = 1e-6;
  double inner_tol = 1e-4;
  std::size_t max_iterations = 500;
  std::size_t restart = 30;
  /// Per-cell wall-clock cap; 0 disables it.
  double max_seconds = 60.0;
  double ichol_droptol = 1e-3;
  precond::BlockDiagVariant bd_variant = precond::BlockDiagVariant::scaled_shift;
  /// Cells run concurrently on this many threads; rows stay in cell order.
  unsigned threads = 1;
  std::string out;

  /// The six compared methods over the h = 1/32 grid of nu and omega.
  static BenchSpec table_defaults();
  void validate() const;
};

/// Parses a JSON object whose keys mirror BenchSpec fields; absent keys keep
/// the defaults of `base`. Throws ConfigError.
BenchSpec spec_from_json(const std::string& text, BenchSpec base = {});

struct CellResult {
  Method method = Method::iasss;
  int k = 0;
  double nu = 0.0;
  double omega = 0.0;
  /// NaN for methods without a parameter.
  double alpha = 0.0;
  la::SolveReport report;
  /// "yes", "DNC-ITER", "DNC-TIME" or "ERROR".
  std::string status;
  std::string error;
  /// Setup plus solve.
  double seconds = 0.0;
};

/// Default parameter of a method at (nu, omega) on the given grid, NaN if
/// the method has none.
double default_alpha(Method m, const fem::GridConfig& grid, double nu, double omega);

/// Runs one cell; errors are captured in the result, never thrown.
CellResult run_cell(Method m, const fem::FemSystem& fem, double nu, double omega,
                    const BenchSpec& spec);

/// Cells in order k, method, nu, omega.
std::vector<CellResult> run_bench(const BenchSpec& spec,
                                  const std::function<void(const CellResult&)>& on_cell = {});

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const CellResult& cell);
void write_csv(std::ostream& out, std::span<const CellResult> cells);

struct MeshInfo {
  int k = 0;
  double h = 0.0;
  std::size_t m = 0;
  double theta = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  double alpha_star = 0.0;
  /// Power / inverse power estimates of the mass extremes and their root.
  double est_mu_min = 0.0;
  double est_mu_max = 0.0;
  double est_alpha_star = 0.0;
  bool est_converged = false;
  double alpha_rel_diff = 0.0;
};

/// k in [3, 8]. Throws ConfigError.
MeshInfo mesh_info(int k);
void write_mesh_info(std::ostream& out, const MeshInfo& info);

struct ScatterSummary {
  std::size_t n = 0;
  double alpha = 0.0;
  double max_dist_from_one = 0.0;
  double min_real_preconditioned = 0.0;
  bool b_conjugate_closed = false;
};

struct Spectra {
  std::vector<std::complex<double>> b;
  std::vector<std::complex<double>> preconditioned;
};

/// Dense spectra of B and P^{-1} B for k <= 4; alpha defaults to the
/// closed-form optimum. Throws ConfigError on k > 4.
Spectra scatter_spectra(int k, double nu, double omega, std::optional<double> alpha = {});
ScatterSummary summarize(const Spectra& s, double alpha);
/// Writes <prefix>_B.csv and <prefix>_PB.csv with columns re,im.
ScatterSummary emit_eig_scatter(int k, double nu, double omega, std::optional<double> alpha,
                                const std::string& out_prefix);

}  // namespace asss::bench
