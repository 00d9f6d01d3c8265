#include "asss/bench/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "asss/blocksys/system.hpp"
#include "asss/la/errors.hpp"
#include "asss/precond/asss_precond.hpp"
#include "asss/precond/bas.hpp"
#include "asss/precond/presb.hpp"
#include "asss/splitting/asss.hpp"

namespace asss::bench {

namespace {

constexpr std::array<Method, 7> kMethods{Method::iasss,   Method::ibas,    Method::p_asss,
                                         Method::p_bas,   Method::p_presb, Method::p_bd,
                                         Method::asss_exact};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string status_of(const la::SolveReport& r) {
  switch (r.reason) {
    case la::StopReason::converged:
      return "yes";
    case la::StopReason::time_limit:
      return "DNC-TIME";
    case la::StopReason::max_iterations:
    case la::StopReason::stagnation:
      break;
  }
  return "DNC-ITER";
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

la::SolveReport solve_cell(Method m, const fem::FemSystem& fem, const blocksys::ProblemParams& p,
                           double alpha, const BenchSpec& spec, double budget) {
  const blocksys::BOperator op(fem, p);
  const la::KrylovConfig outer{spec.outer_tol, spec.max_iterations, spec.restart, budget};
  precond::InnerSettings inner;
  inner.krylov.tol_relative = spec.inner_tol;
  inner.ichol_droptol = spec.ichol_droptol;

  switch (m) {
    case Method::iasss:
    case Method::asss_exact: {
      splitting::AsssConfig cfg;
      cfg.alpha = alpha;
      cfg.outer = outer;
      cfg.inner = inner.krylov;
      cfg.ichol_droptol = spec.ichol_droptol;
      const auto b = blocksys::build_rhs(fem.yhat_d, p);
      if (m == Method::asss_exact) return splitting::asss_solve(op, b, cfg).report;
      cfg.mode = splitting::InnerMode::inexact;
      return splitting::iasss_solve(op, b, cfg).report;
    }
    case Method::ibas: {
      precond::BasConfig cfg;
      cfg.alpha = alpha;
      cfg.outer = outer;
      cfg.inner = inner;
      return precond::ibas_solve(op, blocksys::build_rhs_hat(fem.yhat_d), cfg).report;
    }
    case Method::p_asss: {
      const precond::AsssPreconditioner pre(op, alpha, inner);
      return precond::fgmres_asss(op, blocksys::build_rhs(fem.yhat_d, p), pre, outer).report;
    }
    case Method::p_bas: {
      const precond::BasPreconditioner pre(op, alpha, inner);
      return precond::fgmres_real_form(op, blocksys::build_rhs_hat(fem.yhat_d), pre.as_operator(),
                                       pre.counter(), outer)
          .report;
    }
    case Method::p_presb: {
      precond::PresbSettings s;
      s.s_solve = inner;
      s.middle.tol_relative = spec.inner_tol;
      s.middle.restart = spec.restart;
      const precond::PresbPreconditioner pre(op, s);
      return precond::fgmres_real_form(op, blocksys::build_rhs_hat(fem.yhat_d), pre.as_operator(),
                                       pre.counter(), outer)
          .report;
    }
    case Method::p_bd: {
      const precond::BlockDiagPreconditioner pre(op, inner, spec.bd_variant);
      return precond::fgmres_real_form(op, blocksys::build_rhs_hat(fem.yhat_d), pre.as_operator(),
                                       pre.counter(), outer)
          .report;
    }
  }
  throw ConfigError("unknown method");
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::iasss:
      return "iasss";
    case Method::ibas:
      return "ibas";
    case Method::p_asss:
      return "p-asss";
    case Method::p_bas:
      return "p-bas";
    case Method::p_presb:
      return "p-presb";
    case Method::p_bd:
      return "p-bd";
    case Method::asss_exact:
      return "asss-exact";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : kMethods)
    if (to_string(m) == name) return m;
  throw ConfigError("unknown method '" + name +
                    "' (expected iasss, ibas, p-asss, p-bas, p-presb, p-bd, asss-exact)");
}

std::span<const Method> all_methods() { return kMethods; }

BenchSpec BenchSpec::table_defaults() {
  BenchSpec s;
  s.methods = {Method::iasss, Method::ibas,    Method::p_asss,
               Method::p_bas, Method::p_presb, Method::p_bd};
  return s;
}

void BenchSpec::validate() const {
  for (int k : ks)
    if (k < 2 || k > 12) throw ConfigError("k must lie in [2, 12]");
  for (double nu : nus)
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu values must be positive");
  for (double om : omegas)
    if (!(om >= 0.0) || !std::isfinite(om)) throw ConfigError("omega values must be non-negative");
  if (alpha && !(*alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(outer_tol > 0.0 && outer_tol < 1.0)) throw ConfigError("outer_tol must lie in (0, 1)");
  if (!(inner_tol > 0.0 && inner_tol < 1.0)) throw ConfigError("inner_tol must lie in (0, 1)");
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
  if (restart == 0) throw ConfigError("restart must be positive");
  if (max_seconds < 0.0) throw ConfigError("max_seconds must be non-negative");
  if (!(ichol_droptol >= 0.0)) throw ConfigError("ichol_droptol must be non-negative");
  if (threads == 0) throw ConfigError("threads must be positive");
}

double default_alpha(Method m, const fem::GridConfig& grid, double nu, double omega) {
  const blocksys::ProblemParams p(nu, omega);
  switch (m) {
    case Method::iasss:
    case Method::asss_exact:
    case Method::p_asss:
      return fem::mass_spectrum_bounds(grid).alpha_star;
    case Method::ibas:
      return precond::bas_iteration_alpha(p);
    case Method::p_bas:
      return precond::bas_preconditioner_alpha(p);
    case Method::p_presb:
    case Method::p_bd:
      break;
  }
  return kNaN;
}

CellResult run_cell(Method m, const fem::FemSystem& fem, double nu, double omega,
                    const BenchSpec& spec) {
  CellResult out;
  out.method = m;
  out.k = fem.grid.k();
  out.nu = nu;
  out.omega = omega;
  out.alpha = kNaN;
  const la::Stopwatch clock;
  try {
    const blocksys::ProblemParams p(nu, omega);
    out.alpha = default_alpha(m, fem.grid, nu, omega);
    if (spec.alpha && !std::isnan(out.alpha)) out.alpha = *spec.alpha;
    out.report = solve_cell(m, fem, p, out.alpha, spec, spec.max_seconds);
    out.status = status_of(out.report);
  } catch (const std::exception& e) {
    out.status = "ERROR";
    out.error = e.what();
  }
  out.seconds = clock.seconds();
  if (out.status == "yes" && spec.max_seconds > 0.0 && out.seconds > spec.max_seconds) {
    out.report.converged = false;
    out.status = "DNC-TIME";
  }
  return out;
}

std::vector<CellResult> run_bench(const BenchSpec& spec,
                                  const std::function<void(const CellResult&)>& on_cell) {
  spec.validate();
  struct Cell {
    Method m;
    int k;
    double nu, omega;
  };
  std::vector<Cell> cells;
  for (int k : spec.ks)
    for (Method m : spec.methods)
      for (double nu : spec.nus)
        for (double om : spec.omegas) cells.push_back({m, k, nu, om});
  if (cells.empty()) return {};

  std::map<int, std::unique_ptr<fem::FemSystem>> systems;
  for (int k : spec.ks)
    if (!systems.count(k)) systems[k] = std::make_unique<fem::FemSystem>(fem::FemSystem::build(k));

  std::vector<CellResult> results(cells.size());
  std::vector<char> done(cells.size(), 0);
  std::size_t emitted = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& c = cells[i];
      auto r = run_cell(c.m, *systems.at(c.k), c.nu, c.omega, spec);
      const std::lock_guard<std::mutex> lock(mu);
      results[i] = std::move(r);
      done[i] = 1;
      while (emitted < cells.size() && done[emitted]) {
        if (on_cell) on_cell(results[emitted]);
        ++emitted;
      }
    }
  };
  const unsigned nthreads = std::min<std::size_t>(spec.threads, cells.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

void write_csv_header(std::ostream& out) {
  out << "method,k,nu,omega,alpha,iterations,converged,seconds,inner_total\n";
}

void write_csv_row(std::ostream& out, const CellResult& c) {
  out << to_string(c.method) << ',' << c.k << ',' << fmt("%g", c.nu) << ',' << fmt("%g", c.omega)
      << ',' << (std::isnan(c.alpha) ? std::string() : fmt("%.6e", c.alpha)) << ','
      << c.report.iterations << ',' << c.status << ',' << fmt("%.4f", c.seconds) << ','
      << c.report.inner_iteration_totals << '\n';
}

void write_csv(std::ostream& out, std::span<const CellResult> cells) {
  write_csv_header(out);
  for (const auto& c : cells) write_csv_row(out, c);
}

MeshInfo mesh_info(int k) {
  if (k < 3 || k > 8) throw ConfigError("mesh-info supports k in [3, 8]");
  const fem::GridConfig grid(k);
  const auto b = fem::mass_spectrum_bounds(grid);
  MeshInfo info;
  info.k = k;
  info.h = grid.h();
  info.m = grid.m();
  info.theta = b.theta;
  info.mu_min = b.mu_min;
  info.mu_max = b.mu_max;
  info.alpha_star = b.alpha_star;
  // Every Q1 mass eigenvalue exceeds theta / 4 strictly.
  const auto est = splitting::alpha_star(fem::assemble_mass(grid),
                                         splitting::AlphaMethod::eigen_estimate, {}, b.mu_min);
  info.est_mu_min = est.mu_min;
  info.est_mu_max = est.mu_max;
  info.est_alpha_star = est.value;
  info.est_converged = est.converged;
  info.alpha_rel_diff = std::abs(est.value - b.alpha_star) / b.alpha_star;
  return info;
}

void write_mesh_info(std::ostream& out, const MeshInfo& i) {
  out << "k,h,m,theta,mu_min,mu_max,alpha_star,est_mu_min,est_mu_max,est_alpha_star,"
         "alpha_rel_diff\n"
      << i.k << ',' << fmt("%.10g", i.h) << ',' << i.m << ',' << fmt("%.6e", i.theta) << ','
      << fmt("%.6e", i.mu_min) << ',' << fmt("%.6e", i.mu_max) << ','
      << fmt("%.6e", i.alpha_star) << ',' << fmt("%.6e", i.est_mu_min) << ','
      << fmt("%.6e", i.est_mu_max) << ',' << fmt("%.6e", i.est_alpha_star) << ','
      << fmt("%.3e", i.alpha_rel_diff) << '\n';
}

Spectra scatter_spectra(int k, double nu, double omega, std::optional<double> alpha) {
  if (k > 4) throw ConfigError("eigenvalue scatter is limited to k <= 4 (dense 900 x 900)");
  const auto fem = fem::FemSystem::build(k);
  const blocksys::BOperator op(fem, blocksys::ProblemParams(nu, omega));
  const double a = alpha.value_or(fem::mass_spectrum_bounds(fem.grid).alpha_star);
  if (!(a > 0.0)) throw ConfigError("alpha must be positive");
  const auto s = splitting::dense_splitting(op);
  Spectra out;
  out.b = la::dense_eig_general(s.b);
  out.preconditioned = la::dense_eig_general(la::inverse(precond::dense_asss_P(s, a)) * s.b);
  return out;
}

ScatterSummary summarize(const Spectra& s, double alpha) {
  ScatterSummary sum;
  sum.n = s.b.size();
  sum.alpha = alpha;
  sum.min_real_preconditioned = std::numeric_limits<double>::infinity();
  for (const auto& z : s.preconditioned) {
    sum.max_dist_from_one = std::max(sum.max_dist_from_one, std::abs(z - 1.0));
    sum.min_real_preconditioned = std::min(sum.min_real_preconditioned, z.real());
  }
  double scale = 0.0;
  for (const auto& z : s.b) scale = std::max(scale, std::abs(z));
  const double tol = 1e-8 * std::max(scale, 1.0);
  sum.b_conjugate_closed = std::all_of(s.b.begin(), s.b.end(), [&](const auto& z) {
    return std::any_of(s.b.begin(), s.b.end(),
                       [&](const auto& w) { return std::abs(w - std::conj(z)) <= tol; });
  });
  return sum;
}

ScatterSummary emit_eig_scatter(int k, double nu, double omega, std::optional<double> alpha,
                                const std::string& out_prefix) {
  const double a = alpha.value_or(fem::mass_spectrum_bounds(fem::GridConfig(k)).alpha_star);
  const auto spectra = scatter_spectra(k, nu, omega, a);
  auto dump = [](const std::string& path, const std::vector<std::complex<double>>& v) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << "re,im\n";
    for (const auto& z : v) f << fmt("%.17g", z.real()) << ',' << fmt("%.17g", z.imag()) << '\n';
    if (!f) throw Error("write failed: " + path);
  };
  dump(out_prefix + "_B.csv", spectra.b);
  dump(out_prefix + "_PB.csv", spectra.preconditioned);
  return summarize(spectra, a);
}

}  // namespace asss::bench
