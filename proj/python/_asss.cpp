#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "asss/bench/bench.hpp"
#include "asss/fem/q1.hpp"
#include "asss/la/errors.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace asss;

namespace {

template <class T, class Span>
py::array_t<T> to_array(const Span& s) {
  py::array_t<T> out(static_cast<py::ssize_t>(s.size()));
  auto* dst = out.mutable_data();
  for (std::size_t i = 0; i < s.size(); ++i) dst[i] = static_cast<T>(s[i]);
  return out;
}

py::dict csr_dict(const la::CsrMatrix& a) {
  return py::dict("shape"_a = py::make_tuple(a.nrows(), a.ncols()),
                  "indptr"_a = to_array<std::int64_t>(a.row_offsets()),
                  "indices"_a = to_array<std::int64_t>(a.col_indices()),
                  "data"_a = to_array<double>(a.values()));
}

py::dict cell_dict(const bench::CellResult& c) {
  return py::dict("method"_a = bench::to_string(c.method), "k"_a = c.k, "nu"_a = c.nu,
                  "omega"_a = c.omega, "alpha"_a = c.alpha, "iterations"_a = c.report.iterations,
                  "status"_a = c.status, "converged"_a = c.report.converged,
                  "seconds"_a = c.seconds, "inner_total"_a = c.report.inner_iteration_totals,
                  "history"_a = c.report.relative_residual_history, "error"_a = c.error);
}

}  // namespace

PYBIND11_MODULE(_asss, m) {
  m.doc() = "ASSS iteration and preconditioners for the time-periodic parabolic control problem";

  // Translators run newest first, so the base class goes in first.
  const auto& base = py::register_exception<Error>(m, "AsssError", PyExc_RuntimeError);
  const py::tuple config_bases = py::make_tuple(base, py::handle(PyExc_ValueError));
  py::register_exception<ConfigError>(m, "ConfigError", config_bases);

  m.def(
      "mesh_info",
      [](int k) {
        const auto i = bench::mesh_info(k);
        return py::dict("k"_a = i.k, "h"_a = i.h, "m"_a = i.m, "theta"_a = i.theta,
                        "mu_min"_a = i.mu_min, "mu_max"_a = i.mu_max, "alpha_star"_a = i.alpha_star,
                        "est_mu_min"_a = i.est_mu_min, "est_mu_max"_a = i.est_mu_max,
                        "est_alpha_star"_a = i.est_alpha_star, "alpha_rel_diff"_a = i.alpha_rel_diff);
      },
      "k"_a);

  m.def(
      "mass_matrix", [](int k) { return csr_dict(fem::assemble_mass(fem::GridConfig(k))); }, "k"_a,
      "Q1 mass matrix as a dict with shape, indptr, indices, data.");
  m.def(
      "stiffness_matrix",
      [](int k) { return csr_dict(fem::assemble_stiffness(fem::GridConfig(k))); }, "k"_a);

  m.def("methods", [] {
    std::vector<std::string> out;
    for (auto mth : bench::all_methods()) out.push_back(bench::to_string(mth));
    return out;
  });

  m.def(
      "bench",
      [](const std::vector<std::string>& methods, const std::vector<int>& ks,
         const std::vector<double>& nus, const std::vector<double>& omegas,
         std::optional<double> alpha, double max_seconds, std::size_t max_iterations,
         unsigned threads) {
        bench::BenchSpec spec;
        for (const auto& name : methods) spec.methods.push_back(bench::parse_method(name));
        spec.ks = ks;
        spec.nus = nus;
        spec.omegas = omegas;
        spec.alpha = alpha;
        spec.max_seconds = max_seconds;
        spec.max_iterations = max_iterations;
        spec.threads = threads;
        std::vector<bench::CellResult> cells;
        {
          py::gil_scoped_release release;
          cells = bench::run_bench(spec);
        }
        py::list out;
        for (const auto& c : cells) out.append(cell_dict(c));
        return out;
      },
      "methods"_a, "k"_a = std::vector<int>{5},
      "nu"_a = std::vector<double>{1e-2, 1e-4, 1e-6, 1e-8},
      "omega"_a = std::vector<double>{1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4},
      "alpha"_a = py::none(), "max_seconds"_a = 60.0, "max_iterations"_a = 500,
      "threads"_a = 1u, "One result dict per (k, method, nu, omega) cell.");

  m.def(
      "spectra",
      [](int k, double nu, double omega, std::optional<double> alpha) {
        bench::Spectra s;
        {
          py::gil_scoped_release release;
          s = bench::scatter_spectra(k, nu, omega, alpha);
        }
        return py::make_tuple(to_array<std::complex<double>>(s.b),
                              to_array<std::complex<double>>(s.preconditioned));
      },
      "k"_a, "nu"_a, "omega"_a, "alpha"_a = py::none(),
      "Dense eigenvalues of B and of the ASSS-preconditioned B (k <= 4).");
}
