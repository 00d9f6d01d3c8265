#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asss/bench/bench.hpp"
#include "asss/fem/q1.hpp"
#include "asss/la/errors.hpp"
#include "asss/la/matrix_market.hpp"

namespace {

using namespace asss;

constexpr int kConfigExit = 2;
constexpr int kIoExit = 3;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_mesh_info(const bench::MeshInfo& i, bool csv) {
  if (csv) {
    bench::write_mesh_info(std::cout, i);
    return;
  }
  std::printf("k           %d\n", i.k);
  std::printf("h           %.10g\n", i.h);
  std::printf("m           %zu\n", i.m);
  std::printf("theta       %.6e\n", i.theta);
  std::printf("mu_min      %.6e\n", i.mu_min);
  std::printf("mu_max      %.6e\n", i.mu_max);
  std::printf("alpha*      %.6e\n", i.alpha_star);
  std::printf("power/inverse power estimates%s\n", i.est_converged ? "" : " (not converged)");
  std::printf("  mu_min    %.6e\n", i.est_mu_min);
  std::printf("  mu_max    %.6e\n", i.est_mu_max);
  std::printf("  alpha*    %.6e  (relative difference %.3e)\n", i.est_alpha_star,
              i.alpha_rel_diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ASSS solvers for the time-periodic parabolic control problem"};
  app.require_subcommand(1);

  int k = 5;
  bool csv = false;
  auto* mesh = app.add_subcommand("mesh-info", "Mass-matrix constants and the optimal shift");
  mesh->add_option("--k", k, "h = 2^-k, k in [3, 8]")->required();
  mesh->add_flag("--csv", csv, "CSV instead of text");

  std::string config_path, out_path;
  std::vector<std::string> methods;
  std::vector<int> ks;
  std::vector<double> nus, omegas;
  std::optional<double> alpha, max_seconds;
  std::optional<unsigned> threads;
  std::optional<std::string> bd_variant;
  auto* bench_cmd = app.add_subcommand("bench", "Iteration-count sweep over (method, k, nu, omega)");
  bench_cmd->add_option("--config", config_path, "JSON file mirroring the bench settings");
  bench_cmd->add_option("--method", methods, "iasss ibas p-asss p-bas p-presb p-bd asss-exact");
  bench_cmd->add_option("--k", ks, "Grid levels");
  bench_cmd->add_option("--nu", nus, "Regularization values");
  bench_cmd->add_option("--omega", omegas, "Frequencies");
  bench_cmd->add_option("--alpha", alpha, "Override the per-method parameter");
  bench_cmd->add_option("--max-seconds", max_seconds, "Per-cell wall-clock cap (0 = none)");
  bench_cmd->add_option("--threads", threads, "Cells run concurrently");
  bench_cmd->add_option("--bd-variant", bd_variant, "scaled_shift or unscaled_shift");
  bench_cmd->add_option("--out", out_path, "CSV path (stdout if omitted)");

  double nu = 0.0, omega = 0.0;
  std::optional<double> eig_alpha;
  std::string prefix;
  auto* eig = app.add_subcommand("eig", "Dense spectra of B and of the ASSS-preconditioned B");
  eig->add_option("--k", k, "k <= 4")->required();
  eig->add_option("--nu", nu)->required();
  eig->add_option("--omega", omega)->required();
  eig->add_option("--alpha", eig_alpha, "Defaults to the optimal shift");
  eig->add_option("--out-prefix", prefix, "Writes <prefix>_B.csv and <prefix>_PB.csv")->required();

  std::string out_dir;
  auto* exp = app.add_subcommand("export-matrices", "Write M and K in Matrix Market format");
  exp->add_option("--k", k)->required();
  exp->add_option("--out-dir", out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh) {
      print_mesh_info(bench::mesh_info(k), csv);
    } else if (*bench_cmd) {
      auto spec = bench::BenchSpec::table_defaults();
      if (!config_path.empty()) spec = bench::spec_from_json(read_file(config_path), spec);
      if (!methods.empty()) {
        spec.methods.clear();
        for (const auto& m : methods) spec.methods.push_back(bench::parse_method(m));
      }
      if (!ks.empty()) spec.ks = ks;
      if (!nus.empty()) spec.nus = nus;
      if (!omegas.empty()) spec.omegas = omegas;
      if (alpha) spec.alpha = alpha;
      if (max_seconds) spec.max_seconds = *max_seconds;
      if (threads) spec.threads = *threads;
      if (bd_variant) {
        std::string text = "{\"bd_variant\": \"" + *bd_variant + "\"}";
        spec = bench::spec_from_json(text, spec);
      }
      if (!out_path.empty()) spec.out = out_path;
      spec.validate();

      std::ofstream file;
      if (!spec.out.empty()) {
        file.open(spec.out);
        if (!file) throw IoError("cannot open " + spec.out + " for writing");
      }
      std::ostream& out = spec.out.empty() ? std::cout : file;
      bench::write_csv_header(out);
      bench::run_bench(spec, [&](const bench::CellResult& c) {
        bench::write_csv_row(out, c);
        out.flush();
        if (!c.error.empty())
          std::cerr << bench::to_string(c.method) << " k=" << c.k << " nu=" << c.nu
                    << " omega=" << c.omega << ": " << c.error << '\n';
      });
      if (!out) throw IoError("write failed: " + spec.out);
    } else if (*eig) {
      const auto s = bench::emit_eig_scatter(k, nu, omega, eig_alpha, prefix);
      std::printf("n=%zu alpha=%.6e max|lambda-1|=%.12f min_re=%.6e b_conjugate_closed=%s\n", s.n,
                  s.alpha, s.max_dist_from_one, s.min_real_preconditioned,
                  s.b_conjugate_closed ? "yes" : "no");
    } else if (*exp) {
      const fem::GridConfig grid(k);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      la::write_matrix_market(dir / "M.mtx", fem::assemble_mass(grid),
                              la::MatrixMarketSymmetry::symmetric);
      la::write_matrix_market(dir / "K.mtx", fem::assemble_stiffness(grid),
                              la::MatrixMarketSymmetry::symmetric);
      std::printf("wrote %s and %s (m=%zu)\n", (dir / "M.mtx").c_str(), (dir / "K.mtx").c_str(),
                  grid.m());
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoExit;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
