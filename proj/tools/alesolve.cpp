// Command-line front end: scenario runner and property checks.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "alesolve/errors.hpp"
#include "alesolve/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int run_config(alesolve::RunConfig config, int workers, const std::string& output_dir) {
  if (workers > 0) config.workers = workers;
  if (!output_dir.empty()) config.output_dir = output_dir;
  alesolve::run_scenario(config, std::cerr);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alesolve: entropy-stable moving-mesh solvers"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 0;
  std::string output_dir;
  app.add_option("--workers", workers, "worker threads for element loops")
      ->check(CLI::PositiveNumber);
  app.add_option("--output-dir", output_dir, "directory for CSV outputs");

  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required();

  auto* check = app.add_subcommand("check", "operator, mesh, flux and face-residual suites");
  std::uint64_t check_seed = 1;
  bool zero_dissipation = false;
  check->add_option("--seed", check_seed, "random seed");
  check->add_flag("--zero-dissipation", zero_dissipation,
                  "negative control: drop the ES dissipation term from the surface flux");

  auto* check_ops = app.add_subcommand("check-operators", "SBP residuals per degree as CSV");
  int max_degree = 15;
  check_ops->add_option("--max-degree", max_degree, "largest degree")->check(CLI::Range(1, 15));

  auto* check_flux = app.add_subcommand("check-fluxes", "two-point flux properties as CSV");
  int samples = 1000;
  std::uint64_t flux_seed = 1;
  check_flux->add_option("--samples", samples, "random state pairs")->check(CLI::PositiveNumber);
  check_flux->add_option("--seed", flux_seed, "random seed");

  auto* fv = app.add_subcommand("fv1d", "1D moving-mesh finite volume run; CSV on stdout");
  std::string fv_system = "euler", fv_flux, fv_diss = "none", fv_initial = "wave";
  std::string fv_motion = "sinusoidal", fv_rk = "ck45";
  int fv_cells = 64;
  double fv_time = 1.0, fv_cfl = 0.5, fv_dt = 0.0, fv_amp = 0.05;
  fv->add_option("--system", fv_system, "euler or shallow");
  fv->add_option("--flux", fv_flux, "EC flux variant");
  fv->add_option("--dissipation", fv_diss, "none, roe, rusanov or blend");
  fv->add_option("--cells", fv_cells, "number of cells");
  fv->add_option("--final-time", fv_time, "final time");
  fv->add_option("--cfl", fv_cfl, "CFL number (ignored with --dt)");
  fv->add_option("--dt", fv_dt, "fixed time step");
  fv->add_option("--amplitude", fv_amp, "mesh motion amplitude");
  fv->add_option("--motion", fv_motion, "static or sinusoidal");
  fv->add_option("--initial", fv_initial, "wave or freestream");
  fv->add_option("--rk", fv_rk, "ck45 or rk4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_config(alesolve::load_config(config_path), workers, output_dir);

    if (*check) {
      alesolve::CheckOptions opt;
      opt.seed = check_seed;
      opt.zero_dissipation = zero_dissipation;
      opt.workers = workers > 0 ? workers : 1;
      const auto rows = alesolve::check_suite(opt);
      bool ok = true;
      std::cout << "suite,check,value,tolerance,result\n";
      for (const auto& r : rows) {
        std::cout << r.suite << ',' << r.name << ',' << alesolve::format_double(r.value) << ','
                  << r.tolerance << ',' << (r.pass ? "PASS" : "FAIL")
                  << '\n';
        ok = ok && r.pass;
      }
      if (!ok) std::cerr << "check: one or more suites failed\n";
      return ok ? kExitOk : kExitSolver;
    }

    if (*check_ops) {
      alesolve::write_check_operators_csv(std::cout, max_degree);
      return kExitOk;
    }

    if (*check_flux) {
      alesolve::write_check_fluxes_csv(std::cout, samples, flux_seed);
      return kExitOk;
    }

    if (*fv) {
      nlohmann::json doc = {{"scenario", "fv1d"},     {"system", fv_system},
                            {"dissipation", fv_diss}, {"cells", fv_cells},
                            {"final_time", fv_time},  {"cfl", fv_cfl},
                            {"amplitude", fv_amp},    {"motion", fv_motion},
                            {"initial", fv_initial},  {"rk", fv_rk}};
      if (!fv_flux.empty()) doc["flux"] = fv_flux;
      if (fv_dt > 0.0) doc["dt"] = fv_dt;
      auto config = alesolve::parse_config(doc);
      const std::string dir =
          output_dir.empty()
              ? (std::filesystem::temp_directory_path() / "alesolve_fv1d").string()
              : output_dir;
      const int code = run_config(config, workers, dir);
      std::ifstream is(std::filesystem::path(dir) / "fv1d.csv");
      std::cout << is.rdbuf();
      return code;
    }
  } catch (const alesolve::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const alesolve::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}
