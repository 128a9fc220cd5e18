#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "alesolve/diagnostics.hpp"
#include "alesolve/dgsem.hpp"
#include "json.hpp"

namespace alesolve {

// Scenario description parsed from a single JSON document. Unknown keys are rejected.
struct RunConfig {
  std::string scenario;
  std::string system = "euler";
  int degree = 3;
  std::vector<int> elements{4};
  std::vector<double> cfl{0.5};
  double final_time = 1.0;
  MotionKind motion = MotionKind::kSinusoidal;
  double amplitude = 0.05;
  std::optional<std::array<double, 2>> bounds;
  FluxSpec flux;
  std::string rk = "ck45";
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  double gamma = 1.4;
  double gravity = 1.0;
  int workers = 1;
  int record_every = 1;
  double dt_max = 1.0;
  // 1D finite volume parameters.
  int cells = 64;
  std::optional<double> dt;
  std::string initial = "wave";

  nlohmann::json source;  // the document as given, for provenance headers
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

struct DgRunResult {
  FieldState fields;
  RunRecord record;
  int steps = 0;
};

// Advances fields to final_time with CFL-limited steps; the last step is clamped to land on
// final_time. Records S-bar and conserved totals every record_every steps and at the end.
DgRunResult run_dg(const DgSolver& solver, FieldState fields, double cfl, double final_time,
                   const RkScheme& scheme, int record_every = 1, double dt_max = 1.0);

// Executes a scenario, writing CSV files into config.output_dir. Progress goes to log.
// Throws ConfigError for invalid settings and StateError / TimeStepError / GeometryError on
// solver failure.
void run_scenario(const RunConfig& config, std::ostream& log);

struct CheckRow {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckOptions {
  std::uint64_t seed = 1;
  // Negative control: the ES surface flux drops its dissipation term.
  bool zero_dissipation = false;
  int workers = 1;
};

// Operator, mesh, flux and face-residual property suites.
std::vector<CheckRow> check_suite(const CheckOptions& options);

// CSV helpers shared by the CLI.
std::string format_double(double x);
void write_check_operators_csv(std::ostream& os, int max_degree);
void write_check_fluxes_csv(std::ostream& os, int samples, std::uint64_t seed);

}  // namespace alesolve
