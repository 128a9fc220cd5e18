#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "alesolve/errors.hpp"
#include "alesolve/scenarios.hpp"
#include "doctest.h"

using namespace alesolve;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("alesolve_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ALESOLVE_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing: defaults per scenario") {
  const auto c = parse_config(json{{"scenario", "convergence"}});
  CHECK(c.degree == 3);
  CHECK(c.elements == std::vector<int>{2, 4, 8});
  CHECK(c.cfl == std::vector<double>{0.1});
  CHECK(c.motion == MotionKind::kStatic);
  CHECK(c.flux.dissipation == DissipationMode::kRoe);
  const auto t = parse_config(json{{"scenario", "tgv"}, {"K", 3}, {"cfl", 0.2}});
  CHECK(t.elements == std::vector<int>{3});
  CHECK(t.cfl == std::vector<double>{0.2});
  CHECK(t.flux.dissipation == DissipationMode::kNone);
  const auto r = parse_config(json{{"scenario", "robustness"}});
  CHECK(r.degree == 7);
  CHECK(r.final_time == 2.0);
  CHECK(r.cfl == std::vector<double>{0.25});
  const auto s = parse_config(json{{"scenario", "fv1d"}, {"system", "shallow"}});
  CHECK(s.flux.variant == EcVariant::kWintermeyer);
}

TEST_CASE("config parsing: errors name the field") {
  auto message = [](const json& doc) {
    try {
      (void)parse_config(doc);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(json{{"scenario", "tgv"}, {"speed", 1}}).find("speed") != std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"cfl", 0.0}}).find("cfl") != std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"cfl", {0.5, 1.2}}}).find("cfl") != std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"N", "three"}}).find("'N'") != std::string::npos);
  CHECK(message(json{{"scenario", "warp"}}).find("scenario") != std::string::npos);
  CHECK(message(json{{"N", 3}}).find("scenario") != std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"flux", "fmt"}}).find("flux") != std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"system", "shallow"}}).find("system") !=
        std::string::npos);
  CHECK(message(json{{"scenario", "tgv"}, {"rk", "rk2"}}).find("rk") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("fv1d scenario writes a CSV with the config header") {
  const auto dir = scratch("fv1d");
  auto c = parse_config(json{{"scenario", "fv1d"}, {"cells", 16}, {"final_time", 0.1},
                             {"initial", "freestream"}, {"dissipation", "roe"}});
  c.output_dir = dir.string();
  std::ostringstream log;
  run_scenario(c, log);
  const std::string csv = slurp(dir / "fv1d.csv");
  CHECK(csv.rfind("# config: {", 0) == 0);
  CHECK(csv.find("t,total_entropy,mass,freestream_linf") != std::string::npos);
}

TEST_CASE("scenario output is byte-identical across reruns and worker counts") {
  const auto d1 = scratch("rep1");
  const auto d2 = scratch("rep2");
  auto c = parse_config(json{{"scenario", "tgv"}, {"K", 2}, {"N", 2}, {"cfl", 0.5},
                             {"final_time", 0.05}});
  std::ostringstream log;
  c.output_dir = d1.string();
  run_scenario(c, log);
  c.output_dir = d2.string();
  c.workers = 2;
  run_scenario(c, log);
  CHECK(slurp(d1 / "entropy_cfl_0.5.csv") == slurp(d2 / "entropy_cfl_0.5.csv"));
  CHECK(slurp(d1 / "tgv_summary.csv") == slurp(d2 / "tgv_summary.csv"));
}

TEST_CASE("run_dg clamps the last step onto the final time") {
  MeshMotion m;
  m.x_max = 1.0;
  const MovingMesh mesh({1, 1, 1}, m, 2);
  const DgSolver solver(mesh, EulerGas(1.4),
                        FluxSpec{SystemKind::kEuler, EcVariant::kChandrashekar,
                                 DissipationMode::kNone, 0.0});
  auto f = solver.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; });
  const auto r = run_dg(solver, f, 0.5, 0.123, RkScheme::carpenter_kennedy_rk4());
  CHECK(r.fields.t == doctest::Approx(0.123).epsilon(1e-15));
  CHECK(r.record.samples.back().t == r.fields.t);
  CHECK(r.record.samples.size() == static_cast<std::size_t>(r.steps) + 1);
}

TEST_CASE("check suite passes and its negative control fails") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& row : check_suite({seed, false, 1})) CHECK_MESSAGE(row.pass, row.name);
  }
  bool face_failed = false;
  for (const auto& row : check_suite({1, true, 1}))
    if (row.suite == "face_residual" && !row.pass) face_failed = true;
  CHECK(face_failed);
}

TEST_CASE("CSV helpers") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  std::ostringstream os;
  write_check_operators_csv(os, 2);
  CHECK(os.str().rfind("N,sbp_residual,quad_residual,row_sum_residual\n1,", 0) == 0);
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch("cli");
  std::filesystem::create_directories(dir);
  CHECK(run_cli("run /nonexistent.json") == 2);
  {
    std::ofstream(dir / "bad.json") << R"({"scenario":"tgv","cfl":2})";
    std::ofstream(dir / "blowup.json")
        << R"({"scenario":"fv1d","cells":8,"final_time":1,"dt":0.5,"initial":"wave"})";
    std::ofstream(dir / "ok.json") << R"({"scenario":"check-operators"})";
  }
  CHECK(run_cli("run " + (dir / "bad.json").string()) == 2);
  CHECK(run_cli("run " + (dir / "blowup.json").string() + " --output-dir " + dir.string()) == 3);
  CHECK(run_cli("run " + (dir / "ok.json").string() + " --output-dir " + dir.string()) == 0);
  CHECK(std::filesystem::exists(dir / "check_operators.csv"));
  CHECK(run_cli("check") == 0);
  CHECK(run_cli("check --zero-dissipation") == 3);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("check-fluxes --samples 10") == 0);
}

TEST_CASE("shipped example configs parse") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ALESOLVE_CONFIG_DIR)) {
    CHECK_NOTHROW((void)load_config(entry.path().string()));
    ++count;
  }
  CHECK(count >= 5);
}
