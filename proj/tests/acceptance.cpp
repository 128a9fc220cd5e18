// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: acceptance <n>|all [--workers W]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "alesolve/diagnostics.hpp"
#include "alesolve/fluxes.hpp"
#include "alesolve/operators.hpp"
#include "alesolve/scenarios.hpp"

using namespace alesolve;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int g_workers = 1;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Columns of a CSV written by the scenarios; comment lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const {
    std::size_t k = 0;
    while (k < header.size() && header[k] != name) ++k;
    if (k == header.size()) throw std::runtime_error("missing CSV column " + name);
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(k < r.size() ? r[k] : std::nan(""));
    return out;
  }
};

Table read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(c.empty() ? std::nan("") : std::stod(c));
    t.rows.push_back(row);
  }
  return t;
}

fs::path run(const std::string& tag, json doc) {
  const fs::path dir = fs::temp_directory_path() / ("alesolve_acceptance_" + tag);
  fs::remove_all(dir);
  RunConfig c = parse_config(doc);
  c.output_dir = dir.string();
  c.workers = g_workers;
  std::ostringstream log;
  run_scenario(c, log);
  return dir;
}

Verdict ac1() {
  double sbp = 0, quad = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto r = operator_residuals(build_lgl(n));
    sbp = std::max(sbp, r.sbp);
    quad = std::max(quad, r.quadrature);
  }
  return {sbp <= 1e-13 && quad <= 1e-12,
          "max SBP residual " + fmt(sbp) + " (<=1e-13), quadrature " + fmt(quad) + " (<=1e-12)"};
}

Verdict ac2() {
  double ident = 0, tight = 0, jmin = 0;
  bool ok = true;
  for (const auto& r : check_suite({1, false, g_workers})) {
    if (r.suite != "mesh") continue;
    ok = ok && r.pass;
    if (r.name == "metric_identity_max") ident = r.value;
    if (r.name == "watertightness_max") tight = r.value;
    if (r.name == "min_jacobian") jmin = r.value;
  }
  return {ok, "metric identity " + fmt(ident) + " (<=1e-11), watertightness " + fmt(tight) +
                  " (<=1e-12), min J " + fmt(jmin)};
}

Verdict ac3() {
  const std::vector<std::pair<SystemKind, EcVariant>> variants = {
      {SystemKind::kEuler, EcVariant::kChandrashekar},
      {SystemKind::kEuler, EcVariant::kRanocha},
      {SystemKind::kShallow, EcVariant::kWintermeyer},
      {SystemKind::kShallow, EcVariant::kFjordholm}};
  double tadmor = 0, sym = 0, eig = 1e300, scaling = 0;
  for (const auto& [sys, var] : variants)
    for (DissipationMode d : {DissipationMode::kRoe, DissipationMode::kRusanov,
                              DissipationMode::kBlend}) {
      const auto r = check_tadmor(FluxSpec{sys, var, d, 0.5}, 1000, 1);
      tadmor = std::max(tadmor, r.tadmor_residual);
      sym = std::max(sym, r.symmetry_residual);
      eig = std::min(eig, r.spd_min_eig);
      scaling = std::max(scaling, r.eigen_scaling_residual);
    }
  const bool ok = tadmor <= 1e-11 && sym == 0.0 && eig >= -1e-12 && scaling <= 1e-10;
  return {ok, "4 variants x 3 dissipations, 1000 pairs: Tadmor " + fmt(tadmor) +
                  " (<=1e-11), symmetry " + fmt(sym) + " (==0), min eig/|H| " + fmt(eig) +
                  " (>=-1e-12), RR^T-du/dw " + fmt(scaling) + " (<=1e-10)"};
}

Verdict ac4() {
  double dg = 0;
  for (int n : {3, 4}) {
    const auto dir = run("ac4_N" + std::to_string(n),
                         {{"scenario", "freestream"}, {"N", n}, {"K", 4}, {"cfl", {0.25, 0.95}},
                          {"final_time", 1.0}});
    const Table t = read_csv(dir / "freestream.csv");
    for (const char* v : {"Linf_rho", "Linf_rho_u", "Linf_rho_v", "Linf_rho_w", "Linf_E"})
      for (double x : t.column(v)) dg = std::max(dg, x);
  }
  double fv = 0;
  for (const char* sys : {"euler", "shallow"}) {
    const auto dir = run(std::string("ac4_fv_") + sys,
                         {{"scenario", "fv1d"}, {"system", sys}, {"initial", "freestream"},
                          {"cells", 64}, {"final_time", 1.0}, {"cfl", 0.5},
                          {"dissipation", "roe"}});
    for (double x : read_csv(dir / "fv1d.csv").column("freestream_linf")) fv = std::max(fv, x);
  }
  return {dg <= 1e-10 && fv <= 1e-13,
          "DG N{3,4} CFL{0.25,0.95} max Linf " + fmt(dg) + " (<=1e-10), FV max Linf " + fmt(fv) +
              " (<=1e-13)"};
}

Verdict ac5() {
  double ec = 0, es = 0;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    for (const auto& r : check_suite({seed, false, g_workers})) {
      if (r.suite != "face_residual") continue;
      ok = ok && r.pass;
      (r.name == "ec" ? ec : es) = std::max(r.name == "ec" ? ec : es, r.value);
    }
  return {ok, "5 seeds: EC residual " + fmt(ec) + ", ES residual " + fmt(es) + " (<=1e-11)"};
}

Verdict ac6() {
  const std::vector<double> cfls{0.5, 0.25, 0.125, 0.0625};
  const auto dir = run("ac6", {{"scenario", "tgv"}, {"N", 3}, {"K", 4}, {"cfl", cfls},
                               {"final_time", 1.0}, {"dissipation", "none"}});
  const auto errs = read_csv(dir / "tgv_summary.csv").column("abs_Delta_S");
  const double slope = log_log_slope(cfls, errs);
  std::string d = "slope " + fmt(slope) + " (in [3.5,4.5]); |Delta_S|:";
  for (double e : errs) d += " " + fmt(e);
  return {slope >= 3.5 && slope <= 4.5, d};
}

Verdict ac7() {
  const std::vector<double> cfls{0.5, 0.25, 0.125, 0.0625};
  const auto dir = run("ac7", {{"scenario", "tgv"}, {"N", 3}, {"K", 4}, {"cfl", cfls},
                               {"final_time", 1.0}, {"dissipation", "roe"}});
  double worst = -1e300, total = 0;
  for (double cfl : cfls) {
    char name[64];
    std::snprintf(name, sizeof name, "entropy_cfl_%g.csv", cfl);
    const auto ds = read_csv(dir / name).column("Delta_S");
    for (std::size_t i = 1; i < ds.size(); ++i) worst = std::max(worst, ds[i] - ds[i - 1]);
    if (cfl == 0.5) total = ds.back();
  }
  return {worst <= 1e-12, "max per-interval increase " + fmt(worst) +
                              " (<=1e-12), Delta_S(T) at CFL 0.5 " + fmt(total)};
}

Verdict ac8() {
  const char* vars[] = {"rho", "rho_u", "rho_v", "rho_w", "E"};
  auto final_eoc = [&](const Table& t, const char* v) { return t.column(std::string("EOC_") + v).back(); };
  const Table st = read_csv(run("ac8_static", {{"scenario", "convergence"}, {"motion", "static"}}) /
                            "convergence.csv");
  const Table mv =
      read_csv(run("ac8_moving", {{"scenario", "convergence"}, {"motion", "sinusoidal"}}) /
               "convergence.csv");
  double st_min = 1e300, mv_min = 1e300;
  for (const char* v : vars) {
    st_min = std::min(st_min, final_eoc(st, v));
    mv_min = std::min(mv_min, final_eoc(mv, v));
  }
  const double l2 = st.column("L2_rho").back();
  const double ratio = std::max(l2 / 4.35e-5, 4.35e-5 / l2);
  const bool ok = st_min >= 3.5 && mv_min >= 3.0 && ratio <= 5.0;
  return {ok, "static min final EOC " + fmt(st_min) + " (>=3.5), moving min final EOC " +
                  fmt(mv_min) + " (>=3.0), K=8 L2(rho) " + fmt(l2) + " vs 4.35e-05 ratio " +
                  fmt(ratio) + " (<=5)"};
}

Verdict ac9() {
  const std::vector<double> dts{0.004, 0.002, 0.001, 0.0005};
  std::string d;
  bool ok = true;
  for (const char* sys : {"euler", "shallow"}) {
    std::vector<double> errs;
    for (double dt : dts) {
      const auto dir = run(std::string("ac9_") + sys,
                           {{"scenario", "fv1d"}, {"system", sys}, {"initial", "wave"},
                            {"cells", 64}, {"final_time", 1.0}, {"dt", dt}, {"dissipation", "none"}});
      const auto s = read_csv(dir / "fv1d.csv").column("total_entropy");
      errs.push_back(std::abs(s.back() - s.front()));
    }
    const double slope = log_log_slope(dts, errs);
    ok = ok && slope >= 3.5 && slope <= 4.5;
    d += std::string(d.empty() ? "" : "; ") + sys + " slope " + fmt(slope) + " (|dS| " +
         fmt(errs.front()) + " -> " + fmt(errs.back()) + ")";
  }
  return {ok, d + " (in [3.5,4.5])"};
}

Verdict ac10() {
  const auto dir = run("ac10", {{"scenario", "robustness"}, {"N", 7}, {"K", 4}, {"cfl", 0.25},
                                {"final_time", 2.0}, {"dissipation", "roe"}, {"record_every", 10}});
  const Table t = read_csv(dir / "robustness.csv");
  const double tf = t.column("t").back();
  const double ds = t.column("Delta_S").back();
  return {std::abs(tf - 2.0) <= 1e-12 && std::isfinite(ds),
          "reached t=" + fmt(tf) + " without failure, Delta_S(T) " + fmt(ds)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria = {ac1, ac2, ac3, ac4, ac5,
                                                          ac6, ac7, ac8, ac9, ac10};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--workers" && i + 1 < argc) {
      g_workers = std::stoi(argv[++i]);
    } else if (a == "all") {
      for (int k = 1; k <= 10; ++k) which.push_back(k);
    } else {
      which.push_back(std::stoi(a));
    }
  }
  if (which.empty()) {
    std::cerr << "usage: acceptance <1-10>|all [--workers W]\n";
    return 2;
  }
  bool all_ok = true;
  for (int k : which) {
    if (k < 1 || k > 10) {
      std::cerr << "no criterion " << k << '\n';
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "AC" << k << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << v.detail << " ["
              << fmt(secs) << " s]" << std::endl;
    all_ok = all_ok && v.pass;
  }
  return all_ok ? 0 : 1;
}
