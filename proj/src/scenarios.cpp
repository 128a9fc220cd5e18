#include "alesolve/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "alesolve/errors.hpp"
#include "alesolve/fv1d.hpp"

namespace alesolve {

namespace {

using json = nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::set<std::string> kScenarios = {"convergence", "tgv",        "freestream",
                                          "robustness",  "fv1d",       "check-operators",
                                          "check-fluxes"};

template <class T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

// Accepts either a scalar or an array for list-valued fields.
template <class T>
std::vector<T> list_field(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(std::string("field '") + key + "': list is empty");
    return field<std::vector<T>>(doc, key);
  }
  return {field<T>(doc, key)};
}

void apply_scenario_defaults(RunConfig& c) {
  const std::string& s = c.scenario;
  if (s == "convergence") {
    c.degree = 3;
    c.elements = {2, 4, 8};
    c.cfl = {0.1};
    c.final_time = 5.0;
    c.motion = MotionKind::kStatic;
    c.bounds = std::array<double, 2>{-1.0, 1.0};
    c.flux.dissipation = DissipationMode::kRoe;
  } else if (s == "tgv") {
    c.elements = {4};
    c.cfl = {0.5, 0.25, 0.125, 0.0625};
    c.final_time = 1.0;
    c.flux.dissipation = DissipationMode::kNone;
  } else if (s == "freestream") {
    c.elements = {4};
    c.cfl = {0.25, 0.95};
    c.final_time = 1.0;
    c.flux.dissipation = DissipationMode::kRoe;
  } else if (s == "robustness") {
    c.degree = 7;
    c.elements = {4};
    c.cfl = {0.25};
    c.final_time = 2.0;
    c.flux.dissipation = DissipationMode::kRoe;
  } else if (s == "fv1d") {
    c.cfl = {0.5};
    c.final_time = 1.0;
    c.bounds = std::array<double, 2>{0.0, 1.0};
  }
}

void validate(const RunConfig& c) {
  if (c.degree < 1 || c.degree > 15) throw ConfigError("field 'N': must lie in [1, 15]");
  for (int k : c.elements)
    if (k < 1) throw ConfigError("field 'K': element counts must be positive");
  for (double v : c.cfl)
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError("field 'cfl': values must lie in (0, 1]");
  if (!(c.final_time >= 0.0) || !std::isfinite(c.final_time))
    throw ConfigError("field 'final_time': must be finite and nonnegative");
  if (!(c.amplitude >= 0.0)) throw ConfigError("field 'amplitude': must be nonnegative");
  if (c.bounds && !((*c.bounds)[1] > (*c.bounds)[0]))
    throw ConfigError("field 'bounds': upper bound must exceed lower bound");
  if (!(c.gamma > 1.0)) throw ConfigError("field 'gamma': must exceed 1");
  if (!(c.gravity > 0.0)) throw ConfigError("field 'g': must be positive");
  if (c.workers < 1) throw ConfigError("field 'workers': must be at least 1");
  if (c.record_every < 1) throw ConfigError("field 'record_every': must be at least 1");
  if (!(c.dt_max > 0.0)) throw ConfigError("field 'dt_max': must be positive");
  if (c.cells < 2) throw ConfigError("field 'cells': need at least 2 cells");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("field 'dt': must be positive");
  (void)RkScheme::by_name(c.rk);
  try {
    c.flux.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field 'flux': ") + e.what());
  }
  if (c.scenario != "fv1d" && c.scenario.rfind("check", 0) != 0 &&
      c.flux.system != SystemKind::kEuler)
    throw ConfigError("field 'system': the DG scenarios support only euler");
  if (c.scenario == "fv1d" && c.initial != "wave" && c.initial != "freestream")
    throw ConfigError("field 'initial': expected wave or freestream");
}

std::string cfl_tag(double cfl) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", cfl);
  return buf;
}

std::ofstream open_csv(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.output_dir);
  const auto path = std::filesystem::path(c.output_dir) / name;
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write output file " + path.string());
  os << "# config: " << c.source.dump() << "\n";
  return os;
}

MeshMotion make_motion(const RunConfig& c, double lo, double hi) {
  MeshMotion m;
  m.x_min = c.bounds ? (*c.bounds)[0] : lo;
  m.x_max = c.bounds ? (*c.bounds)[1] : hi;
  m.amplitude = c.amplitude;
  m.kind = c.motion;
  return m;
}

constexpr const char* kVarNames[5] = {"rho", "rho_u", "rho_v", "rho_w", "E"};

void write_series(std::ostream& os, const RunRecord& rec) {
  os << "t,S,Delta_S,mass,mom_x,mom_y,mom_z,energy\n";
  const double s0 = rec.samples.empty() ? 0.0 : rec.samples.front().entropy;
  for (const auto& s : rec.samples) {
    const double ds = s.entropy_change ? *s.entropy_change : s.entropy - s0;
    os << format_double(s.t) << ',' << format_double(s.entropy) << ',' << format_double(ds);
    for (double v : s.totals) os << ',' << format_double(v);
    os << '\n';
  }
}

void run_convergence(const RunConfig& c, std::ostream& log) {
  const EulerGas gas(c.gamma);
  const RkScheme scheme = RkScheme::by_name(c.rk);
  const double gamma = c.gamma;
  std::vector<std::pair<int, double>> rows[5];
  std::vector<ErrorNorms> norms;
  for (int k : c.elements) {
    const MovingMesh mesh({k, k, k}, make_motion(c, -1.0, 1.0), c.degree);
    DgOptions opt;
    opt.workers = c.workers;
    opt.source = [gamma](const Vec3& x, double t) { return mms_source(x, t, gamma); };
    const DgSolver solver(mesh, gas, c.flux, opt);
    FieldState f0 = solver.initial_state([gamma](const Vec3& x) { return mms_exact(x, 0.0, gamma); });
    const DgRunResult r = run_dg(solver, std::move(f0), c.cfl.front(), c.final_time, scheme,
                                 1 << 30, c.dt_max);
    const MeshSnapshot snap = solver.snapshot(r.fields.t);
    const ErrorNorms en = error_norms(r.fields, snap, mesh.ops(), [gamma](const Vec3& x, double t) {
      return mms_exact(x, t, gamma);
    });
    norms.push_back(en);
    for (int v = 0; v < 5; ++v) rows[v].push_back({k, en.l2[v]});
    log << "convergence K=" << k << "^3 steps=" << r.steps << " L2(rho)=" << en.l2[0] << "\n";
  }
  std::vector<std::optional<double>> rates[5];
  for (int v = 0; v < 5; ++v) rates[v] = eoc(rows[v]);
  auto os = open_csv(c, "convergence.csv");
  os << "K";
  for (const char* n : kVarNames) os << ",L2_" << n << ",EOC_" << n;
  os << '\n';
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    os << c.elements[i];
    for (int v = 0; v < 5; ++v) {
      os << ',' << format_double(norms[i].l2[v]) << ',';
      if (i > 0 && rates[v][i - 1]) os << format_double(*rates[v][i - 1]);
    }
    os << '\n';
  }
}

void run_tgv(const RunConfig& c, std::ostream& log) {
  const EulerGas gas(c.gamma);
  const RkScheme scheme = RkScheme::by_name(c.rk);
  const int k = c.elements.front();
  const MovingMesh mesh({k, k, k}, make_motion(c, 0.0, kTwoPi), c.degree);
  const DgSolver solver(mesh, gas, c.flux, DgOptions{c.workers, {}});
  std::vector<double> cfls, errs;
  for (double cfl : c.cfl) {
    FieldState f0 = solver.initial_state([&](const Vec3& x) { return tgv_initial(x, c.gamma); });
    const DgRunResult r =
        run_dg(solver, std::move(f0), cfl, c.final_time, scheme, c.record_every, c.dt_max);
    auto os = open_csv(c, "entropy_cfl_" + cfl_tag(cfl) + ".csv");
    write_series(os, r.record);
    const double ds = entropy_error(r.record, c.final_time);
    cfls.push_back(cfl);
    errs.push_back(std::abs(ds));
    log << "tgv cfl=" << cfl << " steps=" << r.steps << " Delta_S=" << ds << "\n";
  }
  auto os = open_csv(c, "tgv_summary.csv");
  os << "cfl,abs_Delta_S\n";
  for (std::size_t i = 0; i < cfls.size(); ++i)
    os << format_double(cfls[i]) << ',' << format_double(errs[i]) << '\n';
  bool positive = true;
  for (double e : errs) positive = positive && e > 0.0;
  if (cfls.size() >= 2 && positive) {
    const double slope = log_log_slope(cfls, errs);
    os << "# slope: " << format_double(slope) << '\n';
    log << "tgv slope=" << slope << "\n";
  }
}

void run_freestream(const RunConfig& c, std::ostream& log) {
  const EulerGas gas(c.gamma);
  const RkScheme scheme = RkScheme::by_name(c.rk);
  const int k = c.elements.front();
  const MovingMesh mesh({k, k, k}, make_motion(c, 0.0, kTwoPi), c.degree);
  const DgSolver solver(mesh, gas, c.flux, DgOptions{c.workers, {}});
  const EulerState u0{1.0, 0.3, 0.0, 0.0, 17.0};
  auto os = open_csv(c, "freestream.csv");
  os << "cfl,steps";
  for (const char* n : kVarNames) os << ",Linf_" << n;
  os << '\n';
  for (double cfl : c.cfl) {
    FieldState f0 = solver.initial_state([&](const Vec3&) { return u0; });
    const DgRunResult r =
        run_dg(solver, std::move(f0), cfl, c.final_time, scheme, 1 << 30, c.dt_max);
    std::array<double, 5> linf{};
    for (const auto& u : r.fields.u)
      for (int v = 0; v < 5; ++v) linf[v] = std::max(linf[v], std::abs(u[v] - u0[v]));
    os << format_double(cfl) << ',' << r.steps;
    for (double e : linf) os << ',' << format_double(e);
    os << '\n';
    log << "freestream cfl=" << cfl << " steps=" << r.steps << " Linf(rho)=" << linf[0] << "\n";
  }
}

void run_robustness(const RunConfig& c, std::ostream& log) {
  const EulerGas gas(c.gamma);
  const RkScheme scheme = RkScheme::by_name(c.rk);
  const int k = c.elements.front();
  const MovingMesh mesh({k, k, k}, make_motion(c, 0.0, kTwoPi), c.degree);
  const DgSolver solver(mesh, gas, c.flux, DgOptions{c.workers, {}});
  FieldState f0 = solver.initial_state([&](const Vec3& x) { return tgv_initial(x, c.gamma); });
  const DgRunResult r = run_dg(solver, std::move(f0), c.cfl.front(), c.final_time, scheme,
                               c.record_every, c.dt_max);
  auto os = open_csv(c, "robustness.csv");
  write_series(os, r.record);
  log << "robustness steps=" << r.steps << " final t=" << r.fields.t << "\n";
}

template <class System>
void run_fv(const RunConfig& c, const System& sys,
            const std::function<typename System::State(double)>& init, std::ostream& log) {
  FvMesh1D mesh;
  mesh.x_min = (*c.bounds)[0];
  mesh.x_max = (*c.bounds)[1];
  mesh.cells = c.cells;
  mesh.amplitude = c.amplitude;
  mesh.kind = c.motion;
  try {
    mesh.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field 'amplitude': ") + e.what());
  }
  const FvSolver<System> solver(sys, c.flux, mesh);
  const RkScheme scheme = RkScheme::by_name(c.rk);
  auto s = solver.initial_state(init);
  const auto u_init = s.u;
  auto os = open_csv(c, "fv1d.csv");
  os << "t,total_entropy,mass,freestream_linf\n";
  auto emit = [&] {
    double dev = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k)
      for (int i = 0; i < System::kVars; ++i)
        dev = std::max(dev, std::abs(s.u[k][i] - u_init[k][i]));
    os << format_double(s.t) << ',' << format_double(solver.total_entropy(s)) << ','
       << format_double(solver.total_mass(s)) << ',' << format_double(dev) << '\n';
  };
  emit();
  const double T = c.final_time;
  int steps = 0;
  while (T - s.t > 1e-13 * std::max(1.0, T)) {
    double dt = c.dt ? *c.dt : solver.cfl_dt(s, c.cfl.front());
    dt = std::min(dt, c.dt_max);
    if (s.t + dt > T) dt = T - s.t;
    solver.rk_step(s, scheme, dt);
    ++steps;
    if (steps % c.record_every == 0 || T - s.t <= 1e-13 * std::max(1.0, T)) emit();
  }
  log << "fv1d steps=" << steps << " final entropy=" << solver.total_entropy(s) << "\n";
}

void run_fv1d(const RunConfig& c, std::ostream& log) {
  const double lo = (*c.bounds)[0];
  const double len = (*c.bounds)[1] - lo;
  const bool wave = c.initial == "wave";
  if (c.flux.system == SystemKind::kEuler) {
    const EulerGas gas(c.gamma);
    run_fv<EulerGas>(c, gas,
                     [&](double x) {
                       if (!wave) return EulerGas::State{1.0, 0.3, 0.0, 0.0, 17.0};
                       const double ph = kTwoPi * (x - lo) / len;
                       return gas.conserved(1.0 + 0.3 * std::sin(ph), {0.2 * std::cos(ph), 0.0, 0.0},
                                            1.0 + 0.2 * std::sin(ph + 1.0));
                     },
                     log);
  } else {
    const ShallowWater sw(c.gravity);
    run_fv<ShallowWater>(c, sw,
                         [&](double x) {
                           if (!wave) return sw.conserved(1.0, 0.3, 0.1);
                           const double ph = kTwoPi * (x - lo) / len;
                           return sw.conserved(1.0 + 0.2 * std::sin(ph), 0.1 * std::cos(ph),
                                               0.05 * std::sin(ph));
                         },
                         log);
  }
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  c.source = doc;
  if (!doc.contains("scenario")) throw ConfigError("field 'scenario': required");
  c.scenario = field<std::string>(doc, "scenario");
  if (!kScenarios.count(c.scenario))
    throw ConfigError("field 'scenario': unknown scenario '" + c.scenario + "'");
  apply_scenario_defaults(c);

  static const std::set<std::string> kKeys = {
      "scenario", "system", "N",       "K",    "cfl",    "final_time",   "motion",
      "amplitude", "bounds", "flux",   "dissipation", "alpha", "rk",    "output_dir",
      "seed",     "gamma",  "g",       "workers", "record_every", "dt_max", "cells",
      "dt",       "initial"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!kKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");

  try {
    if (doc.contains("system")) {
      c.system = field<std::string>(doc, "system");
      c.flux.system = parse_system(c.system);
      if (c.flux.system == SystemKind::kShallow) c.flux.variant = EcVariant::kWintermeyer;
    }
    if (doc.contains("flux")) c.flux.variant = parse_variant(field<std::string>(doc, "flux"));
    if (doc.contains("dissipation"))
      c.flux.dissipation = parse_dissipation(field<std::string>(doc, "dissipation"));
    if (doc.contains("alpha")) c.flux.alpha = field<double>(doc, "alpha");
    if (doc.contains("motion")) c.motion = parse_motion(field<std::string>(doc, "motion"));
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind("field", 0) == 0) throw;
    throw ConfigError("field 'system/flux/dissipation/motion': " + msg);
  }
  if (doc.contains("N")) c.degree = field<int>(doc, "N");
  if (doc.contains("K")) c.elements = list_field<int>(doc, "K");
  if (doc.contains("cfl")) c.cfl = list_field<double>(doc, "cfl");
  if (doc.contains("final_time")) c.final_time = field<double>(doc, "final_time");
  if (doc.contains("amplitude")) c.amplitude = field<double>(doc, "amplitude");
  if (doc.contains("bounds")) {
    const auto b = field<std::vector<double>>(doc, "bounds");
    if (b.size() != 2) throw ConfigError("field 'bounds': expected [lower, upper]");
    c.bounds = std::array<double, 2>{b[0], b[1]};
  }
  if (doc.contains("rk")) c.rk = field<std::string>(doc, "rk");
  if (doc.contains("output_dir")) c.output_dir = field<std::string>(doc, "output_dir");
  if (doc.contains("seed")) c.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("gamma")) c.gamma = field<double>(doc, "gamma");
  if (doc.contains("g")) c.gravity = field<double>(doc, "g");
  if (doc.contains("workers")) c.workers = field<int>(doc, "workers");
  if (doc.contains("record_every")) c.record_every = field<int>(doc, "record_every");
  if (doc.contains("dt_max")) c.dt_max = field<double>(doc, "dt_max");
  if (doc.contains("cells")) c.cells = field<int>(doc, "cells");
  if (doc.contains("dt")) c.dt = field<double>(doc, "dt");
  if (doc.contains("initial")) c.initial = field<std::string>(doc, "initial");
  try {
    (void)RkScheme::by_name(c.rk);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("field 'rk': ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

DgRunResult run_dg(const DgSolver& solver, FieldState fields, double cfl, double final_time,
                   const RkScheme& scheme, int record_every, double dt_max) {
  DgRunResult r;
  const OperatorSet& ops = solver.mesh().ops();
  const std::vector<double> s0 = nodal_entropy(fields, ops, solver.gas());
  auto record = [&] {
    r.record.add({fields.t, discrete_entropy(fields, ops, solver.gas()),
                  conserved_totals(fields, ops), entropy_change(fields, ops, solver.gas(), s0)});
  };
  record();
  const double tol = 1e-13 * std::max(1.0, final_time);
  while (final_time - fields.t > tol) {
    try {
      double dt = solver.compute_dt(fields, cfl, dt_max);
      if (fields.t + dt > final_time) dt = final_time - fields.t;
      solver.rk_step(fields, scheme, dt);
    } catch (const StateError& e) {
      std::ostringstream os;
      os << e.what() << " (step " << r.steps + 1 << ", t=" << fields.t << ")";
      throw StateError(os.str());
    } catch (const TimeStepError& e) {
      std::ostringstream os;
      os << e.what() << " (step " << r.steps + 1 << ", t=" << fields.t << ")";
      throw TimeStepError(os.str());
    }
    ++r.steps;
    if (r.steps % record_every == 0 || final_time - fields.t <= tol) record();
  }
  r.fields = std::move(fields);
  return r;
}

void run_scenario(const RunConfig& c, std::ostream& log) {
  if (c.scenario == "convergence") {
    run_convergence(c, log);
  } else if (c.scenario == "tgv") {
    run_tgv(c, log);
  } else if (c.scenario == "freestream") {
    run_freestream(c, log);
  } else if (c.scenario == "robustness") {
    run_robustness(c, log);
  } else if (c.scenario == "fv1d") {
    run_fv1d(c, log);
  } else if (c.scenario == "check-operators") {
    auto os = open_csv(c, "check_operators.csv");
    write_check_operators_csv(os, 15);
  } else if (c.scenario == "check-fluxes") {
    auto os = open_csv(c, "check_fluxes.csv");
    write_check_fluxes_csv(os, 1000, c.seed);
  } else {
    throw ConfigError("field 'scenario': unknown scenario '" + c.scenario + "'");
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_check_operators_csv(std::ostream& os, int max_degree) {
  os << "N,sbp_residual,quad_residual,row_sum_residual\n";
  for (int n = 1; n <= max_degree; ++n) {
    const auto r = operator_residuals(build_lgl(n));
    os << n << ',' << format_double(r.sbp) << ',' << format_double(r.quadrature) << ','
       << format_double(r.row_sum) << '\n';
  }
}

namespace {

std::vector<FluxSpec> flux_specs_for_checks() {
  return {{SystemKind::kEuler, EcVariant::kChandrashekar, DissipationMode::kRoe, 0.0},
          {SystemKind::kEuler, EcVariant::kRanocha, DissipationMode::kRoe, 0.0},
          {SystemKind::kShallow, EcVariant::kWintermeyer, DissipationMode::kRoe, 0.0},
          {SystemKind::kShallow, EcVariant::kFjordholm, DissipationMode::kRoe, 0.0}};
}

}  // namespace

void write_check_fluxes_csv(std::ostream& os, int samples, std::uint64_t seed) {
  os << "variant,samples,tadmor_residual,symmetry_residual,spd_min_eig,eigen_scaling_residual\n";
  for (const FluxSpec& spec : flux_specs_for_checks()) {
    const FluxCheckReport r = check_tadmor(spec, samples, seed);
    os << r.variant << ',' << r.samples << ',' << format_double(r.tadmor_residual) << ','
       << format_double(r.symmetry_residual) << ',' << format_double(r.spd_min_eig) << ','
       << format_double(r.eigen_scaling_residual) << '\n';
  }
}

namespace {

// Admissible smooth-plus-noise nodal states on every element of a mesh.
FieldState random_fields(const DgSolver& solver, double t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const EulerGas& gas = solver.gas();
  FieldState f = solver.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; }, t);
  for (auto& u : f.u) u = sample_state(gas, rng);
  return f;
}

}  // namespace

std::vector<CheckRow> check_suite(const CheckOptions& options) {
  std::vector<CheckRow> rows;
  auto add = [&](std::string suite, std::string name, double value, double tol, bool pass) {
    rows.push_back({std::move(suite), std::move(name), value, tol, pass});
  };

  // Operators.
  {
    double sbp = 0, quad = 0, row = 0;
    for (int n = 1; n <= 10; ++n) {
      const auto r = operator_residuals(build_lgl(n));
      sbp = std::max(sbp, r.sbp);
      quad = std::max(quad, r.quadrature);
      row = std::max(row, r.row_sum);
    }
    add("operators", "sbp_max_N1-10", sbp, 1e-13, sbp <= 1e-13);
    add("operators", "quadrature_max_N1-10", quad, 1e-12, quad <= 1e-12);
    add("operators", "row_sum_max_N1-10", row, 1e-12, row <= 1e-12);
  }

  // Mesh metrics and watertightness.
  {
    MeshMotion motion;
    motion.x_min = 0.0;
    motion.x_max = kTwoPi;
    motion.amplitude = 0.05;
    motion.kind = MotionKind::kSinusoidal;
    double ident = 0, tight = 0, jmin = 1e300;
    for (int n : {3, 4}) {
      const MovingMesh mesh({4, 4, 4}, motion, n);
      for (double t : {0.0, 0.13, 0.25, 0.4}) {
        std::vector<ElementGeometry> geoms;
        for (int e = 0; e < mesh.num_elements(); ++e) {
          geoms.push_back(mesh.element_geometry(e, t));
          ident = std::max(ident, metric_identity_residual(mesh.ops(), geoms.back()));
          for (double j : geoms.back().jacobian) jmin = std::min(jmin, j);
        }
        tight = std::max(tight, watertightness_residual(mesh, geoms));
      }
    }
    add("mesh", "metric_identity_max", ident, 1e-11, ident <= 1e-11);
    add("mesh", "watertightness_max", tight, 1e-12, tight <= 1e-12);
    add("mesh", "min_jacobian", jmin, 0.0, jmin > 0.0);
  }

  // Two-point fluxes.
  for (const FluxSpec& spec : flux_specs_for_checks()) {
    const FluxCheckReport r = check_tadmor(spec, 1000, options.seed);
    add("fluxes", r.variant + ":tadmor", r.tadmor_residual, 1e-11, r.tadmor_residual <= 1e-11);
    add("fluxes", r.variant + ":symmetry", r.symmetry_residual, 0.0, r.symmetry_residual == 0.0);
    add("fluxes", r.variant + ":spd_min_eig", r.spd_min_eig, -1e-12, r.spd_min_eig >= -1e-12);
    add("fluxes", r.variant + ":eigen_scaling", r.eigen_scaling_residual, 1e-10,
        r.eigen_scaling_residual <= 1e-10);
  }

  // Interior-face entropy identity on a distorted moving mesh.
  {
    MeshMotion motion;
    motion.x_min = 0.0;
    motion.x_max = 2.0;
    motion.amplitude = 0.05;
    motion.kind = MotionKind::kSinusoidal;
    const MovingMesh mesh({2, 2, 2}, motion, 3);
    const double t = 0.13;
    for (DissipationMode mode : {DissipationMode::kNone, DissipationMode::kRoe}) {
      const FluxSpec spec{SystemKind::kEuler, EcVariant::kChandrashekar, mode, 0.0};
      const DgSolver solver(mesh, EulerGas(1.4), spec, DgOptions{options.workers, {}});
      const FieldState f = random_fields(solver, t, options.seed);
      const bool omit = options.zero_dissipation && mode != DissipationMode::kNone;
      const double res = interior_face_entropy_residual(solver, f, t, omit);
      add("face_residual", mode == DissipationMode::kNone ? "ec" : "es", res, 1e-11,
          res <= 1e-11);
    }
  }
  return rows;
}

}  // namespace alesolve
