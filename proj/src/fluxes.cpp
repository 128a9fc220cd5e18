#include "alesolve/fluxes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "alesolve/errors.hpp"

namespace alesolve {

// ---- Spec parsing ----------------------------------------------------------

SystemKind parse_system(const std::string& name) {
  if (name == "euler") return SystemKind::kEuler;
  if (name == "shallow") return SystemKind::kShallow;
  throw ConfigError("unknown system '" + name + "' (expected euler or shallow)");
}

EcVariant parse_variant(const std::string& name) {
  if (name == "chandrashekar") return EcVariant::kChandrashekar;
  if (name == "ranocha") return EcVariant::kRanocha;
  if (name == "wgwk") return EcVariant::kWintermeyer;
  if (name == "fmt") return EcVariant::kFjordholm;
  throw ConfigError("unknown flux variant '" + name +
                    "' (expected chandrashekar, ranocha, wgwk or fmt)");
}

DissipationMode parse_dissipation(const std::string& name) {
  if (name == "none") return DissipationMode::kNone;
  if (name == "roe") return DissipationMode::kRoe;
  if (name == "rusanov") return DissipationMode::kRusanov;
  if (name == "blend") return DissipationMode::kBlend;
  throw ConfigError("unknown dissipation mode '" + name +
                    "' (expected none, roe, rusanov or blend)");
}

std::string to_string(SystemKind s) { return s == SystemKind::kEuler ? "euler" : "shallow"; }

std::string to_string(EcVariant v) {
  switch (v) {
    case EcVariant::kChandrashekar: return "chandrashekar";
    case EcVariant::kRanocha: return "ranocha";
    case EcVariant::kWintermeyer: return "wgwk";
    case EcVariant::kFjordholm: return "fmt";
  }
  return "?";
}

std::string to_string(DissipationMode d) {
  switch (d) {
    case DissipationMode::kNone: return "none";
    case DissipationMode::kRoe: return "roe";
    case DissipationMode::kRusanov: return "rusanov";
    case DissipationMode::kBlend: return "blend";
  }
  return "?";
}

void FluxSpec::validate() const {
  const bool euler_variant =
      variant == EcVariant::kChandrashekar || variant == EcVariant::kRanocha;
  if ((system == SystemKind::kEuler) != euler_variant) {
    throw ConfigError("flux variant '" + to_string(variant) + "' does not belong to system '" +
                      to_string(system) + "'");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("blend alpha must lie in [0,1]");
}

std::string FluxSpec::describe() const {
  std::string s = to_string(system) + "/" + to_string(variant) + "/" + to_string(dissipation);
  if (dissipation == DissipationMode::kBlend) s += "(alpha=" + std::to_string(alpha) + ")";
  return s;
}

namespace {

double avg(double a, double b) { return 0.5 * (a + b); }

void require_dissipation(const FluxSpec& spec) {
  if (spec.dissipation == DissipationMode::kNone) {
    throw UsageError("dissipation matrix requested with dissipation mode 'none'");
  }
}

// Per-entry |Lambda| from Roe-type and Rusanov-type parts.
template <int P>
std::array<double, P> blend_eigenvalues(const FluxSpec& spec, const std::array<double, P>& roe,
                                        double rusanov) {
  std::array<double, P> out{};
  for (int i = 0; i < P; ++i) {
    switch (spec.dissipation) {
      case DissipationMode::kRoe: out[i] = roe[i]; break;
      case DissipationMode::kRusanov: out[i] = rusanov; break;
      case DissipationMode::kBlend:
        out[i] = spec.alpha * rusanov + (1.0 - spec.alpha) * roe[i];
        break;
      case DissipationMode::kNone: out[i] = 0.0; break;
    }
  }
  return out;
}

struct EulerMeans {
  double rho_log, beta_log, rho_avg, beta_avg, p_avg, u2bar;
  Vec3 u, pu;
};

EulerMeans euler_means(const EulerPrimitive& a, const EulerPrimitive& b) {
  EulerMeans m;
  m.rho_log = log_mean(a.rho, b.rho);
  m.beta_log = log_mean(a.beta, b.beta);
  m.rho_avg = avg(a.rho, b.rho);
  m.beta_avg = avg(a.beta, b.beta);
  m.p_avg = avg(a.p, b.p);
  double sq_avg = 0.0;
  double avg_sq = 0.0;
  for (int d = 0; d < 3; ++d) {
    m.u[d] = avg(a.u[d], b.u[d]);
    m.pu[d] = avg(a.p * a.u[d], b.p * b.u[d]);
    sq_avg += m.u[d] * m.u[d];
    avg_sq += avg(a.u[d] * a.u[d], b.u[d] * b.u[d]);
  }
  m.u2bar = 2.0 * sq_avg - avg_sq;
  return m;
}

EulerGas::State euler_static_flux(double gamma, EcVariant variant, const EulerMeans& m, int l) {
  const double mass = m.rho_log * m.u[l];
  EulerGas::State f{};
  f[0] = mass;
  const double p_hat =
      variant == EcVariant::kRanocha ? m.p_avg : m.rho_avg / (2.0 * m.beta_avg);
  for (int k = 0; k < 3; ++k) f[k + 1] = mass * m.u[k];
  f[l + 1] += p_hat;
  const double internal = mass / (2.0 * (gamma - 1.0) * m.beta_log) + 0.5 * mass * m.u2bar;
  if (variant == EcVariant::kRanocha) {
    f[4] = internal + 2.0 * m.p_avg * m.u[l] - m.pu[l];
  } else {
    f[4] = internal + p_hat * m.u[l];
  }
  return f;
}

EulerGas::State euler_state_function(double gamma, const EulerMeans& m) {
  return {m.rho_log, m.rho_log * m.u[0], m.rho_log * m.u[1], m.rho_log * m.u[2],
          m.rho_log / (2.0 * (gamma - 1.0) * m.beta_log) + 0.5 * m.rho_log * m.u2bar};
}

void require_euler_variant(EcVariant v) {
  if (v != EcVariant::kChandrashekar && v != EcVariant::kRanocha)
    throw ConfigError("flux variant '" + to_string(v) + "' is not an Euler flux");
}

void require_shallow_variant(EcVariant v) {
  if (v != EcVariant::kWintermeyer && v != EcVariant::kFjordholm)
    throw ConfigError("flux variant '" + to_string(v) + "' is not a shallow water flux");
}

void require_shallow_dir(int dir) {
  if (dir < 0 || dir > 1) throw UsageError("shallow water direction must be 0 or 1");
}

}  // namespace

// ---- Euler -----------------------------------------------------------------

EulerGas::State static_ec_flux(const EulerGas& gas, EcVariant variant, const EulerGas::State& um,
                               const EulerGas::State& up, int dir) {
  require_euler_variant(variant);
  const EulerMeans m = euler_means(gas.primitive(um), gas.primitive(up));
  return euler_static_flux(gas.gamma(), variant, m, dir);
}

EulerGas::State state_function(const EulerGas& gas, const EulerGas::State& um,
                               const EulerGas::State& up) {
  return euler_state_function(gas.gamma(), euler_means(gas.primitive(um), gas.primitive(up)));
}

EulerGas::State ec_flux(const EulerGas& gas, const FluxSpec& spec, const Vec3& nu_m,
                        const Vec3& nu_p, const EulerGas::State& um, const EulerGas::State& up,
                        int dir) {
  require_euler_variant(spec.variant);
  const EulerMeans m = euler_means(gas.primitive(um), gas.primitive(up));
  EulerGas::State f = euler_static_flux(gas.gamma(), spec.variant, m, dir);
  const EulerGas::State us = euler_state_function(gas.gamma(), m);
  const double nu = avg(nu_m[dir], nu_p[dir]);
  for (int i = 0; i < 5; ++i) f[i] -= nu * us[i];
  return f;
}

EulerGas::State contracted_ec_flux(const EulerGas& gas, EcVariant variant,
                                   const EulerPrimitive& a, const EulerPrimitive& b,
                                   const Vec3& nu_a, const Vec3& nu_b, const Vec3& n) {
  const EulerMeans m = euler_means(a, b);
  const double un = dot(m.u, n);
  const double nun = 0.5 * ((nu_a[0] + nu_b[0]) * n[0] + (nu_a[1] + nu_b[1]) * n[1] +
                            (nu_a[2] + nu_b[2]) * n[2]);
  const double mass = m.rho_log * (un - nun);
  const double internal = 1.0 / (2.0 * (gas.gamma() - 1.0) * m.beta_log) + 0.5 * m.u2bar;
  EulerGas::State f;
  f[0] = mass;
  if (variant == EcVariant::kRanocha) {
    for (int k = 0; k < 3; ++k) f[k + 1] = mass * m.u[k] + m.p_avg * n[k];
    f[4] = mass * internal + 2.0 * m.p_avg * un - dot(m.pu, n);
  } else {
    const double p_hat = m.rho_avg / (2.0 * m.beta_avg);
    for (int k = 0; k < 3; ++k) f[k + 1] = mass * m.u[k] + p_hat * n[k];
    f[4] = mass * internal + p_hat * un;
  }
  return f;
}

Matrix<5> scaled_eigenvectors(const EulerGas& gas, const EulerGas::State& um,
                              const EulerGas::State& up, int dir) {
  const double gamma = gas.gamma();
  const EulerMeans m = euler_means(gas.primitive(um), gas.primitive(up));
  const double c = std::sqrt(gamma * m.rho_avg / (2.0 * m.rho_log * m.beta_avg));
  const double h = gamma / (2.0 * (gamma - 1.0) * m.beta_log) + 0.5 * m.u2bar;
  Matrix<5> r{};
  // Acoustic columns.
  r[0][0] = 1.0;
  r[0][4] = 1.0;
  for (int k = 0; k < 3; ++k) {
    r[k + 1][0] = m.u[k];
    r[k + 1][4] = m.u[k];
  }
  r[dir + 1][0] -= c;
  r[dir + 1][4] += c;
  r[4][0] = h - m.u[dir] * c;
  r[4][4] = h + m.u[dir] * c;
  // Column 1+k is the entropy wave when k == dir, otherwise a shear wave along e_k.
  for (int k = 0; k < 3; ++k) {
    const int col = k + 1;
    if (k == dir) {
      r[0][col] = 1.0;
      for (int j = 0; j < 3; ++j) r[j + 1][col] = m.u[j];
      r[4][col] = 0.5 * m.u2bar;
    } else {
      r[k + 1][col] = 1.0;
      r[4][col] = m.u[k];
    }
  }
  std::array<double, 5> t{};
  t[0] = t[4] = std::sqrt(m.rho_log / (2.0 * gamma));
  for (int k = 0; k < 3; ++k) {
    t[k + 1] = (k == dir) ? std::sqrt((gamma - 1.0) / gamma * m.rho_log)
                          : std::sqrt(m.rho_avg / (2.0 * m.beta_avg));
  }
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r[i][j] *= t[j];
  return r;
}

std::array<double, 5> dissipation_eigenvalues(const EulerGas& gas, const FluxSpec& spec,
                                              const EulerGas::State& um,
                                              const EulerGas::State& up, const Vec3& nu_m,
                                              const Vec3& nu_p, int dir) {
  const double gamma = gas.gamma();
  const EulerPrimitive a = gas.primitive(um);
  const EulerPrimitive b = gas.primitive(up);
  const EulerMeans m = euler_means(a, b);
  const double c = std::sqrt(gamma * m.rho_avg / (2.0 * m.rho_log * m.beta_avg));
  const double rel = m.u[dir] - avg(nu_m[dir], nu_p[dir]);
  const std::array<double, 5> roe{std::abs(rel - c), std::abs(rel), std::abs(rel), std::abs(rel),
                                  std::abs(rel + c)};
  const double rus = std::max(gas.max_wave_speed(um, nu_m, dir), gas.max_wave_speed(up, nu_p, dir));
  return blend_eigenvalues<5>(spec, roe, rus);
}

Matrix<5> dissipation_matrix(const EulerGas& gas, const FluxSpec& spec, const EulerGas::State& um,
                             const EulerGas::State& up, const Vec3& nu_m, const Vec3& nu_p,
                             int dir) {
  require_dissipation(spec);
  return sandwich<5>(scaled_eigenvectors(gas, um, up, dir),
                     dissipation_eigenvalues(gas, spec, um, up, nu_m, nu_p, dir));
}

EulerGas::State es_flux(const EulerGas& gas, const FluxSpec& spec, const Vec3& nu_m,
                        const Vec3& nu_p, const EulerGas::State& um, const EulerGas::State& up,
                        int dir) {
  EulerGas::State f = ec_flux(gas, spec, nu_m, nu_p, um, up, dir);
  if (spec.dissipation == DissipationMode::kNone) return f;
  const auto wm = gas.entropy(um).w;
  const auto wp = gas.entropy(up).w;
  EulerGas::State jump;
  for (int i = 0; i < 5; ++i) jump[i] = wp[i] - wm[i];
  const auto hj = mat_vec<5>(dissipation_matrix(gas, spec, um, up, nu_m, nu_p, dir), jump);
  for (int i = 0; i < 5; ++i) f[i] -= 0.5 * hj[i];
  return f;
}

EulerGas::State contracted_es_flux(const EulerGas& gas, const FluxSpec& spec,
                                   const EulerGas::State& um, const EulerGas::State& up,
                                   const Vec3& nu_m, const Vec3& nu_p, const Vec3& n,
                                   double* entropy_dissipation) {
  const EulerPrimitive a = gas.primitive(um);
  const EulerPrimitive b = gas.primitive(up);
  EulerGas::State f = contracted_ec_flux(gas, spec.variant, a, b, nu_m, nu_p, n);
  if (entropy_dissipation) *entropy_dissipation = 0.0;
  if (spec.dissipation == DissipationMode::kNone) return f;
  const auto wm = gas.entropy(um).w;
  const auto wp = gas.entropy(up).w;
  EulerGas::State jump;
  for (int i = 0; i < 5; ++i) jump[i] = wp[i] - wm[i];
  double diss = 0.0;
  for (int l = 0; l < 3; ++l) {
    if (n[l] == 0.0) continue;
    // The Cartesian dissipation acts on the jump taken along increasing x_l. The face jump
    // runs along n, so components with n_l < 0 see the reversed jump: the weight is |n_l|.
    const double wl = std::abs(n[l]);
    const Matrix<5> r = scaled_eigenvectors(gas, um, up, l);
    const auto lam = dissipation_eigenvalues(gas, spec, um, up, nu_m, nu_p, l);
    std::array<double, 5> proj{};
    for (int k = 0; k < 5; ++k) {
      double s = 0.0;
      for (int i = 0; i < 5; ++i) s += r[i][k] * jump[i];
      proj[k] = s;
    }
    for (int i = 0; i < 5; ++i) {
      double s = 0.0;
      for (int k = 0; k < 5; ++k) s += r[i][k] * lam[k] * proj[k];
      f[i] -= 0.5 * wl * s;
    }
    for (int k = 0; k < 5; ++k) diss += 0.5 * wl * lam[k] * proj[k] * proj[k];
  }
  if (entropy_dissipation) *entropy_dissipation = diss;
  return f;
}

// ---- Shallow water ---------------------------------------------------------

namespace {

struct ShallowMeans {
  double h, h2, c;
  std::array<double, 2> u, hu;
};

ShallowMeans shallow_means(const ShallowWater& sw, const ShallowWater::State& um,
                           const ShallowWater::State& up) {
  const double hm = sw.height(um);
  const double hp = sw.height(up);
  ShallowMeans m;
  m.h = avg(hm, hp);
  m.h2 = avg(hm * hm, hp * hp);
  m.c = std::sqrt(sw.gravity() * m.h);
  for (int k = 0; k < 2; ++k) {
    m.u[k] = avg(um[k + 1] / hm, up[k + 1] / hp);
    m.hu[k] = avg(um[k + 1], up[k + 1]);
  }
  return m;
}

}  // namespace

ShallowWater::State static_ec_flux(const ShallowWater& sw, EcVariant variant,
                                   const ShallowWater::State& um, const ShallowWater::State& up,
                                   int dir) {
  require_shallow_variant(variant);
  require_shallow_dir(dir);
  const ShallowMeans m = shallow_means(sw, um, up);
  const double g = sw.gravity();
  ShallowWater::State f{};
  if (variant == EcVariant::kWintermeyer) {
    f[0] = m.hu[dir];
    f[1] = m.hu[dir] * m.u[0];
    f[2] = m.hu[dir] * m.u[1];
    f[dir + 1] += g * m.h * m.h - 0.5 * g * m.h2;
  } else {
    const double mass = m.h * m.u[dir];
    f[0] = mass;
    f[1] = mass * m.u[0];
    f[2] = mass * m.u[1];
    f[dir + 1] += 0.5 * g * m.h2;
  }
  return f;
}

ShallowWater::State state_function(const ShallowWater& sw, const ShallowWater::State& um,
                                   const ShallowWater::State& up) {
  const ShallowMeans m = shallow_means(sw, um, up);
  return {m.h, m.h * m.u[0], m.h * m.u[1]};
}

ShallowWater::State ec_flux(const ShallowWater& sw, const FluxSpec& spec, const Vec3& nu_m,
                            const Vec3& nu_p, const ShallowWater::State& um,
                            const ShallowWater::State& up, int dir) {
  ShallowWater::State f = static_ec_flux(sw, spec.variant, um, up, dir);
  const ShallowWater::State us = state_function(sw, um, up);
  const double nu = avg(nu_m[dir], nu_p[dir]);
  for (int i = 0; i < 3; ++i) f[i] -= nu * us[i];
  return f;
}

Matrix<3> scaled_eigenvectors(const ShallowWater& sw, const ShallowWater::State& um,
                              const ShallowWater::State& up, int dir) {
  require_shallow_dir(dir);
  const ShallowMeans m = shallow_means(sw, um, up);
  Matrix<3> r{};
  r[0][0] = 1.0;
  r[0][2] = 1.0;
  for (int k = 0; k < 2; ++k) {
    r[k + 1][0] = m.u[k];
    r[k + 1][2] = m.u[k];
  }
  r[dir + 1][0] -= m.c;
  r[dir + 1][2] += m.c;
  // Shear column: unit entry in the transverse momentum.
  r[2 - dir][1] = 1.0;
  const double t_outer = 1.0 / std::sqrt(2.0 * sw.gravity());
  const std::array<double, 3> t{t_outer, std::sqrt(m.h), t_outer};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] *= t[j];
  return r;
}

std::array<double, 3> dissipation_eigenvalues(const ShallowWater& sw, const FluxSpec& spec,
                                              const ShallowWater::State& um,
                                              const ShallowWater::State& up, const Vec3& nu_m,
                                              const Vec3& nu_p, int dir) {
  require_shallow_dir(dir);
  const ShallowMeans m = shallow_means(sw, um, up);
  const double rel = m.u[dir] - avg(nu_m[dir], nu_p[dir]);
  const std::array<double, 3> roe{std::abs(rel - m.c), std::abs(rel), std::abs(rel + m.c)};
  const double rus = std::max(sw.max_wave_speed(um, nu_m, dir), sw.max_wave_speed(up, nu_p, dir));
  return blend_eigenvalues<3>(spec, roe, rus);
}

Matrix<3> dissipation_matrix(const ShallowWater& sw, const FluxSpec& spec,
                             const ShallowWater::State& um, const ShallowWater::State& up,
                             const Vec3& nu_m, const Vec3& nu_p, int dir) {
  require_dissipation(spec);
  return sandwich<3>(scaled_eigenvectors(sw, um, up, dir),
                     dissipation_eigenvalues(sw, spec, um, up, nu_m, nu_p, dir));
}

ShallowWater::State es_flux(const ShallowWater& sw, const FluxSpec& spec, const Vec3& nu_m,
                            const Vec3& nu_p, const ShallowWater::State& um,
                            const ShallowWater::State& up, int dir) {
  ShallowWater::State f = ec_flux(sw, spec, nu_m, nu_p, um, up, dir);
  if (spec.dissipation == DissipationMode::kNone) return f;
  const auto wm = sw.entropy(um).w;
  const auto wp = sw.entropy(up).w;
  ShallowWater::State jump;
  for (int i = 0; i < 3; ++i) jump[i] = wp[i] - wm[i];
  const auto hj = mat_vec<3>(dissipation_matrix(sw, spec, um, up, nu_m, nu_p, dir), jump);
  for (int i = 0; i < 3; ++i) f[i] -= 0.5 * hj[i];
  return f;
}

// ---- Sampling and verification ---------------------------------------------

EulerGas::State sample_state(const EulerGas& gas, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::uniform_real_distribution<double> vel(-5.0 / std::sqrt(3.0), 5.0 / std::sqrt(3.0));
  const double rho = pos(rng);
  const Vec3 u{vel(rng), vel(rng), vel(rng)};
  const double p = pos(rng);
  return gas.conserved(rho, u, p);
}

ShallowWater::State sample_state(const ShallowWater& sw, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::uniform_real_distribution<double> vel(-5.0 / std::sqrt(2.0), 5.0 / std::sqrt(2.0));
  const double h = pos(rng);
  const double u1 = vel(rng);
  const double u2 = vel(rng);
  return sw.conserved(h, u1, u2);
}

Vec3 sample_velocity(int dims, std::mt19937_64& rng) {
  const double bound = 5.0 / std::sqrt(static_cast<double>(dims));
  std::uniform_real_distribution<double> vel(-bound, bound);
  Vec3 v{0.0, 0.0, 0.0};
  for (int d = 0; d < dims; ++d) v[d] = vel(rng);
  return v;
}

namespace {

// d u / d w at a state via complex-step differentiation of the inverse map.
template <class System, class InverseMap>
Matrix<System::kVars> jacobian_u_of_w(const typename System::State& w, InverseMap inverse) {
  constexpr int P = System::kVars;
  constexpr double step = 1e-30;
  Matrix<P> jac{};
  for (int j = 0; j < P; ++j) {
    std::array<std::complex<double>, P> wc;
    for (int i = 0; i < P; ++i) wc[i] = w[i];
    wc[j] += std::complex<double>(0.0, step);
    const auto uc = inverse(wc);
    for (int i = 0; i < P; ++i) jac[i][j] = uc[i].imag() / step;
  }
  return jac;
}

template <class System>
FluxCheckReport run_check(const System& sys, const FluxSpec& spec, int samples,
                          std::uint64_t seed) {
  constexpr int P = System::kVars;
  std::mt19937_64 rng(seed);
  FluxCheckReport rep;
  rep.variant = to_string(spec.variant);
  rep.samples = samples;
  rep.spd_min_eig = 1.0;
  FluxSpec diss = spec;
  if (diss.dissipation == DissipationMode::kNone) diss.dissipation = DissipationMode::kRoe;
  for (int s = 0; s < samples; ++s) {
    const auto um = sample_state(sys, rng);
    const auto up = sample_state(sys, rng);
    const Vec3 nm = sample_velocity(System::kDims, rng);
    const Vec3 np = sample_velocity(System::kDims, rng);
    const auto em = sys.entropy(um);
    const auto ep = sys.entropy(up);
    for (int l = 0; l < System::kDims; ++l) {
      const auto g = ec_flux(sys, spec, nm, np, um, up, l);
      const auto g_swapped = ec_flux(sys, spec, np, nm, up, um, l);
      double lhs = 0.0;
      double scale = 0.0;
      for (int i = 0; i < P; ++i) {
        const double term = (ep.w[i] - em.w[i]) * g[i];
        lhs += term;
        scale += std::abs(term);
        rep.symmetry_residual = std::max(rep.symmetry_residual, std::abs(g[i] - g_swapped[i]));
      }
      const double jpsi = ep.psi[l] - em.psi[l];
      const double nphi = 0.5 * (nm[l] + np[l]) * (ep.phi - em.phi);
      scale += std::abs(jpsi) + std::abs(nphi);
      const double res = std::abs(lhs - jpsi + nphi) / std::max(1.0, scale);
      rep.tadmor_residual = std::max(rep.tadmor_residual, res);

      const auto h = dissipation_matrix(sys, diss, um, up, nm, np, l);
      Eigen::Matrix<double, P, P> hm;
      for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) hm(i, j) = 0.5 * (h[i][j] + h[j][i]);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, P, P>> solver(hm,
                                                                        Eigen::EigenvaluesOnly);
      const double norm = std::max(hm.cwiseAbs().maxCoeff(), 1e-300);
      rep.spd_min_eig = std::min(rep.spd_min_eig, solver.eigenvalues().minCoeff() / norm);

      const auto r = scaled_eigenvectors(sys, um, um, l);
      std::array<double, P> ones;
      ones.fill(1.0);
      const auto rrt = sandwich<P>(r, ones);
      Matrix<P> dudw;
      if constexpr (P == 5) {
        dudw = jacobian_u_of_w<System>(em.w, [&](const auto& wc) {
          return euler_state_from_entropy_variables(sys.gamma(), wc);
        });
      } else {
        dudw = jacobian_u_of_w<System>(em.w, [&](const auto& wc) {
          return shallow_state_from_entropy_variables(sys.gravity(), wc);
        });
      }
      double diff = 0.0;
      double mag = 0.0;
      for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
          diff = std::max(diff, std::abs(rrt[i][j] - dudw[i][j]));
          mag = std::max(mag, std::abs(dudw[i][j]));
        }
      rep.eigen_scaling_residual = std::max(rep.eigen_scaling_residual, diff / mag);
    }
  }
  return rep;
}

}  // namespace

FluxCheckReport check_tadmor(const FluxSpec& spec, int samples, std::uint64_t seed, double gamma,
                             double g) {
  spec.validate();
  if (samples < 1) throw UsageError("check_tadmor needs at least one sample");
  if (spec.system == SystemKind::kEuler) return run_check(EulerGas(gamma), spec, samples, seed);
  return run_check(ShallowWater(g), spec, samples, seed);
}

}  // namespace alesolve
