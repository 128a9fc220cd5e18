#include "alesolve/physics.hpp"

#include <algorithm>
#include <sstream>

#include "alesolve/errors.hpp"

namespace alesolve {

double log_mean(double a_minus, double a_plus) {
  if (!(a_minus > 0.0) || !(a_plus > 0.0)) {
    std::ostringstream os;
    os << "log_mean requires positive arguments, got " << a_minus << ", " << a_plus;
    throw StateError(os.str());
  }
  const double lo = std::min(a_minus, a_plus);
  const double hi = std::max(a_minus, a_plus);
  const double zeta = lo / hi;
  const double f = (zeta - 1.0) / (zeta + 1.0);
  const double u = f * f;
  double big_f;
  if ((zeta - 1.0) * (zeta - 1.0) < 1e-4) {
    big_f = 1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0;
  } else {
    big_f = std::log(zeta) / (2.0 * f);
  }
  return (lo + hi) / (2.0 * big_f);
}

EulerGas::EulerGas(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
}

EulerPrimitive EulerGas::primitive(const State& u) const {
  EulerPrimitive q;
  q.rho = u[0];
  if (!(q.rho > 0.0)) {
    std::ostringstream os;
    os << "nonpositive density " << q.rho;
    throw StateError(os.str());
  }
  for (int d = 0; d < 3; ++d) q.u[d] = u[d + 1] / q.rho;
  q.p = (gamma_ - 1.0) * (u[4] - 0.5 * q.rho * dot(q.u, q.u));
  if (!(q.p > 0.0)) {
    std::ostringstream os;
    os << "nonpositive pressure " << q.p;
    throw StateError(os.str());
  }
  q.beta = q.rho / (2.0 * q.p);
  return q;
}

EulerGas::State EulerGas::conserved(double rho, const Vec3& vel, double p) const {
  return {rho, rho * vel[0], rho * vel[1], rho * vel[2],
          p / (gamma_ - 1.0) + 0.5 * rho * dot(vel, vel)};
}

EulerGas::State EulerGas::physical_flux(const State& u, int dir) const {
  const EulerPrimitive q = primitive(u);
  const double ul = q.u[dir];
  State f{u[0] * ul, u[1] * ul, u[2] * ul, u[3] * ul, (u[4] + q.p) * ul};
  f[dir + 1] += q.p;
  return f;
}

EntropyBundle<5> EulerGas::entropy(const State& u) const {
  const EulerPrimitive q = primitive(u);
  EntropyBundle<5> e;
  const double varsigma = std::log(q.p) - gamma_ * std::log(q.rho);
  e.s = -q.rho * varsigma / (gamma_ - 1.0);
  e.w = {(gamma_ - varsigma) / (gamma_ - 1.0) - q.beta * dot(q.u, q.u), 2.0 * q.beta * q.u[0],
         2.0 * q.beta * q.u[1], 2.0 * q.beta * q.u[2], -2.0 * q.beta};
  e.phi = q.rho;
  e.psi = {q.rho * q.u[0], q.rho * q.u[1], q.rho * q.u[2]};
  return e;
}

double EulerGas::entropy_flux(const State& u, int dir) const {
  return entropy(u).s * primitive(u).u[dir];
}

double EulerGas::sound_speed(const State& u) const {
  const EulerPrimitive q = primitive(u);
  return std::sqrt(gamma_ * q.p / q.rho);
}

double EulerGas::max_wave_speed(const State& u, const Vec3& nu, int dir) const {
  const EulerPrimitive q = primitive(u);
  const double c = std::sqrt(gamma_ * q.p / q.rho);
  const double a = q.u[dir] - nu[dir];
  return std::abs(a) + c;
}

ShallowWater::ShallowWater(double g) : g_(g) {
  if (!(g > 0.0)) throw ConfigError("gravitational constant must be positive");
}

double ShallowWater::height(const State& u) const {
  if (!(u[0] > 0.0)) {
    std::ostringstream os;
    os << "nonpositive water height " << u[0];
    throw StateError(os.str());
  }
  return u[0];
}

ShallowWater::State ShallowWater::conserved(double h, double u1, double u2) const {
  return {h, h * u1, h * u2};
}

ShallowWater::State ShallowWater::physical_flux(const State& u, int dir) const {
  const double h = height(u);
  const double ul = u[dir + 1] / h;
  State f{u[0] * ul, u[1] * ul, u[2] * ul};
  f[dir + 1] += 0.5 * g_ * h * h;
  return f;
}

EntropyBundle<3> ShallowWater::entropy(const State& u) const {
  const double h = height(u);
  const double u1 = u[1] / h;
  const double u2 = u[2] / h;
  const double v2 = u1 * u1 + u2 * u2;
  EntropyBundle<3> e;
  e.s = 0.5 * h * v2 + 0.5 * g_ * h * h;
  e.w = {g_ * h - 0.5 * v2, u1, u2};
  e.phi = 0.5 * g_ * h * h;
  e.psi = {e.phi * u1, e.phi * u2, 0.0};
  return e;
}

double ShallowWater::entropy_flux(const State& u, int dir) const {
  const double h = height(u);
  const double u1 = u[1] / h;
  const double u2 = u[2] / h;
  const double ul = u[dir + 1] / h;
  return 0.5 * h * ul * (u1 * u1 + u2 * u2) + g_ * h * h * ul;
}

double ShallowWater::max_wave_speed(const State& u, const Vec3& nu, int dir) const {
  const double h = height(u);
  return std::abs(u[dir + 1] / h - nu[dir]) + std::sqrt(g_ * h);
}

}  // namespace alesolve
