#pragma once

#include <array>
#include <cmath>

namespace alesolve {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <int P>
struct EntropyBundle {
  double s = 0.0;
  std::array<double, P> w{};
  double phi = 0.0;
  Vec3 psi{};
};

// Logarithmic mean with the Ismail-Roe series branch near equal arguments.
// Arguments are ordered internally so the result is exactly symmetric.
double log_mean(double a_minus, double a_plus);

struct EulerPrimitive {
  double rho = 0.0;
  Vec3 u{};
  double p = 0.0;
  double beta = 0.0;
};

// Compressible Euler equations for an ideal gas.
class EulerGas {
 public:
  static constexpr int kVars = 5;
  static constexpr int kDims = 3;
  using State = std::array<double, kVars>;

  explicit EulerGas(double gamma = 1.4);

  double gamma() const { return gamma_; }

  EulerPrimitive primitive(const State& u) const;
  State conserved(double rho, const Vec3& vel, double p) const;
  State physical_flux(const State& u, int dir) const;
  EntropyBundle<kVars> entropy(const State& u) const;
  double max_wave_speed(const State& u, const Vec3& nu, int dir) const;
  double sound_speed(const State& u) const;
  // Entropy flux f^s_l, used by the potential identities.
  double entropy_flux(const State& u, int dir) const;

 private:
  double gamma_;
};

// Shallow water equations without bottom topography (two horizontal directions).
class ShallowWater {
 public:
  static constexpr int kVars = 3;
  static constexpr int kDims = 2;
  using State = std::array<double, kVars>;

  explicit ShallowWater(double g = 1.0);

  double gravity() const { return g_; }

  double height(const State& u) const;
  State conserved(double h, double u1, double u2) const;
  State physical_flux(const State& u, int dir) const;
  EntropyBundle<kVars> entropy(const State& u) const;
  double max_wave_speed(const State& u, const Vec3& nu, int dir) const;
  double entropy_flux(const State& u, int dir) const;

 private:
  double g_;
};

// Inverse entropy-variable maps u(w). Templated so callers can differentiate them with
// complex-step perturbations.
template <class T>
std::array<T, 5> euler_state_from_entropy_variables(double gamma, const std::array<T, 5>& w) {
  using std::log;
  using std::exp;
  const T beta = -w[4] / 2.0;
  const T u1 = w[1] / (2.0 * beta);
  const T u2 = w[2] / (2.0 * beta);
  const T u3 = w[3] / (2.0 * beta);
  const T v2 = u1 * u1 + u2 * u2 + u3 * u3;
  const T varsigma = gamma - (gamma - 1.0) * (w[0] + beta * v2);
  const T rho = exp((varsigma + log(2.0 * beta)) / (1.0 - gamma));
  const T p = rho / (2.0 * beta);
  return {rho, rho * u1, rho * u2, rho * u3, p / (gamma - 1.0) + 0.5 * rho * v2};
}

template <class T>
std::array<T, 3> shallow_state_from_entropy_variables(double g, const std::array<T, 3>& w) {
  const T h = (w[0] + 0.5 * (w[1] * w[1] + w[2] * w[2])) / g;
  return {h, h * w[1], h * w[2]};
}

}  // namespace alesolve
