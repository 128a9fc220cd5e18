#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "alesolve/errors.hpp"
#include "alesolve/fluxes.hpp"
#include "alesolve/mesh.hpp"
#include "alesolve/time_integration.hpp"

namespace alesolve {

// Periodic 1D mesh with K cells on [x_min, x_max]. Node k moves by
// A L sin(2 pi t) sin(2 pi x_k(0) / L) for the sinusoidal kind.
struct FvMesh1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int cells = 16;
  double amplitude = 0.05;
  MotionKind kind = MotionKind::kSinusoidal;

  double length() const { return x_max - x_min; }
  double initial_node(int k) const { return x_min + length() * k / cells; }
  double node_position(int k, double t) const;
  double node_velocity(int k, double t) const;
  void validate() const;
};

template <class System>
struct FvState {
  std::vector<typename System::State> u;
  std::vector<double> jac;  // half the cell width: each cell maps onto [-1, 1]
  double t = 0.0;
};

// Moving-mesh finite volume scheme with simultaneous integration of the cell Jacobians.
template <class System>
class FvSolver {
 public:
  using State = typename System::State;
  static constexpr int P = System::kVars;

  FvSolver(System sys, FluxSpec spec, FvMesh1D mesh)
      : sys_(std::move(sys)), spec_(spec), mesh_(mesh) {
    spec_.validate();
    mesh_.validate();
  }

  const System& system() const { return sys_; }
  const FvMesh1D& mesh() const { return mesh_; }

  // Cell values sampled at the initial cell centers; J from the initial geometry.
  FvState<System> initial_state(const std::function<State(double)>& f) const {
    FvState<System> s;
    s.u.resize(mesh_.cells);
    s.jac.resize(mesh_.cells);
    for (int k = 0; k < mesh_.cells; ++k) {
      const double xl = mesh_.node_position(k, 0.0);
      const double xr = mesh_.node_position(k + 1, 0.0);
      s.u[k] = f(0.5 * (xl + xr));
      s.jac[k] = 0.5 * (xr - xl);
    }
    return s;
  }

  // Semi-discrete right-hand side. With J = dx/2 the interface differences carry a factor 1/2.
  AleRhs<State> rhs(const std::vector<State>& u, double t) const {
    const int k_cells = mesh_.cells;
    for (int k = 0; k < k_cells; ++k) check_state(u[k], k, t);
    std::vector<double> nu_star(k_cells + 1);
    std::vector<State> g_star(k_cells + 1);
    for (int k = 0; k <= k_cells; ++k) {
      // Interface k sits between cell k-1 and cell k (periodic).
      const State& ul = u[(k - 1 + k_cells) % k_cells];
      const State& ur = u[k % k_cells];
      const double nu = mesh_.node_velocity(k, t);
      const Vec3 nv{nu, 0.0, 0.0};
      nu_star[k] = nu;
      g_star[k] = es_flux(sys_, spec_, nv, nv, ul, ur, 0);
    }
    AleRhs<State> r;
    r.v.resize(k_cells);
    r.g.resize(k_cells);
    for (int k = 0; k < k_cells; ++k) {
      r.v[k] = 0.5 * (nu_star[k + 1] - nu_star[k]);
      for (int i = 0; i < P; ++i) r.g[k][i] = -0.5 * (g_star[k + 1][i] - g_star[k][i]);
    }
    return r;
  }

  void rk_step(FvState<System>& s, const RkScheme& scheme, double dt) const {
    if (!(dt > 0.0)) throw UsageError("time step must be positive");
    ale_rk_step<State>(scheme, s.t, dt, s.jac, s.u,
                       [&](double ts, const std::vector<double>&, const std::vector<State>& us) {
                         return rhs(us, ts);
                       });
    s.t += dt;
  }

  double total_entropy(const FvState<System>& s) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) sum += s.jac[k] * sys_.entropy(s.u[k]).s;
    return sum;
  }

  // d/dt of total_entropy implied by the semi-discrete scheme:
  // sum_k w_k^T d(J u)_k/dt - phi_k dJ_k/dt.
  double entropy_rate(const std::vector<State>& u, double t) const {
    const AleRhs<State> r = rhs(u, t);
    double sum = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const auto e = sys_.entropy(u[k]);
      double wg = 0.0;
      for (int i = 0; i < P; ++i) wg += e.w[i] * r.g[k][i];
      sum += wg - e.phi * r.v[k];
    }
    return sum;
  }

  double total_mass(const FvState<System>& s) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) sum += s.jac[k] * s.u[k][0];
    return sum;
  }

  // Time step from a CFL number on the current geometry.
  double cfl_dt(const FvState<System>& s, double cfl) const {
    double dt = std::numeric_limits<double>::infinity();
    for (int k = 0; k < mesh_.cells; ++k) {
      const Vec3 nu{0.5 * (mesh_.node_velocity(k, s.t) + mesh_.node_velocity(k + 1, s.t)), 0.0,
                    0.0};
      const double lam = sys_.max_wave_speed(s.u[k], nu, 0);
      if (lam > 0.0) dt = std::min(dt, cfl * 2.0 * s.jac[k] / lam);
    }
    return dt;
  }

 private:
  void check_state(const State& u, int k, double t) const {
    try {
      (void)sys_.entropy(u);
    } catch (const StateError& e) {
      std::ostringstream os;
      os << e.what() << " in cell " << k << " at t=" << t;
      throw StateError(os.str());
    }
  }

  System sys_;
  FluxSpec spec_;
  FvMesh1D mesh_;
};

}  // namespace alesolve
