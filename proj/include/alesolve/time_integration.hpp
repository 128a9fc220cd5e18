#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "alesolve/errors.hpp"

namespace alesolve {

// Explicit Runge-Kutta method in Butcher form.
struct RkScheme {
  std::string name;
  std::vector<std::vector<double>> a;  // strictly lower triangular
  std::vector<double> b;
  std::vector<double> c;

  int stages() const { return static_cast<int>(b.size()); }
  void validate() const;

  // Five-stage fourth-order low-storage method of Carpenter and Kennedy, converted
  // from its 2N-storage coefficients.
  static RkScheme carpenter_kennedy_rk4();
  static RkScheme classical_rk4();
  static RkScheme by_name(const std::string& name);
};

// Right-hand side of the ALE system at one stage: dJ/dt = v and d(J u)/dt = g, nodewise.
template <class State>
struct AleRhs {
  std::vector<double> v;
  std::vector<State> g;
};

// One explicit ALE step with the Jacobian advanced first and the conserved update
// written against the step-start state:
//   J^(s)   = J^n + dt sum_k a_sk V^(k)
//   U^(s)   = U^n + dt / J^(s) sum_k a_sk (G^(k) - V^(k) U^n)
// evaluate(t_stage, J_stage, U_stage) must return the stage right-hand side.
template <class State, class Evaluate>
void ale_rk_step(const RkScheme& scheme, double t, double dt, std::vector<double>& jac,
                 std::vector<State>& u, Evaluate&& evaluate) {
  constexpr int P = std::tuple_size<State>::value;
  const int s = scheme.stages();
  const std::size_t n = u.size();
  const std::vector<double> j0 = jac;
  const std::vector<State> u0 = u;
  std::vector<AleRhs<State>> stages;
  stages.reserve(s);
  std::vector<double> js(n);
  std::vector<State> us(n);
  auto combine = [&](const std::vector<double>& coef, std::vector<double>& jout,
                     std::vector<State>& uout, double t_eval) {
    for (std::size_t q = 0; q < n; ++q) {
      double jv = j0[q];
      State acc{};
      for (std::size_t k = 0; k < stages.size(); ++k) {
        const double w = coef[k];
        if (w == 0.0) continue;
        const double vk = stages[k].v[q];
        jv += dt * w * vk;
        for (int i = 0; i < P; ++i) acc[i] += w * (stages[k].g[q][i] - vk * u0[q][i]);
      }
      if (!(jv > 0.0)) {
        std::ostringstream os;
        os << "nonpositive stage Jacobian " << jv << " at node " << q << " near t=" << t_eval
           << "; reduce the time step";
        throw TimeStepError(os.str());
      }
      jout[q] = jv;
      for (int i = 0; i < P; ++i) uout[q][i] = u0[q][i] + dt / jv * acc[i];
    }
  };
  for (int st = 0; st < s; ++st) {
    const double ts = t + scheme.c[st] * dt;
    if (st == 0) {
      js = j0;
      us = u0;
    } else {
      combine(scheme.a[st], js, us, ts);
    }
    stages.push_back(evaluate(ts, js, us));
  }
  combine(scheme.b, jac, u, t + dt);
}

}  // namespace alesolve
