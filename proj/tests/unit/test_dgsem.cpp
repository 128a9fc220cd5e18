#include <cmath>
#include <numbers>
#include <random>

#include "alesolve/diagnostics.hpp"
#include "alesolve/dgsem.hpp"
#include "alesolve/errors.hpp"
#include "doctest.h"

using namespace alesolve;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MeshMotion box(double lo, double hi, MotionKind kind, double amp = 0.05) {
  MeshMotion m;
  m.x_min = lo;
  m.x_max = hi;
  m.kind = kind;
  m.amplitude = amp;
  return m;
}

const FluxSpec kEc{SystemKind::kEuler, EcVariant::kChandrashekar, DissipationMode::kNone, 0.0};
const FluxSpec kEs{SystemKind::kEuler, EcVariant::kChandrashekar, DissipationMode::kRoe, 0.0};

}  // namespace

TEST_CASE("CFL time step on unit cubes") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 2.0, MotionKind::kStatic), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  const auto f = solver.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; });
  CHECK(solver.compute_dt(f, 0.5) == doctest::Approx(0.5 / (7 * std::sqrt(1.4))).epsilon(1e-14));
  CHECK(solver.compute_dt(f, 1.0) == doctest::Approx(2 * solver.compute_dt(f, 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(solver.compute_dt(f, 1.5), ConfigError);
  // Halving the element size halves the step.
  const MovingMesh fine({4, 4, 4}, box(0.0, 2.0, MotionKind::kStatic), 3);
  const DgSolver s2(fine, EulerGas(1.4), kEc);
  const auto f2 = s2.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; });
  CHECK(s2.compute_dt(f2, 0.5) == doctest::Approx(0.5 * solver.compute_dt(f, 0.5)).epsilon(1e-14));
}

TEST_CASE("static mesh: no GCL source and constant J") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 1.0, MotionKind::kStatic), 2);
  const DgSolver solver(mesh, EulerGas(1.4), kEs);
  const auto snap = solver.snapshot(0.3);
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (double v : solver.gcl_rhs(snap, e)) CHECK(v == 0.0);
}

TEST_CASE("constant states: G equals V C on the distorted moving mesh") {
  const MovingMesh mesh({3, 3, 3}, box(0.0, kTwoPi, MotionKind::kSinusoidal), 3);
  const EulerState c{1.0, 0.3, 0.0, 0.0, 17.0};
  for (const FluxSpec& spec : {kEc, kEs}) {
    const DgSolver solver(mesh, EulerGas(1.4), spec);
    const auto f = solver.initial_state([&](const Vec3&) { return c; }, 0.13);
    const auto snap = solver.snapshot(0.13);
    const auto rhs = solver.evaluate(snap, f.u, f.jac);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.u.size(); ++i)
      for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(rhs.g[i][k] - rhs.v[i] * c[k]));
    CHECK(worst <= 1e-12 * 17.0 * 10);
  }
}

TEST_CASE("free stream is preserved over 100 steps with either RK scheme") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, kTwoPi, MotionKind::kSinusoidal), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEs);
  const EulerState c{1.0, 0.3, 0.0, 0.0, 17.0};
  // The five-stage scheme has the larger stability region.
  for (const auto& [rk, cfl] : {std::pair{RkScheme::carpenter_kennedy_rk4(), 0.9},
                                std::pair{RkScheme::classical_rk4(), 0.5}}) {
    auto f = solver.initial_state([&](const Vec3&) { return c; });
    int n = 0;
    try {
      for (; n < 100; ++n) solver.rk_step(f, rk, solver.compute_dt(f, cfl));
    } catch (const std::exception& e) {
      FAIL(rk.name << " step " << n << ": " << std::string(e.what()));
    }
    double dev = 0.0;
    for (const auto& u : f.u)
      for (int k = 0; k < 5; ++k) dev = std::max(dev, std::abs(u[k] - c[k]));
    CHECK(dev <= 1e-11);
  }
}

TEST_CASE("results do not depend on the worker count") {
  const MovingMesh mesh({2, 3, 2}, box(0.0, kTwoPi, MotionKind::kSinusoidal), 3);
  auto run = [&](int workers) {
    const DgSolver solver(mesh, EulerGas(1.4), kEs, DgOptions{workers, {}});
    auto f = solver.initial_state([](const Vec3& x) { return tgv_initial(x); });
    for (int n = 0; n < 3; ++n) solver.rk_step(f, RkScheme::carpenter_kennedy_rk4(), 0.01);
    return f;
  };
  const auto a = run(1);
  const auto b = run(3);
  CHECK(a.u == b.u);
  CHECK(a.jac == b.jac);
}

TEST_CASE("mass and momentum are conserved; EC entropy is nearly constant") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, kTwoPi, MotionKind::kSinusoidal), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  auto f = solver.initial_state([](const Vec3& x) { return tgv_initial(x); });
  const auto t0 = conserved_totals(f, mesh.ops());
  const auto s0 = nodal_entropy(f, mesh.ops(), solver.gas());
  const auto f0 = f;
  for (int n = 0; n < 20; ++n) solver.rk_step(f, RkScheme::carpenter_kennedy_rk4(), 0.005);
  const auto t1 = conserved_totals(f, mesh.ops());
  for (int k = 0; k < 5; ++k) CHECK(std::abs(t1[k] - t0[k]) <= 1e-11 * std::max(1.0, std::abs(t0[k])));
  // Only the time discretization changes entropy: halving dt shrinks it by at least 2^3.5.
  const double coarse = std::abs(entropy_change(f, mesh.ops(), solver.gas(), s0));
  auto g = f0;
  for (int n = 0; n < 40; ++n) solver.rk_step(g, RkScheme::carpenter_kennedy_rk4(), 0.0025);
  const double fine = std::abs(entropy_change(g, mesh.ops(), solver.gas(), s0));
  CHECK(coarse <= 1e-8);
  CHECK(fine * 11.3 <= coarse);
}

TEST_CASE("semi-discrete entropy rate: zero for EC, negative for ES") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 2.0, MotionKind::kSinusoidal), 3);
  std::mt19937_64 rng(9);
  for (const FluxSpec& spec : {kEc, kEs}) {
    const DgSolver solver(mesh, EulerGas(1.4), spec);
    auto f = solver.initial_state([](const Vec3& x) { return tgv_initial(x, 1.4, 0.5); }, 0.2);
    for (auto& u : f.u) {
      const auto p = solver.gas().primitive(u);
      u = solver.gas().conserved(p.rho * (1 + 0.1 * std::uniform_real_distribution<>(-1, 1)(rng)),
                                 p.u, p.p);
    }
    const auto snap = solver.snapshot(0.2);
    const auto rhs = solver.evaluate(snap, f.u, f.jac);
    const auto w3 = volume_weights(mesh.ops());
    CompensatedSum rate;
    for (int e = 0; e < mesh.num_elements(); ++e)
      for (int q = 0; q < mesh.nodes_per_element(); ++q) {
        const auto idx = f.index(e, q);
        const auto en = solver.gas().entropy(f.u[idx]);
        double wg = 0.0;
        for (int k = 0; k < 5; ++k) wg += en.w[k] * rhs.g[idx][k];
        rate.add(w3[q] * (wg - en.phi * rhs.v[idx]));
      }
    if (spec.dissipation == DissipationMode::kNone)
      CHECK(std::abs(rate.value()) <= 1e-10);
    else
      CHECK(rate.value() < -1e-6);
  }
}

TEST_CASE("evolved J converges to the geometric J at fourth order in time") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 1.0, MotionKind::kSinusoidal), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  const EulerState c{1.0, 0.0, 0.0, 0.0, 2.5};
  // Semi-discrete reference: a very fine step.
  auto evolve = [&](int steps) {
    auto f = solver.initial_state([&](const Vec3&) { return c; });
    for (int n = 0; n < steps; ++n) solver.rk_step(f, RkScheme::carpenter_kennedy_rk4(), 0.5 / steps);
    return f.jac;
  };
  const auto ref = evolve(400);
  auto dist = [&](const std::vector<double>& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - ref[i]));
    return d;
  };
  const double e1 = dist(evolve(10)), e2 = dist(evolve(20));
  CHECK(std::log2(e1 / e2) > 3.5);
  // Close to the geometric Jacobian: the remaining gap is the spatial discretization of the GCL.
  const auto snap = solver.snapshot(0.5);
  double gap = 0.0, scale = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q < mesh.nodes_per_element(); ++q) {
      gap = std::max(gap, std::abs(ref[e * mesh.nodes_per_element() + q] - snap.elements[e].jacobian[q]));
      scale = std::max(scale, snap.elements[e].jacobian[q]);
    }
  MESSAGE("evolved vs geometric J at t=0.5: " << gap << " (J scale " << scale << ")");
  CHECK(gap <= 1e-2 * scale);
}

TEST_CASE("admissibility failures name the element") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 1.0, MotionKind::kStatic), 2);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  auto f = solver.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; });
  f.u[f.index(5, 3)][4] = -1.0;
  try {
    solver.rk_step(f, RkScheme::classical_rk4(), 0.01);
    FAIL("expected StateError");
  } catch (const StateError& e) {
    CHECK(std::string(e.what()).find("element 5") != std::string::npos);
  }
  const FluxSpec shallow{SystemKind::kShallow, EcVariant::kWintermeyer, DissipationMode::kNone, 0};
  CHECK_THROWS_AS(DgSolver(mesh, EulerGas(1.4), shallow), ConfigError);
}

TEST_CASE("parallel_for propagates the lowest failing index") {
  std::vector<int> hits(50, 0);
  parallel_for(50, 4, [&](int i) { hits[i] = 1; });
  for (int h : hits) CHECK(h == 1);
  try {
    parallel_for(50, 4, [](int i) {
      if (i == 7 || i == 30) throw StateError("bad " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const StateError& e) {
    CHECK(std::string(e.what()) == "bad 7");
  }
}
