#include <cmath>
#include <numbers>
#include <random>

#include "alesolve/diagnostics.hpp"
#include "alesolve/errors.hpp"
#include "doctest.h"

using namespace alesolve;

namespace {

MeshMotion box(double lo, double hi, MotionKind kind) {
  MeshMotion m;
  m.x_min = lo;
  m.x_max = hi;
  m.kind = kind;
  return m;
}

const FluxSpec kEc{SystemKind::kEuler, EcVariant::kChandrashekar, DissipationMode::kNone, 0.0};

}  // namespace

TEST_CASE("compensated summation recovers small addends") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("discrete entropy of simple states") {
  const MovingMesh unit({1, 1, 1}, box(0.0, 1.0, MotionKind::kStatic), 3);
  const DgSolver solver(unit, EulerGas(1.4), kEc);
  // rho = p = 1 gives s = 0.
  auto f = solver.initial_state([](const Vec3&) { return EulerState{1, 0, 0, 0, 2.5}; });
  CHECK(std::abs(discrete_entropy(f, unit.ops(), solver.gas())) <= 1e-15);
  // s = sigma everywhere on a unit volume integrates to sigma.
  const EulerState u{2.0, 0.0, 0.0, 0.0, 3.0 / 0.4};
  const double sigma = solver.gas().entropy(u).s;
  f = solver.initial_state([&](const Vec3&) { return u; });
  CHECK(discrete_entropy(f, unit.ops(), solver.gas()) == doctest::Approx(sigma).epsilon(1e-14));
  const auto tot = conserved_totals(f, unit.ops());
  CHECK(tot[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("TGV entropy sum agrees between loop orders") {
  const MovingMesh mesh({4, 4, 4}, box(0.0, 2 * std::numbers::pi, MotionKind::kSinusoidal), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  const auto f = solver.initial_state([](const Vec3& x) { return tgv_initial(x); }, 0.1);
  const double a = discrete_entropy(f, mesh.ops(), solver.gas());
  const auto w = volume_weights(mesh.ops());
  CompensatedSum rev;
  for (int q = mesh.nodes_per_element() - 1; q >= 0; --q)
    for (int e = mesh.num_elements() - 1; e >= 0; --e)
      rev.add(w[q] * solver.gas().entropy(f.u[f.index(e, q)]).s * f.jac[f.index(e, q)]);
  CHECK(std::abs(a - rev.value()) <= 1e-13 * std::max(1.0, std::abs(a)) * 1e-1 + 1e-13);
  CHECK(tgv_initial({0, 0, 0})[4] ==
        doctest::Approx((1.0 / (1.4 * 0.01) + 6.0 / 16.0) / 0.4).epsilon(1e-14));
}

TEST_CASE("run records and entropy error") {
  RunRecord r;
  CHECK(entropy_error(r, 1.0) == 0.0);
  r.add({0.0, 5.0, {}, std::nullopt});
  CHECK(entropy_error(r, 0.0) == 0.0);
  r.add({0.5, 4.0, {}, std::nullopt});
  r.add({1.0, 3.5, {}, std::nullopt});
  CHECK(entropy_error(r, 1.0) == -1.5);
  CHECK(entropy_error(r, 0.7) == -1.0);
  CHECK_THROWS_AS(r.add({1.0, 0.0, {}, std::nullopt}), UsageError);
  RunRecord d;
  d.add({0.0, 100.0, {}, 0.0});
  d.add({1.0, 100.0, {}, -3e-14});
  CHECK(entropy_error(d, 1.0) == -3e-14);
}

TEST_CASE("error norms") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 2.0, MotionKind::kStatic), 3);
  const DgSolver solver(mesh, EulerGas(1.4), kEc);
  const auto exact = [](const Vec3& x, double) {
    return EulerState{1.0 + x[0], 0, 0, 0, 2.5};
  };
  auto f = solver.initial_state([&](const Vec3& x) { return exact(x, 0.0); });
  const auto snap = solver.snapshot(0.0);
  auto n0 = error_norms(f, snap, mesh.ops(), exact);
  CHECK(n0.l2[0] == 0.0);
  CHECK(n0.linf[0] == 0.0);
  for (auto& u : f.u) u[0] += 1e-3;
  const auto n1 = error_norms(f, snap, mesh.ops(), exact);
  CHECK(n1.l2[0] == doctest::Approx(1e-3 * std::sqrt(8.0)).epsilon(1e-10));
  CHECK(n1.linf[0] == doctest::Approx(1e-3).epsilon(1e-10));
  CHECK(n1.l2[1] == 0.0);
}

TEST_CASE("experimental order of convergence") {
  auto r = eoc({{2, 1e-2}, {4, 1e-3}});
  REQUIRE(r[0]);
  CHECK(*r[0] == doctest::Approx(std::log2(10.0)));
  r = eoc({{2, 1e-2}, {4, 1e-2}});
  CHECK(*r[0] == doctest::Approx(0.0));
  r = eoc({{32, 1.26e-7}, {64, 7.82e-9}});
  CHECK(*r[0] == doctest::Approx(4.01).epsilon(5e-3));
  r = eoc({{2, 1e-2}, {4, 0.0}, {8, 1e-4}});
  CHECK_FALSE(r[0]);
  CHECK_FALSE(r[1]);
  CHECK_THROWS_AS(eoc({{2, 1.0}}), UsageError);
  CHECK(log_log_slope({0.5, 0.25, 0.125}, {16.0, 1.0, 1.0 / 16}) == doctest::Approx(4.0));
}

TEST_CASE("manufactured source matches a finite-difference divergence") {
  const EulerGas gas(1.4);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), ut(0.0, 5.0);
  const double h = 1e-6;
  for (int k = 0; k < 100; ++k) {
    const Vec3 x{ux(rng), ux(rng), ux(rng)};
    const double t = ut(rng);
    EulerState fd{};
    const auto up = mms_exact(x, t + h), um = mms_exact(x, t - h);
    for (int i = 0; i < 5; ++i) fd[i] = (up[i] - um[i]) / (2 * h);
    for (int l = 0; l < 3; ++l) {
      Vec3 xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      const auto fp = gas.physical_flux(mms_exact(xp, t), l);
      const auto fm = gas.physical_flux(mms_exact(xm, t), l);
      for (int i = 0; i < 5; ++i) fd[i] += (fp[i] - fm[i]) / (2 * h);
    }
    const auto s = mms_source(x, t);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(s[i] - fd[i]) <= 1e-6 * std::max(1.0, std::abs(s[i])));
    CHECK(s[1] == s[2]);
    CHECK(s[2] == s[3]);
    const auto shifted = mms_source({x[0] + 2.0, x[1], x[2]}, t);
    for (int i = 0; i < 5; ++i) CHECK(shifted[i] == doctest::Approx(s[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("interior face entropy identity") {
  const MovingMesh mesh({2, 2, 2}, box(0.0, 2.0, MotionKind::kSinusoidal), 3);
  std::mt19937_64 rng(4);
  for (DissipationMode mode : {DissipationMode::kNone, DissipationMode::kRoe}) {
    const DgSolver solver(mesh, EulerGas(1.4),
                          FluxSpec{SystemKind::kEuler, EcVariant::kRanocha, mode, 0.0});
    auto f = solver.initial_state([](const Vec3&) { return EulerState{1, 0.2, 0, 0, 2.5}; }, 0.3);
    CHECK(interior_face_entropy_residual(solver, f, 0.3) == 0.0);
    for (auto& u : f.u) u = sample_state(solver.gas(), rng);
    CHECK(interior_face_entropy_residual(solver, f, 0.3) <= 1e-11);
    if (mode != DissipationMode::kNone)
      CHECK(interior_face_entropy_residual(solver, f, 0.3, true) > 1e-6);
  }
}
