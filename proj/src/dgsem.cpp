#include "alesolve/dgsem.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "alesolve/errors.hpp"

namespace alesolve {

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  const int w = std::max(1, std::min(workers, n));
  if (w == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first_error;
  int first_index = std::numeric_limits<int>::max();
  std::mutex mutex;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (int t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      for (int i = t; i < n; i += w) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mutex);
          // Keep the error of the lowest index so reports do not depend on scheduling.
          if (i < first_index) {
            first_index = i;
            first_error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

// s_hat n . (f(U) - nu U) at one node.
EulerState contracted_physical_flux(const EulerPrimitive& q, const EulerState& u, const Vec3& nu,
                                    const Vec3& n) {
  const double un = dot(q.u, n);
  const double vn = un - dot(nu, n);
  EulerState f;
  for (int i = 0; i < 5; ++i) f[i] = vn * u[i];
  for (int k = 0; k < 3; ++k) f[k + 1] += q.p * n[k];
  f[4] += q.p * un;
  return f;
}

Vec3 midpoint(const Vec3& a, const Vec3& b) {
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

}  // namespace

DgSolver::DgSolver(const MovingMesh& mesh, EulerGas gas, FluxSpec spec, DgOptions options)
    : mesh_(mesh), gas_(gas), spec_(spec), options_(std::move(options)) {
  spec_.validate();
  if (spec_.system != SystemKind::kEuler) throw ConfigError("the DGSEM solver supports euler only");
  if (options_.workers < 1) throw ConfigError("worker count must be at least 1");
}

MeshSnapshot DgSolver::snapshot(double t) const {
  MeshSnapshot s;
  s.t = t;
  s.elements.resize(mesh_.num_elements());
  parallel_for(mesh_.num_elements(), options_.workers,
               [&](int e) { s.elements[e] = mesh_.element_geometry(e, t); });
  return s;
}

FieldState DgSolver::initial_state(const std::function<EulerState(const Vec3&)>& f,
                                   double t) const {
  const MeshSnapshot snap = snapshot(t);
  FieldState fs;
  fs.num_elements = mesh_.num_elements();
  fs.nodes_per_element = mesh_.nodes_per_element();
  fs.t = t;
  fs.u.resize(static_cast<std::size_t>(fs.num_elements) * fs.nodes_per_element);
  fs.jac.resize(fs.u.size());
  for (int e = 0; e < fs.num_elements; ++e)
    for (int q = 0; q < fs.nodes_per_element; ++q) {
      fs.u[fs.index(e, q)] = f(snap.elements[e].position[q]);
      fs.jac[fs.index(e, q)] = snap.elements[e].jacobian[q];
    }
  return fs;
}

std::vector<EulerPrimitive> DgSolver::primitives(const std::vector<EulerState>& u) const {
  const int npe = mesh_.nodes_per_element();
  std::vector<EulerPrimitive> prim(u.size());
  parallel_for(mesh_.num_elements(), options_.workers, [&](int e) {
    for (int q = 0; q < npe; ++q) {
      const std::size_t idx = static_cast<std::size_t>(e) * npe + q;
      try {
        prim[idx] = gas_.primitive(u[idx]);
      } catch (const StateError& err) {
        std::ostringstream os;
        os << err.what() << " in element " << e << " node " << q;
        throw StateError(os.str());
      }
    }
  });
  return prim;
}

DgSolver::FaceData DgSolver::face_flux(const MeshSnapshot& snap,
                                       const std::vector<EulerState>& u, int owner,
                                       int dir) const {
  const int n = mesh_.n1d();
  const int npe = mesh_.nodes_per_element();
  const int nb = mesh_.neighbor(owner, dir, +1);
  const ElementGeometry& gm = snap.elements[owner];
  const ElementGeometry& gp = snap.elements[nb];
  FaceData fd;
  fd.flux.resize(n * n);
  fd.nu.resize(n * n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      const int qm = face_volume_node(n, 2 * dir + 1, a, b);
      const int qp = face_volume_node(n, 2 * dir, a, b);
      const Vec3& sn = gm.contravariant[dir][qm];
      const Vec3& nu_m = gm.velocity[qm];
      const Vec3& nu_p = gp.velocity[qp];
      const EulerState& um = u[static_cast<std::size_t>(owner) * npe + qm];
      const EulerState& up = u[static_cast<std::size_t>(nb) * npe + qp];
      fd.flux[a + n * b] = contracted_es_flux(gas_, spec_, um, up, nu_m, nu_p, sn);
      fd.nu[a + n * b] = dot(sn, midpoint(nu_m, nu_p));
    }
  return fd;
}

void DgSolver::element_rhs(const MeshSnapshot& snap, const std::vector<EulerState>& u,
                           const std::vector<EulerPrimitive>& prim, int e,
                           const std::function<const FaceData&(int, int)>& face, double* v_out,
                           EulerState* g_out) const {
  const OperatorSet& ops = mesh_.ops();
  const int n = ops.size();
  const int npe = n * n * n;
  const ElementGeometry& geo = snap.elements[e];
  const std::size_t base_idx = static_cast<std::size_t>(e) * npe;
  const EulerPrimitive* pe = prim.data() + base_idx;
  const EulerState* ue = u.data() + base_idx;

  std::vector<double> vol_v(npe, 0.0);
  std::vector<EulerState> vol_g(npe, EulerState{});
  for (int dir = 0; dir < 3; ++dir) {
    const int stride = dir == 0 ? 1 : (dir == 1 ? n : n * n);
    const auto& ja = geo.contravariant[dir];
    for (int c2 = 0; c2 < n; ++c2)
      for (int c1 = 0; c1 < n; ++c1) {
        int base;
        if (dir == 0) base = n * (c1 + n * c2);
        else if (dir == 1) base = c1 + n * n * c2;
        else base = c1 + n * c2;
        for (int i = 0; i < n; ++i) {
          const int qi = base + i * stride;
          for (int m = i; m < n; ++m) {
            const int qm = base + m * stride;
            const Vec3 navg = midpoint(ja[qi], ja[qm]);
            const EulerState f = contracted_ec_flux(gas_, spec_.variant, pe[qi], pe[qm],
                                                    geo.velocity[qi], geo.velocity[qm], navg);
            const double vn = dot(midpoint(geo.velocity[qi], geo.velocity[qm]), navg);
            const double dim = 2.0 * ops.D[i * n + m];
            vol_v[qi] += dim * vn;
            for (int k = 0; k < 5; ++k) vol_g[qi][k] += dim * f[k];
            if (m != i) {
              const double dmi = 2.0 * ops.D[m * n + i];
              vol_v[qm] += dmi * vn;
              for (int k = 0; k < 5; ++k) vol_g[qm][k] += dmi * f[k];
            }
          }
        }
      }
  }

  const double inv_w_last = 1.0 / ops.weights[n - 1];
  const double inv_w_first = 1.0 / ops.weights[0];
  for (int dir = 0; dir < 3; ++dir) {
    const auto& ja = geo.contravariant[dir];
    // +xi face: this element owns the shared data and its outward normal matches it.
    const FaceData& fp = face(e, dir);
    // -xi face: owned by the neighbor below, so the shared data enters with a flipped sign.
    const FaceData& fm = face(mesh_.neighbor(e, dir, -1), dir);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        const int fi = a + n * b;
        {
          const int q = face_volume_node(n, 2 * dir + 1, a, b);
          const Vec3& sn = ja[q];
          const EulerState tr = contracted_physical_flux(pe[q], ue[q], geo.velocity[q], sn);
          vol_v[q] += inv_w_last * (fp.nu[fi] - dot(sn, geo.velocity[q]));
          for (int k = 0; k < 5; ++k) vol_g[q][k] += inv_w_last * (fp.flux[fi][k] - tr[k]);
        }
        {
          const int q = face_volume_node(n, 2 * dir, a, b);
          const Vec3 sn{-ja[q][0], -ja[q][1], -ja[q][2]};
          const EulerState tr = contracted_physical_flux(pe[q], ue[q], geo.velocity[q], sn);
          vol_v[q] += inv_w_first * (-fm.nu[fi] - dot(sn, geo.velocity[q]));
          for (int k = 0; k < 5; ++k) vol_g[q][k] += inv_w_first * (-fm.flux[fi][k] - tr[k]);
        }
      }
  }

  for (int q = 0; q < npe; ++q) {
    if (v_out) v_out[q] = vol_v[q];
    if (g_out)
      for (int k = 0; k < 5; ++k) g_out[q][k] = -vol_g[q][k];
  }
}

std::vector<double> DgSolver::gcl_rhs(const MeshSnapshot& snap, int element) const {
  // The GCL does not depend on the solution; a uniform admissible state stands in for it.
  const int npe = mesh_.nodes_per_element();
  const std::vector<EulerState> u(static_cast<std::size_t>(mesh_.num_elements()) * npe,
                                  EulerState{1.0, 0.0, 0.0, 0.0, 2.5});
  const std::vector<EulerPrimitive> prim(u.size(), gas_.primitive(u[0]));
  std::vector<FaceData> cache(6);
  std::vector<std::pair<int, int>> keys;
  auto face = [&](int owner, int dir) -> const FaceData& {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == std::pair{owner, dir}) return cache[i];
    keys.emplace_back(owner, dir);
    cache[keys.size() - 1] = face_flux(snap, u, owner, dir);
    return cache[keys.size() - 1];
  };
  std::vector<double> v(npe);
  element_rhs(snap, u, prim, element, face, v.data(), nullptr);
  return v;
}

std::vector<EulerState> DgSolver::conservation_rhs(const MeshSnapshot& snap,
                                                   const std::vector<EulerState>& u,
                                                   int element) const {
  const int npe = mesh_.nodes_per_element();
  const std::vector<EulerPrimitive> prim = primitives(u);
  std::vector<FaceData> cache(6);
  std::vector<std::pair<int, int>> keys;
  auto face = [&](int owner, int dir) -> const FaceData& {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == std::pair{owner, dir}) return cache[i];
    keys.emplace_back(owner, dir);
    cache[keys.size() - 1] = face_flux(snap, u, owner, dir);
    return cache[keys.size() - 1];
  };
  std::vector<EulerState> g(npe);
  element_rhs(snap, u, prim, element, face, nullptr, g.data());
  return g;
}

AleRhs<EulerState> DgSolver::evaluate(const MeshSnapshot& snap, const std::vector<EulerState>& u,
                                      const std::vector<double>& jac) const {
  const int k_el = mesh_.num_elements();
  const int npe = mesh_.nodes_per_element();
  const std::vector<EulerPrimitive> prim = primitives(u);
  // Phase 1: every face flux once, oriented from its owner towards +xi.
  std::vector<FaceData> faces(static_cast<std::size_t>(k_el) * 3);
  parallel_for(k_el, options_.workers, [&](int e) {
    for (int d = 0; d < 3; ++d) faces[3 * e + d] = face_flux(snap, u, e, d);
  });
  // Phase 2: independent element updates.
  AleRhs<EulerState> r;
  r.v.resize(u.size());
  r.g.resize(u.size());
  auto face = [&](int owner, int dir) -> const FaceData& { return faces[3 * owner + dir]; };
  parallel_for(k_el, options_.workers, [&](int e) {
    const std::size_t off = static_cast<std::size_t>(e) * npe;
    element_rhs(snap, u, prim, e, face, r.v.data() + off, r.g.data() + off);
    if (options_.source) {
      const ElementGeometry& geo = snap.elements[e];
      for (int q = 0; q < npe; ++q) {
        const EulerState s = options_.source(geo.position[q], snap.t);
        for (int k = 0; k < 5; ++k) r.g[off + q][k] += jac[off + q] * s[k];
      }
    }
  });
  return r;
}

void DgSolver::rk_step(FieldState& fields, const RkScheme& scheme, double dt) const {
  if (!(dt > 0.0)) throw UsageError("time step must be positive");
  ale_rk_step<EulerState>(scheme, fields.t, dt, fields.jac, fields.u,
                          [&](double ts, const std::vector<double>& js,
                              const std::vector<EulerState>& us) {
                            const MeshSnapshot snap = snapshot(ts);
                            return evaluate(snap, us, js);
                          });
  fields.t += dt;
}

double DgSolver::compute_dt(const FieldState& fields, double cfl, double dt_max) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
  const MeshSnapshot snap = snapshot(fields.t);
  const int npe = mesh_.nodes_per_element();
  double h = std::numeric_limits<double>::infinity();
  double lam = 0.0;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const ElementGeometry& geo = snap.elements[e];
    h = std::min(h, mesh_.element_size(geo));
    for (int q = 0; q < npe; ++q)
      for (int l = 0; l < 3; ++l)
        lam = std::max(lam, gas_.max_wave_speed(fields.u[fields.index(e, q)], geo.velocity[q], l));
  }
  if (lam == 0.0) return dt_max;
  return cfl * h / ((2.0 * mesh_.degree() + 1.0) * lam);
}

double DgSolver::interior_face_entropy_residual(const MeshSnapshot& snap,
                                                const std::vector<EulerState>& u,
                                                bool omit_dissipation_in_flux) const {
  const int n = mesh_.n1d();
  const int npe = mesh_.nodes_per_element();
  FluxSpec flux_spec = spec_;
  if (omit_dissipation_in_flux) flux_spec.dissipation = DissipationMode::kNone;
  double worst = 0.0;
  for (int e = 0; e < mesh_.num_elements(); ++e)
    for (int dir = 0; dir < 3; ++dir) {
      const int nb = mesh_.neighbor(e, dir, +1);
      const ElementGeometry& gm = snap.elements[e];
      const ElementGeometry& gp = snap.elements[nb];
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
          const int qm = face_volume_node(n, 2 * dir + 1, a, b);
          const int qp = face_volume_node(n, 2 * dir, a, b);
          const Vec3& sn = gm.contravariant[dir][qm];
          const Vec3& nu_m = gm.velocity[qm];
          const Vec3& nu_p = gp.velocity[qp];
          const EulerState& um = u[static_cast<std::size_t>(e) * npe + qm];
          const EulerState& up = u[static_cast<std::size_t>(nb) * npe + qp];
          double production = 0.0;
          contracted_es_flux(gas_, spec_, um, up, nu_m, nu_p, sn, &production);
          const EulerState g = contracted_es_flux(gas_, flux_spec, um, up, nu_m, nu_p, sn);
          const auto em = gas_.entropy(um);
          const auto ep = gas_.entropy(up);
          double jwg = 0.0;
          for (int k = 0; k < 5; ++k) jwg += (ep.w[k] - em.w[k]) * g[k];
          const Vec3 jpsi{ep.psi[0] - em.psi[0], ep.psi[1] - em.psi[1], ep.psi[2] - em.psi[2]};
          const double expr =
              dot(sn, jpsi) - dot(sn, midpoint(nu_m, nu_p)) * (ep.phi - em.phi) - jwg;
          worst = std::max(worst, std::abs(expr - production));
        }
    }
  return worst;
}

}  // namespace alesolve
