#pragma once

#include <functional>
#include <vector>

#include "alesolve/fluxes.hpp"
#include "alesolve/mesh.hpp"
#include "alesolve/physics.hpp"
#include "alesolve/time_integration.hpp"

namespace alesolve {

using EulerState = EulerGas::State;

// Nodal conserved states and Jacobians of all elements; node q of element e is
// stored at e * nodes_per_element + q.
struct FieldState {
  int num_elements = 0;
  int nodes_per_element = 0;
  std::vector<EulerState> u;
  std::vector<double> jac;
  double t = 0.0;

  std::size_t index(int e, int q) const {
    return static_cast<std::size_t>(e) * nodes_per_element + q;
  }
};

// Geometry of every element at one time instant.
struct MeshSnapshot {
  double t = 0.0;
  std::vector<ElementGeometry> elements;
};

using SourceFunction = std::function<EulerState(const Vec3& x, double t)>;

struct DgOptions {
  int workers = 1;
  // Optional solution-independent source S(x, t); J S is added to the conservation RHS.
  SourceFunction source;
};

// Split-form moving-mesh DGSEM for the compressible Euler equations on a periodic box.
class DgSolver {
 public:
  DgSolver(const MovingMesh& mesh, EulerGas gas, FluxSpec spec, DgOptions options = {});

  const MovingMesh& mesh() const { return mesh_; }
  const EulerGas& gas() const { return gas_; }
  const FluxSpec& spec() const { return spec_; }
  int workers() const { return options_.workers; }

  MeshSnapshot snapshot(double t) const;

  // Nodal states from f at the physical node positions; J from the geometry at t.
  FieldState initial_state(const std::function<EulerState(const Vec3&)>& f, double t = 0.0) const;

  // D-GCL right-hand side dJ/dt of one element.
  std::vector<double> gcl_rhs(const MeshSnapshot& snap, int element) const;
  // Conservation right-hand side d(J U)/dt of one element, without source.
  std::vector<EulerState> conservation_rhs(const MeshSnapshot& snap,
                                           const std::vector<EulerState>& u, int element) const;
  // Both right-hand sides for all elements. jac is only needed for the source term.
  AleRhs<EulerState> evaluate(const MeshSnapshot& snap, const std::vector<EulerState>& u,
                              const std::vector<double>& jac) const;

  void rk_step(FieldState& fields, const RkScheme& scheme, double dt) const;

  // dt = cfl * min h / ((2N + 1) lambda_max); dt_max when lambda_max vanishes.
  double compute_dt(const FieldState& fields, double cfl, double dt_max = 1.0) const;

  // Largest deviation of the interior-face entropy identity over all face nodes. With
  // omit_dissipation_in_flux the surface flux drops its dissipation term while the
  // expected entropy production keeps it (a negative control).
  double interior_face_entropy_residual(const MeshSnapshot& snap,
                                        const std::vector<EulerState>& u,
                                        bool omit_dissipation_in_flux = false) const;

 private:
  struct FaceData {
    std::vector<EulerState> flux;  // s_hat n . G* oriented along +xi_dir of the owner
    std::vector<double> nu;        // s_hat n . avg(nu)
  };

  std::vector<EulerPrimitive> primitives(const std::vector<EulerState>& u) const;
  FaceData face_flux(const MeshSnapshot& snap, const std::vector<EulerState>& u, int owner,
                     int dir) const;
  // Writes element rhs given access to the faces around it.
  void element_rhs(const MeshSnapshot& snap, const std::vector<EulerState>& u,
                   const std::vector<EulerPrimitive>& prim, int e,
                   const std::function<const FaceData&(int owner, int dir)>& face,
                   double* v_out, EulerState* g_out) const;

  const MovingMesh& mesh_;
  EulerGas gas_;
  FluxSpec spec_;
  DgOptions options_;
};

// Runs f(i) for i in [0, n) on up to `workers` threads; each index must write disjoint data.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

}  // namespace alesolve
