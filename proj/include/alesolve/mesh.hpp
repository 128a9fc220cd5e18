#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "alesolve/operators.hpp"
#include "alesolve/physics.hpp"

namespace alesolve {

enum class MotionKind { kStatic, kSinusoidal };

MotionKind parse_motion(const std::string& name);
std::string to_string(MotionKind kind);

// Prescribed grid point trajectories on the box [x_min, x_max]^3.
// The sinusoidal kind displaces every coordinate by the same scalar
// A L sin(2 pi t) prod_i sin(2 pi x_i(0) / L), with L = x_max - x_min.
struct MeshMotion {
  double x_min = 0.0;
  double x_max = 1.0;
  double amplitude = 0.05;
  MotionKind kind = MotionKind::kStatic;

  double length() const { return x_max - x_min; }
  // Time-independent spatial factor prod_i sin(2 pi x_i / L).
  double shape(const Vec3& x0) const;
  Vec3 position(const Vec3& x0, double t) const;
  Vec3 velocity(const Vec3& x0, double t) const;
};

enum Face : int { kXMinus = 0, kXPlus = 1, kYMinus = 2, kYPlus = 3, kZMinus = 4, kZPlus = 5 };

struct ElementGeometry {
  int n1d = 0;
  std::vector<Vec3> position;
  std::vector<Vec3> velocity;
  std::array<std::vector<Vec3>, 3> covariant;      // a_1, a_2, a_3
  std::array<std::vector<Vec3>, 3> contravariant;  // J a^1, J a^2, J a^3 (curl form)
  std::vector<double> jacobian;                    // a_1 . (a_2 x a_3)

  int node(int i, int j, int k) const { return i + n1d * (j + n1d * k); }
  int num_nodes() const { return n1d * n1d * n1d; }
};

struct FaceNodeGeometry {
  double s_hat = 0.0;
  Vec3 normal{};
  Vec3 scaled_normal() const { return {s_hat * normal[0], s_hat * normal[1], s_hat * normal[2]}; }
};

// Volume node index of face node (a, b) on the given face; (a, b) run over the
// two tangential directions in increasing order.
int face_volume_node(int n1d, int face, int a, int b);

// Outward surface element and unit normal at every node of a face.
std::vector<FaceNodeGeometry> face_geometry(const ElementGeometry& geom, int face);

// Structured periodic box of curved moving hexahedra.
class MovingMesh {
 public:
  MovingMesh(std::array<int, 3> counts, MeshMotion motion, int degree);

  const OperatorSet& ops() const { return *ops_; }
  std::shared_ptr<const OperatorSet> ops_ptr() const { return ops_; }
  const MeshMotion& motion() const { return motion_; }
  int degree() const { return ops_->degree; }
  int n1d() const { return ops_->degree + 1; }
  int nodes_per_element() const { return n1d() * n1d() * n1d(); }
  std::array<int, 3> counts() const { return counts_; }
  int num_elements() const { return counts_[0] * counts_[1] * counts_[2]; }

  int element_index(int ex, int ey, int ez) const;
  std::array<int, 3> element_coords(int e) const;
  // Periodic neighbor across the face in direction dir; side -1 or +1.
  int neighbor(int e, int dir, int side) const;

  const std::vector<Vec3>& reference_positions(int e) const { return reference_[e]; }

  // Geometry at time t from the analytic motion. Throws GeometryError when J <= 0.
  ElementGeometry element_geometry(int e, double t) const;

  // Minimum straight-line length over the 12 element edges.
  double element_size(const ElementGeometry& geom) const;

  std::string summary_json() const;

 private:
  std::array<int, 3> counts_;
  MeshMotion motion_;
  std::shared_ptr<const OperatorSet> ops_;
  std::vector<std::vector<Vec3>> reference_;
  std::vector<std::vector<double>> shape_;
};

// Curl-form metric terms and covariant vectors from nodal positions.
void compute_metrics(const OperatorSet& ops, ElementGeometry& geom);

// Largest metric identity residual of an element (sum over directions of D applied to J a^i).
double metric_identity_residual(const OperatorSet& ops, const ElementGeometry& geom);

// Largest componentwise mismatch of s_hat n between the two sides of every interior face node.
double watertightness_residual(const MovingMesh& mesh, const std::vector<ElementGeometry>& geoms);

// ---- 2D transfinite mapping ------------------------------------------------

using Vec2 = std::array<double, 2>;

struct Curve2D {
  std::function<Vec2(double, double)> position;  // (s, t) -> point
  std::function<Vec2(double, double)> velocity;  // (s, t) -> d/dt point
};

struct TransfinitePoint {
  Vec2 position{};
  Vec2 velocity{};
};

// Isoparametric transfinite map of a quadrilateral bounded by four curves that are
// interpolated at the LGL nodes. Curve order: 0 bottom (xi2=-1, param xi1),
// 1 right (xi1=+1, param xi2), 2 top (xi2=+1, param xi1), 3 left (xi1=-1, param xi2).
class TransfiniteMap2D {
 public:
  TransfiniteMap2D(std::array<Curve2D, 4> faces, std::shared_ptr<const OperatorSet> ops);
  TransfinitePoint evaluate(double xi1, double xi2, double t) const;

 private:
  std::array<Curve2D, 4> faces_;
  std::shared_ptr<const OperatorSet> ops_;
};

}  // namespace alesolve
