#include "alesolve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "alesolve/errors.hpp"
#include "json.hpp"

namespace alesolve {

MotionKind parse_motion(const std::string& name) {
  if (name == "static") return MotionKind::kStatic;
  if (name == "sinusoidal") return MotionKind::kSinusoidal;
  throw ConfigError("unknown motion kind '" + name + "' (expected static or sinusoidal)");
}

std::string to_string(MotionKind kind) {
  return kind == MotionKind::kStatic ? "static" : "sinusoidal";
}

double MeshMotion::shape(const Vec3& x0) const {
  const double k = 2.0 * std::numbers::pi / length();
  return std::sin(k * x0[0]) * std::sin(k * x0[1]) * std::sin(k * x0[2]);
}

Vec3 MeshMotion::position(const Vec3& x0, double t) const {
  if (kind == MotionKind::kStatic) return x0;
  const double d = amplitude * length() * std::sin(2.0 * std::numbers::pi * t) * shape(x0);
  return {x0[0] + d, x0[1] + d, x0[2] + d};
}

Vec3 MeshMotion::velocity(const Vec3& x0, double t) const {
  if (kind == MotionKind::kStatic) return {0.0, 0.0, 0.0};
  const double w = 2.0 * std::numbers::pi;
  const double v = amplitude * length() * w * std::cos(w * t) * shape(x0);
  return {v, v, v};
}

int face_volume_node(int n1d, int face, int a, int b) {
  const int dir = face / 2;
  const int fixed = (face % 2 == 0) ? 0 : n1d - 1;
  switch (dir) {
    case 0: return fixed + n1d * (a + n1d * b);
    case 1: return a + n1d * (fixed + n1d * b);
    default: return a + n1d * (b + n1d * fixed);
  }
}

std::vector<FaceNodeGeometry> face_geometry(const ElementGeometry& geom, int face) {
  if (face < 0 || face > 5) throw UsageError("face index must be in 0..5");
  const int n = geom.n1d;
  const int dir = face / 2;
  const double sign = (face % 2 == 0) ? -1.0 : 1.0;
  std::vector<FaceNodeGeometry> out(n * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const Vec3& ja = geom.contravariant[dir][face_volume_node(n, face, a, b)];
      const Vec3 sn{sign * ja[0], sign * ja[1], sign * ja[2]};
      const double s = std::sqrt(dot(sn, sn));
      if (!(s > 0.0)) throw GeometryError("zero surface element on face " + std::to_string(face));
      FaceNodeGeometry& f = out[a + n * b];
      f.s_hat = s;
      f.normal = {sn[0] / s, sn[1] / s, sn[2] / s};
    }
  }
  return out;
}

namespace {

// out = D along reference direction dir applied to a nodal scalar field.
void apply_d(const OperatorSet& ops, int dir, const std::vector<double>& in,
             std::vector<double>& out) {
  const int n = ops.size();
  const int stride = dir == 0 ? 1 : (dir == 1 ? n : n * n);
  out.assign(in.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int node = i + n * (j + n * k);
        const int idx = dir == 0 ? i : (dir == 1 ? j : k);
        const int base = node - idx * stride;
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += ops.D[idx * n + m] * in[base + m * stride];
        out[node] = s;
      }
    }
  }
}

}  // namespace

void compute_metrics(const OperatorSet& ops, ElementGeometry& geom) {
  const int nn = geom.num_nodes();
  std::array<std::vector<double>, 3> x;
  for (int c = 0; c < 3; ++c) {
    x[c].resize(nn);
    for (int q = 0; q < nn; ++q) x[c][q] = geom.position[q][c];
  }
  // dx[d][c] = D_d x_c
  std::array<std::array<std::vector<double>, 3>, 3> dx;
  for (int d = 0; d < 3; ++d)
    for (int c = 0; c < 3; ++c) apply_d(ops, d, x[c], dx[d][c]);

  for (int d = 0; d < 3; ++d) {
    geom.covariant[d].resize(nn);
    geom.contravariant[d].resize(nn);
    for (int q = 0; q < nn; ++q) geom.covariant[d][q] = {dx[d][0][q], dx[d][1][q], dx[d][2][q]};
  }

  std::array<std::vector<double>, 3> v;
  std::vector<double> tmp_a, tmp_b;
  for (int c = 0; c < 3; ++c) {
    const int m = (c + 1) % 3;
    const int l = (c + 2) % 3;
    for (int d = 0; d < 3; ++d) {
      v[d].resize(nn);
      for (int q = 0; q < nn; ++q) v[d][q] = x[l][q] * dx[d][m][q];
    }
    // J a^i_c = -(curl_xi v)_i.
    for (int i = 0; i < 3; ++i) {
      const int p = (i + 1) % 3;
      const int r = (i + 2) % 3;
      apply_d(ops, r, v[p], tmp_a);
      apply_d(ops, p, v[r], tmp_b);
      for (int q = 0; q < nn; ++q) geom.contravariant[i][q][c] = tmp_a[q] - tmp_b[q];
    }
  }

  geom.jacobian.resize(nn);
  for (int q = 0; q < nn; ++q) {
    geom.jacobian[q] =
        dot(geom.covariant[0][q], cross(geom.covariant[1][q], geom.covariant[2][q]));
  }
}

double metric_identity_residual(const OperatorSet& ops, const ElementGeometry& geom) {
  const int nn = geom.num_nodes();
  double res = 0.0;
  std::vector<double> comp(nn), deriv;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> sum(nn, 0.0);
    for (int d = 0; d < 3; ++d) {
      for (int q = 0; q < nn; ++q) comp[q] = geom.contravariant[d][q][c];
      apply_d(ops, d, comp, deriv);
      for (int q = 0; q < nn; ++q) sum[q] += deriv[q];
    }
    for (double s : sum) res = std::max(res, std::abs(s));
  }
  return res;
}

MovingMesh::MovingMesh(std::array<int, 3> counts, MeshMotion motion, int degree)
    : counts_(counts), motion_(motion) {
  for (int c : counts)
    if (c < 1) throw ConfigError("element counts must be at least 1");
  if (!(motion.x_max > motion.x_min)) throw ConfigError("domain bounds are degenerate");
  if (!(motion.amplitude >= 0.0)) throw ConfigError("motion amplitude must be nonnegative");
  ops_ = std::make_shared<const OperatorSet>(build_lgl(degree));
  const int n = n1d();
  const double len = motion.length();
  reference_.resize(num_elements());
  shape_.resize(num_elements());
  for (int e = 0; e < num_elements(); ++e) {
    const auto ec = element_coords(e);
    auto& ref = reference_[e];
    ref.resize(nodes_per_element());
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const std::array<int, 3> idx{i, j, k};
          Vec3 x;
          for (int d = 0; d < 3; ++d) {
            const double h = len / counts_[d];
            x[d] = motion.x_min + (ec[d] + 0.5 * (ops_->nodes[idx[d]] + 1.0)) * h;
          }
          ref[i + n * (j + n * k)] = x;
        }
    shape_[e].resize(nodes_per_element());
    for (int q = 0; q < nodes_per_element(); ++q) shape_[e][q] = motion.shape(ref[q]);
  }
}

int MovingMesh::element_index(int ex, int ey, int ez) const {
  return ex + counts_[0] * (ey + counts_[1] * ez);
}

std::array<int, 3> MovingMesh::element_coords(int e) const {
  if (e < 0 || e >= num_elements()) throw UsageError("element id out of range");
  return {e % counts_[0], (e / counts_[0]) % counts_[1], e / (counts_[0] * counts_[1])};
}

int MovingMesh::neighbor(int e, int dir, int side) const {
  auto c = element_coords(e);
  c[dir] = (c[dir] + side + counts_[dir]) % counts_[dir];
  return element_index(c[0], c[1], c[2]);
}

ElementGeometry MovingMesh::element_geometry(int e, double t) const {
  if (e < 0 || e >= num_elements()) throw UsageError("element id out of range");
  ElementGeometry g;
  g.n1d = n1d();
  const int nn = nodes_per_element();
  g.position.resize(nn);
  g.velocity.resize(nn);
  const auto& ref = reference_[e];
  if (motion_.kind == MotionKind::kStatic) {
    g.position = ref;
    for (auto& v : g.velocity) v = {0.0, 0.0, 0.0};
  } else {
    const double w = 2.0 * std::numbers::pi;
    const double amp = motion_.amplitude * motion_.length();
    const double sd = amp * std::sin(w * t);
    const double sv = amp * w * std::cos(w * t);
    for (int q = 0; q < nn; ++q) {
      const double s = shape_[e][q];
      const double d = sd * s;
      const double v = sv * s;
      g.position[q] = {ref[q][0] + d, ref[q][1] + d, ref[q][2] + d};
      g.velocity[q] = {v, v, v};
    }
  }
  compute_metrics(*ops_, g);
  for (int q = 0; q < nn; ++q) {
    if (!(g.jacobian[q] > 0.0)) {
      std::ostringstream os;
      os << "nonpositive Jacobian " << g.jacobian[q] << " in element " << e << " node " << q
         << " at t=" << t;
      throw GeometryError(os.str());
    }
  }
  return g;
}

double MovingMesh::element_size(const ElementGeometry& geom) const {
  const int last = geom.n1d - 1;
  double h = std::numeric_limits<double>::infinity();
  auto corner = [&](int a, int b, int c) { return geom.position[geom.node(a, b, c)]; };
  for (int a = 0; a <= last; a += last)
    for (int b = 0; b <= last; b += last) {
      const std::array<std::pair<Vec3, Vec3>, 3> edges{
          std::pair{corner(0, a, b), corner(last, a, b)},
          std::pair{corner(a, 0, b), corner(a, last, b)},
          std::pair{corner(a, b, 0), corner(a, b, last)}};
      for (const auto& [p, q] : edges) {
        const Vec3 d{q[0] - p[0], q[1] - p[1], q[2] - p[2]};
        h = std::min(h, std::sqrt(dot(d, d)));
      }
    }
  return h;
}

std::string MovingMesh::summary_json() const {
  nlohmann::json j;
  j["K"] = counts_;
  j["N"] = degree();
  j["bounds"] = {motion_.x_min, motion_.x_max};
  j["motion"] = to_string(motion_.kind);
  j["amplitude"] = motion_.amplitude;
  return j.dump();
}

double watertightness_residual(const MovingMesh& mesh, const std::vector<ElementGeometry>& geoms) {
  const int n = mesh.n1d();
  double worst = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int dir = 0; dir < 3; ++dir) {
      const int nb = mesh.neighbor(e, dir, +1);
      const auto own = face_geometry(geoms[e], 2 * dir + 1);
      const auto other = face_geometry(geoms[nb], 2 * dir);
      for (int f = 0; f < n * n; ++f) {
        const Vec3 a = own[f].scaled_normal();
        const Vec3 b = other[f].scaled_normal();
        // Outward normals of the two sides are opposite.
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(a[c] + b[c]));
      }
    }
  return worst;
}

// ---- 2D transfinite mapping ------------------------------------------------

TransfiniteMap2D::TransfiniteMap2D(std::array<Curve2D, 4> faces,
                                   std::shared_ptr<const OperatorSet> ops)
    : faces_(std::move(faces)), ops_(std::move(ops)) {
  for (const auto& f : faces_)
    if (!f.position || !f.velocity) throw ConfigError("transfinite map needs all four curves");
}

TransfinitePoint TransfiniteMap2D::evaluate(double xi1, double xi2, double t) const {
  const OperatorSet& ops = *ops_;
  const int n = ops.size();
  // Interpolants of curve c (positions or velocities) sampled at the LGL nodes.
  auto interp = [&](int c, bool vel, double s) {
    std::array<std::vector<double>, 2> vals{std::vector<double>(n), std::vector<double>(n)};
    for (int j = 0; j < n; ++j) {
      const Vec2 p = vel ? faces_[c].velocity(ops.nodes[j], t) : faces_[c].position(ops.nodes[j], t);
      vals[0][j] = p[0];
      vals[1][j] = p[1];
    }
    return Vec2{interpolate(ops, vals[0], s), interpolate(ops, vals[1], s)};
  };
  auto gap = [](const Vec2& a, const Vec2& b) {
    return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
  };
  const Vec2 c00 = faces_[0].position(-1.0, t);
  const Vec2 c10 = faces_[0].position(1.0, t);
  const Vec2 c01 = faces_[2].position(-1.0, t);
  const Vec2 c11 = faces_[2].position(1.0, t);
  if (gap(c00, faces_[3].position(-1.0, t)) > 1e-12 || gap(c10, faces_[1].position(-1.0, t)) > 1e-12 ||
      gap(c01, faces_[3].position(1.0, t)) > 1e-12 || gap(c11, faces_[1].position(1.0, t)) > 1e-12) {
    throw ConfigError("transfinite map curves do not meet at the corners");
  }
  TransfinitePoint out;
  for (int pass = 0; pass < 2; ++pass) {
    const bool vel = pass == 1;
    const Vec2 g1 = interp(0, vel, xi1);
    const Vec2 g2 = interp(1, vel, xi2);
    const Vec2 g3 = interp(2, vel, xi1);
    const Vec2 g4 = interp(3, vel, xi2);
    const Vec2 g1p = interp(0, vel, 1.0);
    const Vec2 g3p = interp(2, vel, 1.0);
    const Vec2 g1m = interp(0, vel, -1.0);
    const Vec2 g3m = interp(2, vel, -1.0);
    Vec2 r;
    for (int c = 0; c < 2; ++c) {
      r[c] = 0.5 * ((1.0 - xi1) * g4[c] + (1.0 + xi1) * g2[c]) +
             0.5 * ((1.0 - xi2) * g1[c] + (1.0 + xi2) * g3[c]) -
             0.25 * (1.0 + xi1) * ((1.0 - xi2) * g1p[c] + (1.0 + xi2) * g3p[c]) -
             0.25 * (1.0 - xi1) * ((1.0 - xi2) * g1m[c] + (1.0 + xi2) * g3m[c]);
    }
    (vel ? out.velocity : out.position) = r;
  }
  return out;
}

}  // namespace alesolve
