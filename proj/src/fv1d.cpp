#include "alesolve/fv1d.hpp"

namespace alesolve {

double FvMesh1D::node_position(int k, double t) const {
  // The last node is the periodic image of the first.
  if (k == cells) return node_position(0, t) + length();
  const double x0 = initial_node(k);
  if (kind == MotionKind::kStatic) return x0;
  const double w = 2.0 * std::numbers::pi;
  return x0 + amplitude * length() * std::sin(w * t) * std::sin(w * x0 / length());
}

double FvMesh1D::node_velocity(int k, double t) const {
  if (kind == MotionKind::kStatic) return 0.0;
  const double x0 = initial_node(k % cells);
  const double w = 2.0 * std::numbers::pi;
  return amplitude * length() * w * std::cos(w * t) * std::sin(w * x0 / length());
}

void FvMesh1D::validate() const {
  if (cells < 1) throw ConfigError("fv1d needs at least one cell");
  if (!(x_max > x_min)) throw ConfigError("fv1d domain bounds are degenerate");
  // Node spacing stays positive when the displacement gradient stays below 1.
  if (kind == MotionKind::kSinusoidal && !(2.0 * std::numbers::pi * amplitude < 1.0))
    throw ConfigError("fv1d motion amplitude too large: cells would invert");
}

}  // namespace alesolve
