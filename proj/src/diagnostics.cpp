#include "alesolve/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "alesolve/errors.hpp"

namespace alesolve {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

std::vector<double> volume_weights(const OperatorSet& ops) {
  const int n = ops.size();
  std::vector<double> w(n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        w[i + n * (j + n * k)] = ops.weights[i] * ops.weights[j] * ops.weights[k];
  return w;
}

double discrete_entropy(const FieldState& fields, const OperatorSet& ops, const EulerGas& gas) {
  const std::vector<double> w = volume_weights(ops);
  CompensatedSum sum;
  for (int e = 0; e < fields.num_elements; ++e)
    for (int q = 0; q < fields.nodes_per_element; ++q) {
      const std::size_t idx = fields.index(e, q);
      sum.add(w[q] * gas.entropy(fields.u[idx]).s * fields.jac[idx]);
    }
  return sum.value();
}

std::vector<double> nodal_entropy(const FieldState& fields, const OperatorSet& ops,
                                  const EulerGas& gas) {
  const std::vector<double> w = volume_weights(ops);
  std::vector<double> out(fields.u.size());
  for (int e = 0; e < fields.num_elements; ++e)
    for (int q = 0; q < fields.nodes_per_element; ++q) {
      const std::size_t idx = fields.index(e, q);
      out[idx] = w[q] * gas.entropy(fields.u[idx]).s * fields.jac[idx];
    }
  return out;
}

double entropy_change(const FieldState& fields, const OperatorSet& ops, const EulerGas& gas,
                      const std::vector<double>& reference) {
  if (reference.size() != fields.u.size())
    throw UsageError("entropy reference does not match the field size");
  const std::vector<double> now = nodal_entropy(fields, ops, gas);
  CompensatedSum sum;
  for (std::size_t i = 0; i < now.size(); ++i) sum.add(now[i] - reference[i]);
  return sum.value();
}

std::array<double, 5> conserved_totals(const FieldState& fields, const OperatorSet& ops) {
  const std::vector<double> w = volume_weights(ops);
  std::array<CompensatedSum, 5> sums;
  for (int e = 0; e < fields.num_elements; ++e)
    for (int q = 0; q < fields.nodes_per_element; ++q) {
      const std::size_t idx = fields.index(e, q);
      for (int k = 0; k < 5; ++k) sums[k].add(w[q] * fields.u[idx][k] * fields.jac[idx]);
    }
  std::array<double, 5> out;
  for (int k = 0; k < 5; ++k) out[k] = sums[k].value();
  return out;
}

void RunRecord::add(const RecordSample& s) {
  if (!samples.empty() && !(s.t > samples.back().t))
    throw UsageError("run record times must increase strictly");
  samples.push_back(s);
}

double entropy_error(const RunRecord& record, double T) {
  if (record.samples.empty()) return 0.0;
  const RecordSample* last = &record.samples.front();
  for (const auto& s : record.samples)
    if (s.t <= T) last = &s;
  const RecordSample& first = record.samples.front();
  if (last->entropy_change && first.entropy_change)
    return *last->entropy_change - *first.entropy_change;
  return last->entropy - first.entropy;
}

ErrorNorms error_norms(const FieldState& fields, const MeshSnapshot& snap, const OperatorSet& ops,
                       const std::function<EulerState(const Vec3&, double)>& exact) {
  const std::vector<double> w = volume_weights(ops);
  std::array<CompensatedSum, 5> sq;
  ErrorNorms out;
  for (int e = 0; e < fields.num_elements; ++e)
    for (int q = 0; q < fields.nodes_per_element; ++q) {
      const std::size_t idx = fields.index(e, q);
      const EulerState ex = exact(snap.elements[e].position[q], snap.t);
      for (int k = 0; k < 5; ++k) {
        const double d = fields.u[idx][k] - ex[k];
        sq[k].add(w[q] * fields.jac[idx] * d * d);
        out.linf[k] = std::max(out.linf[k], std::abs(d));
      }
    }
  for (int k = 0; k < 5; ++k) out.l2[k] = std::sqrt(std::max(0.0, sq[k].value()));
  return out;
}

std::vector<std::optional<double>> eoc(const std::vector<std::pair<int, double>>& rows) {
  if (rows.size() < 2) throw UsageError("eoc needs at least two rows");
  std::vector<std::optional<double>> rates;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto [k0, e0] = rows[i - 1];
    const auto [k1, e1] = rows[i];
    if (!(e0 > 0.0) || !(e1 > 0.0) || k0 == k1) {
      rates.push_back(std::nullopt);
      continue;
    }
    // h scales like 1/K, so log(h0/h1) = log(K1/K0).
    rates.push_back(std::log(e0 / e1) / std::log(static_cast<double>(k1) / k0));
  }
  return rates;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("slope needs two or more points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EulerState mms_exact(const Vec3& x, double t, double /*gamma*/) {
  const double g = 2.0 + 0.1 * std::sin(std::numbers::pi * (x[0] + x[1] + x[2] - 0.6 * t));
  return {g, g, g, g, g * g};
}

EulerState mms_source(const Vec3& x, double t, double gamma) {
  const double phase = std::numbers::pi * (x[0] + x[1] + x[2] - 0.6 * t);
  const double g = 2.0 + 0.1 * std::sin(phase);
  const double gx = 0.1 * std::numbers::pi * std::cos(phase);  // spatial derivative of g
  // rho = rho u_i = g, E = g^2, so u_i = 1 and p = (gamma - 1)(g^2 - 1.5 g).
  const double px = (gamma - 1.0) * (2.0 * g - 1.5) * gx;
  const double mass = 2.4 * gx;
  const double mom = 2.4 * gx + px;
  const double energy = -1.2 * g * gx + 3.0 * (2.0 * g * gx + px);
  return {mass, mom, mom, mom, energy};
}

EulerState tgv_initial(const Vec3& x, double gamma, double mach) {
  const double p0 = 1.0 / (gamma * mach * mach);
  const Vec3 u{std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
               -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
  const double p =
      p0 + (std::cos(2.0 * x[0]) + std::cos(2.0 * x[1])) * (std::cos(2.0 * x[2]) + 2.0) / 16.0;
  const double rho = 1.0;
  return {rho, rho * u[0], rho * u[1], rho * u[2], p / (gamma - 1.0) + 0.5 * rho * dot(u, u)};
}

double interior_face_entropy_residual(const DgSolver& solver, const FieldState& fields, double t,
                                      bool omit_dissipation_in_flux) {
  const MeshSnapshot snap = solver.snapshot(t);
  return solver.interior_face_entropy_residual(snap, fields.u, omit_dissipation_in_flux);
}

}  // namespace alesolve
