#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "alesolve/dgsem.hpp"

namespace alesolve {

// Neumaier compensated summation; the result depends only on the order of additions.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Tensor-product quadrature weights w_i w_j w_k for one element.
std::vector<double> volume_weights(const OperatorSet& ops);

// S-bar: sum over elements and nodes of w_ijk s(U_ijk) J_ijk.
double discrete_entropy(const FieldState& fields, const OperatorSet& ops, const EulerGas& gas);

// Sum over elements and nodes of w_ijk U_ijk J_ijk for every conserved variable.
std::array<double, 5> conserved_totals(const FieldState& fields, const OperatorSet& ops);

// Per-node w_ijk s(U_ijk) J_ijk in storage order.
std::vector<double> nodal_entropy(const FieldState& fields, const OperatorSet& ops,
                                  const EulerGas& gas);

// S-bar minus the S-bar of a reference nodal_entropy vector, summed node by node so the
// result does not cancel against the magnitude of S-bar itself.
double entropy_change(const FieldState& fields, const OperatorSet& ops, const EulerGas& gas,
                      const std::vector<double>& reference);

struct RecordSample {
  double t = 0.0;
  double entropy = 0.0;
  std::array<double, 5> totals{};
  // S-bar(t) - S-bar(t0) accumulated nodewise; preferred by entropy_error when present.
  std::optional<double> entropy_change;
};

struct RunRecord {
  std::vector<RecordSample> samples;
  std::string metadata;  // JSON text describing the run

  // Appends a sample; throws UsageError unless t is strictly increasing.
  void add(const RecordSample& s);
};

// S-bar(T) - S-bar(0) using the last sample at or before T.
double entropy_error(const RunRecord& record, double T);

struct ErrorNorms {
  std::array<double, 5> l2{};
  std::array<double, 5> linf{};
};

// J-weighted LGL quadrature L2 norm and nodal max norm of U - exact(x, t).
ErrorNorms error_norms(const FieldState& fields, const MeshSnapshot& snap, const OperatorSet& ops,
                       const std::function<EulerState(const Vec3&, double)>& exact);

// Experimental orders between consecutive (K per direction, error) rows; nullopt where undefined.
std::vector<std::optional<double>> eoc(const std::vector<std::pair<int, double>>& rows);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// Manufactured solution on [-1, 1]^3 and its residual in the Euler equations.
EulerState mms_exact(const Vec3& x, double t, double gamma = 1.4);
EulerState mms_source(const Vec3& x, double t, double gamma = 1.4);

// Taylor-Green vortex initial data with background Mach number mach.
EulerState tgv_initial(const Vec3& x, double gamma = 1.4, double mach = 0.1);

// Interior-face entropy identity residual (see DgSolver).
double interior_face_entropy_residual(const DgSolver& solver, const FieldState& fields,
                                      double t, bool omit_dissipation_in_flux = false);

}  // namespace alesolve
