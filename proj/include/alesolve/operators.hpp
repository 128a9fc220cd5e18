#pragma once

#include <vector>

namespace alesolve {

// Legendre-Gauss-Lobatto collocation operators of degree N.
// Matrices are stored row-major with (N+1)^2 entries.
struct OperatorSet {
  int degree = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> barycentric;
  std::vector<double> D;
  std::vector<double> Q;
  std::vector<double> B;

  int size() const { return degree + 1; }
  double d(int i, int j) const { return D[i * size() + j]; }
  double q(int i, int j) const { return Q[i * size() + j]; }
  double b(int i, int j) const { return B[i * size() + j]; }
};

inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 15;

// Legendre polynomial P_n and its derivative at x.
void legendre(int n, double x, double& p, double& dp);

OperatorSet build_lgl(int degree);

std::vector<double> differentiate(const OperatorSet& ops, const std::vector<double>& values);

double interpolate(const OperatorSet& ops, const std::vector<double>& values, double xi);

// Residuals of the structural invariants, used by the operator checks.
struct OperatorResiduals {
  int degree = 0;
  double sbp = 0.0;
  double quadrature = 0.0;
  double row_sum = 0.0;
};

OperatorResiduals operator_residuals(const OperatorSet& ops);

}  // namespace alesolve
