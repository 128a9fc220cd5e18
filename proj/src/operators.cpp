#include "alesolve/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "alesolve/errors.hpp"

namespace alesolve {

void legendre(int n, double x, double& p, double& dp) {
  // Three-term recurrence; dp from the standard derivative identity.
  double p_prev = 1.0;
  double p_curr = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  double dp_prev = 0.0;
  double dp_curr = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p_curr - (k - 1.0) * p_prev) / k;
    const double dp_next = dp_prev + (2.0 * k - 1.0) * p_curr;
    p_prev = p_curr;
    p_curr = p_next;
    dp_prev = dp_curr;
    dp_curr = dp_next;
  }
  p = p_curr;
  dp = dp_curr;
}

namespace {

std::vector<double> lgl_nodes(int n) {
  std::vector<double> x(n + 1);
  x[0] = -1.0;
  x[n] = 1.0;
  for (int j = 1; j < n; ++j) {
    double xj = -std::cos(std::numbers::pi * j / n);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre(n, xj, p, dp);
      // q = (1-x^2) P'_N has derivative -N(N+1) P_N by the Legendre ODE.
      const double delta = (1.0 - xj * xj) * dp / (n * (n + 1.0) * p);
      xj += delta;
      if (std::abs(delta) < 1e-15) break;
    }
    x[j] = xj;
  }
  // Enforce exact antisymmetry of the node set.
  for (int j = 0; j <= n / 2; ++j) {
    const double a = 0.5 * (x[n - j] - x[j]);
    x[j] = -a;
    x[n - j] = a;
  }
  if (n % 2 == 0) x[n / 2] = 0.0;
  return x;
}

}  // namespace

OperatorSet build_lgl(int degree) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw ConfigError("polynomial degree must be in [" + std::to_string(kMinDegree) + ", " +
                      std::to_string(kMaxDegree) + "], got " + std::to_string(degree));
  }
  OperatorSet ops;
  ops.degree = degree;
  const int n = degree;
  const int m = n + 1;
  ops.nodes = lgl_nodes(n);

  ops.weights.resize(m);
  for (int j = 0; j < m; ++j) {
    double p, dp;
    legendre(n, ops.nodes[j], p, dp);
    ops.weights[j] = 2.0 / (n * (n + 1.0) * p * p);
  }

  ops.barycentric.assign(m, 1.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (k != j) ops.barycentric[j] *= ops.nodes[j] - ops.nodes[k];
    }
    ops.barycentric[j] = 1.0 / ops.barycentric[j];
  }

  ops.D.assign(m * m, 0.0);
  for (int i = 0; i < m; ++i) {
    double diag = 0.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double dij =
          ops.barycentric[j] / ops.barycentric[i] / (ops.nodes[i] - ops.nodes[j]);
      ops.D[i * m + j] = dij;
      diag -= dij;
    }
    ops.D[i * m + i] = diag;
  }

  ops.Q.resize(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) ops.Q[i * m + j] = ops.weights[i] * ops.D[i * m + j];

  ops.B.assign(m * m, 0.0);
  ops.B[0] = -1.0;
  ops.B[m * m - 1] = 1.0;
  return ops;
}

std::vector<double> differentiate(const OperatorSet& ops, const std::vector<double>& values) {
  const int m = ops.size();
  if (static_cast<int>(values.size()) != m) {
    throw UsageError("differentiate: expected " + std::to_string(m) + " values, got " +
                     std::to_string(values.size()));
  }
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += ops.D[i * m + j] * values[j];
    out[i] = s;
  }
  return out;
}

double interpolate(const OperatorSet& ops, const std::vector<double>& values, double xi) {
  const int m = ops.size();
  if (static_cast<int>(values.size()) != m) {
    throw UsageError("interpolate: expected " + std::to_string(m) + " values, got " +
                     std::to_string(values.size()));
  }
  if (!(std::abs(xi) <= 1.0)) throw UsageError("interpolate: point outside [-1,1]");
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < m; ++j) {
    const double diff = xi - ops.nodes[j];
    if (diff == 0.0) return values[j];
    const double t = ops.barycentric[j] / diff;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

OperatorResiduals operator_residuals(const OperatorSet& ops) {
  OperatorResiduals r;
  r.degree = ops.degree;
  const int m = ops.size();
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      r.sbp = std::max(r.sbp, std::abs(ops.q(i, j) + ops.q(j, i) - ops.b(i, j)));
      row += ops.d(i, j);
    }
    r.row_sum = std::max(r.row_sum, std::abs(row));
  }
  for (int k = 0; k <= 2 * ops.degree - 1; ++k) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += ops.weights[j] * std::pow(ops.nodes[j], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
    r.quadrature = std::max(r.quadrature, std::abs(s - exact));
  }
  return r;
}

}  // namespace alesolve
