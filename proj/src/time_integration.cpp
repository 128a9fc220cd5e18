#include "alesolve/time_integration.hpp"

#include <cmath>

namespace alesolve {

void RkScheme::validate() const {
  const int s = stages();
  if (s < 1 || static_cast<int>(a.size()) != s || static_cast<int>(c.size()) != s)
    throw ConfigError("RK scheme '" + name + "' has inconsistent sizes");
  double sum_b = 0.0;
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(a[i].size()) != s) throw ConfigError("RK matrix must be square");
    for (int j = i; j < s; ++j)
      if (a[i][j] != 0.0) throw ConfigError("RK scheme '" + name + "' is not explicit");
    sum_b += b[i];
  }
  if (std::abs(sum_b - 1.0) > 1e-14) throw ConfigError("RK weights of '" + name + "' do not sum to 1");
}

RkScheme RkScheme::carpenter_kennedy_rk4() {
  const std::array<double, 5> A{0.0, -567301805773.0 / 1357537059087.0,
                                -2404267990393.0 / 2016746695238.0,
                                -3550918686646.0 / 2091501179385.0,
                                -1275806237668.0 / 842570457699.0};
  const std::array<double, 5> B{1432997174477.0 / 9575080441755.0,
                                5161836677717.0 / 13612068292357.0,
                                1720146321549.0 / 2090206949498.0,
                                3134564353537.0 / 4481467310338.0,
                                2277821191437.0 / 14882151754819.0};
  // 2N-storage recursion: dU_i = A_i dU_{i-1} + dt F(U_{i-1}); U_i = U_{i-1} + B_i dU_i.
  // Stage i receives F_j with weight alpha_ij = A_i alpha_{i-1,j} (alpha_ii = 1), and the
  // state after stage i accumulates B_i alpha_ij. These are the Butcher rows.
  constexpr int s = 5;
  double alpha[s][s] = {};
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < i; ++j) alpha[i][j] = A[i] * alpha[i - 1][j];
    alpha[i][i] = 1.0;
  }
  std::vector<std::vector<double>> rows(s + 1, std::vector<double>(s, 0.0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j <= i; ++j) rows[i + 1][j] = rows[i][j] + B[i] * alpha[i][j];
  RkScheme sc;
  sc.name = "ck45";
  sc.a.assign(s, std::vector<double>(s, 0.0));
  for (int i = 1; i < s; ++i) sc.a[i] = rows[i];
  sc.b = rows[s];
  sc.c.resize(s);
  for (int i = 0; i < s; ++i) {
    double sum = 0.0;
    for (int j = 0; j < s; ++j) sum += sc.a[i][j];
    sc.c[i] = sum;
  }
  return sc;
}

RkScheme RkScheme::classical_rk4() {
  RkScheme sc;
  sc.name = "rk4";
  sc.a = {{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1, 0}};
  sc.b = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
  sc.c = {0.0, 0.5, 0.5, 1.0};
  return sc;
}

RkScheme RkScheme::by_name(const std::string& name) {
  if (name == "ck45") return carpenter_kennedy_rk4();
  if (name == "rk4") return classical_rk4();
  throw ConfigError("unknown RK scheme '" + name + "' (expected ck45 or rk4)");
}

}  // namespace alesolve
