#include "esdg/nodal_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace esdg::sbp_basis {

void legendre_eval(int N, double x, double& p, double& dp) {
  if (N == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  double pm1 = 1.0, pm = x;
  double dpm1 = 0.0, dpm = 1.0;
  for (int k = 2; k <= N; ++k) {
    double pk = ((2.0 * k - 1.0) * x * pm - (k - 1.0) * pm1) / k;
    double dpk = dpm1 + (2.0 * k - 1.0) * pm;
    pm1 = pm;
    pm = pk;
    dpm1 = dpm;
    dpm = dpk;
  }
  p = pm;
  dp = dpm;
}

namespace {

// Interior LGL nodes are the roots of P_N'.  Newton iteration on P_N' with
// Chebyshev-Lobatto starting guesses converges in a handful of steps.
double interior_node(int N, int k) {
  double x = -std::cos(M_PI * k / N);
  for (int it = 0; it < 100; ++it) {
    double p, dp;
    legendre_eval(N, x, p, dp);
    // d/dx P_N' from the Legendre ODE: (1-x^2) P_N'' = 2x P_N' - N(N+1) P_N
    double ddp = (2.0 * x * dp - N * (N + 1.0) * p) / (1.0 - x * x);
    double dx = dp / ddp;
    x -= dx;
    if (std::abs(dx) < 1e-15) break;
  }
  return x;
}

}  // namespace

NodalBasis build_basis(int N) {
  if (N < 1) throw std::invalid_argument("nodal basis requires degree N >= 1");
  NodalBasis b;
  b.N = N;
  int np = N + 1;
  b.nodes.resize(np);
  b.weights.resize(np);
  b.bary.resize(np);
  b.deriv.assign(np * np, 0.0);

  b.nodes[0] = -1.0;
  b.nodes[N] = 1.0;
  for (int k = 1; k < N; ++k) b.nodes[k] = interior_node(N, k);
  // enforce exact symmetry
  for (int k = 0; 2 * k < N; ++k) {
    double s = 0.5 * (b.nodes[N - k] - b.nodes[k]);
    b.nodes[k] = -s;
    b.nodes[N - k] = s;
  }
  if (N % 2 == 0) b.nodes[N / 2] = 0.0;

  for (int k = 0; k <= N; ++k) {
    double p, dp;
    legendre_eval(N, b.nodes[k], p, dp);
    b.weights[k] = 2.0 / (N * (N + 1.0) * p * p);
  }

  // barycentric weights w_j = 1 / prod_{m != j} (x_j - x_m), normalized
  for (int j = 0; j <= N; ++j) {
    double w = 1.0;
    for (int m = 0; m <= N; ++m)
      if (m != j) w *= (b.nodes[j] - b.nodes[m]);
    b.bary[j] = 1.0 / w;
  }
  double scale = std::abs(b.bary[0]);
  for (int j = 0; j <= N; ++j) b.bary[j] /= scale;

  // differentiation matrix from the barycentric weights; the diagonal is the
  // negative row sum so that constants differentiate to exactly zero
  for (int i = 0; i <= N; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      double dij = (b.bary[j] / b.bary[i]) / (b.nodes[i] - b.nodes[j]);
      b.deriv[np * i + j] = dij;
      sum += dij;
    }
    b.deriv[np * i + i] = -sum;
  }
  return b;
}

double barycentric_eval(const NodalBasis& basis, const std::vector<double>& f,
                        double x) {
  if (f.size() != basis.nodes.size())
    throw std::invalid_argument("nodal value count does not match basis");
  double num = 0.0, den = 0.0;
  for (size_t j = 0; j < basis.nodes.size(); ++j) {
    double diff = x - basis.nodes[j];
    if (diff == 0.0) return f[j];
    double t = basis.bary[j] / diff;
    num += t * f[j];
    den += t;
  }
  return num / den;
}

}  // namespace esdg::sbp_basis
