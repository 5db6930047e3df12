#ifndef ESDG_NODAL_BASIS_HPP
#define ESDG_NODAL_BASIS_HPP

#include <vector>

namespace esdg::sbp_basis {

//! Legendre-Gauss-Lobatto collocation data for polynomial degree N on [-1,1].
//!
//! The mass matrix is the diagonal of the quadrature weights, and the pair
//! (M, D) satisfies the summation-by-parts relation
//!   M D + (M D)^T = diag(-1, 0, ..., 0, +1)
//! to round-off, which the discrete entropy analysis relies on.
struct NodalBasis {
  int N = 0;                      //!< polynomial degree
  std::vector<double> nodes;      //!< N+1 LGL nodes, ascending
  std::vector<double> weights;    //!< quadrature weights, sum to 2
  std::vector<double> bary;       //!< barycentric weights for interpolation
  std::vector<double> deriv;      //!< (N+1)x(N+1) differentiation matrix, row major

  double d(int i, int j) const { return deriv[(N + 1) * i + j]; }
};

//! Build the LGL basis for degree N >= 1. Throws std::invalid_argument for N < 1.
NodalBasis build_basis(int N);

//! Evaluate the interpolant of nodal values `f` at point x in [-1,1] using the
//! barycentric form. Exact at the nodes themselves.
double barycentric_eval(const NodalBasis& basis, const std::vector<double>& f,
                        double x);

//! Legendre polynomial P_N(x) and derivative, by recurrence.
void legendre_eval(int N, double x, double& p, double& dp);

}  // namespace esdg::sbp_basis

#endif
