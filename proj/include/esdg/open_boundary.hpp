#ifndef ESDG_OPEN_BOUNDARY_HPP
#define ESDG_OPEN_BOUNDARY_HPP

#include "esdg/algebra.hpp"
#include "esdg/equations.hpp"

//! Open-boundary numerical fluxes with a provable bound on the entropy growth
//! in terms of the boundary data alone.
//!
//! The construction rests on writing the directional entropy flux as a
//! quadratic form, F_ent_n = U^T A U, where U are scaled normal-rotated
//! variables and A is a symmetric matrix whose congruence decomposition
//! A = T Lambda T^T carries the eigenvalues of the flux Jacobian.  Splitting
//! Lambda by wave direction then yields, for each flow regime at the boundary,
//! a closed-form numerical flux whose boundary contribution to the total
//! entropy is bounded by |G|^2, with G built only from the exterior data.
namespace esdg::open_boundary {

//! Root of a^2 + 2a - 2 = 0; makes the congruence columns entropy scaled.
inline const double kAlpha = std::sqrt(3.0) - 1.0;
inline const double kBeta = 2.0 - std::sqrt(3.0);

enum class Regime {
  SupercriticalOutflow,
  SubcriticalOutflow,
  SubcriticalInflow,
  SupercriticalInflow,
};

const char* regime_name(Regime r);

//! Classify by the interior trace.  Ties: |v_n| = c counts as supercritical,
//! v_n = 0 as outflow.  Throws std::invalid_argument if c <= 0.
Regime classify_regime(double vn, double c);

//! Symmetric matrix of the entropy-flux quadratic form.  The quadratic form
//! U^T A U is independent of beta; the default makes A congruent to
//! diag(v_n - c, v_n, v_n + c) via the fixed transform below.
Mat3 boundary_matrix(double vn, double c, double beta = kBeta);

//! Constant congruence transform T (columns scaled by alpha, not orthonormal).
const Mat3& transform_matrix();

//! Jacobian eigenvalues (v_n - c, v_n, v_n + c).
Vec3 lambda_diag(double vn, double c);

//! Diagonal 0/1 indicator selecting the incoming characteristics per regime.
Vec3 indicator_minus(Regime r);

//! Magnitudes |Lambda^-| used by the flux formulas, written per regime so the
//! same expressions apply to the interior trace and to the exterior data
//! state.  Entries may come out negative for data incompatible with the
//! regime; callers taking square roots must check.
Vec3 regime_lambda_mags(Regime r, double vn, double c);

//! Scaled normal-rotated variables U = (g h, c v_n, c v_tau) / sqrt(2 g).
Vec3 scaled_rotated_vars(const equations::SwePrim& w, double n1, double n2,
                         double g);

//! Characteristic-like variables W = T^T U.
Vec3 char_vars(const equations::SwePrim& w, double n1, double n2, double g);

//! Data vector G = sqrt(|Lambda^-|_ext) I^- W_ext for the given regime.
//! Throws std::domain_error naming the offending radicand when the exterior
//! state is incompatible with the regime (for instance supercritical exterior
//! data at a subcritical outflow).
Vec3 data_vector(Regime r, const equations::SwePrim& exterior, double n1,
                 double n2, double g);

// Closed-form open-boundary fluxes, one per regime.  Each checks that the
// interior trace actually lies in its regime and throws std::invalid_argument
// otherwise.  q_ext carries the prescribed exterior data.
Vec3 flux_supercritical_outflow(const equations::SweConserved& q, double n1,
                                double n2, double g);
Vec3 flux_subcritical_outflow(const equations::SweConserved& q,
                              const equations::SweConserved& q_ext, double n1,
                              double n2, double g);
Vec3 flux_subcritical_inflow(const equations::SweConserved& q,
                             const equations::SweConserved& q_ext, double n1,
                             double n2, double g);
Vec3 flux_supercritical_inflow(const equations::SweConserved& q,
                               const equations::SweConserved& q_ext, double n1,
                               double n2, double g);

//! Classify the interior trace and dispatch to the matching regime flux.
Vec3 open_flux(const equations::SweConserved& q,
               const equations::SweConserved& q_ext, double n1, double n2,
               double g, Regime* regime_out = nullptr);

//! Residual of the defining flux condition
//!   F* - F_n = 2 M^-T N^T S T I^- sqrt|Lam^-| (sqrt|Lam^-| W^- - G),
//! which should vanish to round-off for every regime.
Vec3 condition_residual(const equations::SweConserved& q,
                        const equations::SweConserved& q_ext, double n1,
                        double n2, double g);

//! Entropy bound surplus at a boundary point:
//!   gap = W^T Lambda W + U^T 2 T I^- sqrt|Lam^-|(sqrt|Lam^-| W^- - G) + |G|^2.
//! Nonnegative, and algebraically equal to the completed square
//!   (W^+)^T Lambda^+ W^+ + |sqrt|Lam^-| W^- - G|^2.
struct GapCheck {
  double gap;
  double square_form;
};
GapCheck entropy_bound_gap(const equations::SweConserved& q,
                           const equations::SweConserved& q_ext, double n1,
                           double n2, double g);

// ---------------------------------------------------------------------------
// Burgers analog
// ---------------------------------------------------------------------------

//! Inflow flux at the left boundary (u > 0 entering), bounded by the data:
//!   F* = (2 u_ext sqrt(|u_ext| |u|) - u^2/2) / 3.
double burgers_inflow_flux(double u_ext, double u);

//! Boundary flux at either end: `outward` is -1 at the left boundary, +1 at
//! the right.  Outflow reduces to the physical flux; inflow at the right is
//! the mirror image of the left formula.
double burgers_open_flux(double u_ext, double u, int outward);

//! Scaled characteristic variable sqrt(|u|/3) u and the data value G; the
//! entropy growth of the inflow flux is bounded by G^2 = |u_ext|^3 / 3.
double burgers_char_var(double u);
double burgers_data_value(double u_ext);

//! Energy growth contributed by one boundary: -outward (S_flux + u (F* - f)).
double burgers_boundary_term(double u, double fstar, int outward);

// ---------------------------------------------------------------------------
// Reflection-prone comparator: exterior state from the outgoing Riemann
// invariant and a prescribed depth.
// ---------------------------------------------------------------------------

//! v_n,ext = v_n + 2 (c - c_ext) with c_ext = sqrt(g h_ext) from the
//! prescribed depth; tangential velocity copied from the interior.  Applied
//! unconditionally from the interior trace.  Throws std::invalid_argument if
//! the prescribed depth is nonpositive.
equations::SweConserved riemann_invariant_external_state(
    const equations::SweConserved& q, const equations::SwePrim& prescribed,
    double n1, double n2, double g);

}  // namespace esdg::open_boundary

#endif
