#ifndef ESDG_EQUATIONS_HPP
#define ESDG_EQUATIONS_HPP

#include "esdg/algebra.hpp"

namespace esdg::equations {

// ---------------------------------------------------------------------------
// Burgers, f(u) = u^2/2, entropy S = u^2/2
// ---------------------------------------------------------------------------

inline double burgers_flux(double u) { return 0.5 * u * u; }

//! Entropy S, entropy flux, entropy variable v = S'(u), potential psi = v f - F.
struct BurgersEntropy {
  double S;
  double flux;
  double v;
  double psi;
};

inline BurgersEntropy burgers_entropy(double u) {
  return {0.5 * u * u, u * u * u / 3.0, u, u * u * u / 6.0};
}

//! Entropy-conservative two-point flux (uL^2 + uL uR + uR^2) / 6.
inline double burgers_ec_flux(double uL, double uR) {
  return (uL * uL + uL * uR + uR * uR) / 6.0;
}

//! Local Lax-Friedrichs flux with lambda = max(|uL|, |uR|).
double burgers_llf_flux(double uL, double uR);

// ---------------------------------------------------------------------------
// Shallow water, q = (h, h v1, h v2)
// ---------------------------------------------------------------------------

struct SweConserved {
  double h, hv1, hv2;
};

struct SwePrim {
  double h, v1, v2;
};

struct EquationParams {
  double g = 9.81;       //!< gravitational acceleration
  double f0 = 0.0;       //!< Coriolis parameter at reference latitude
  double beta_cor = 0.0; //!< linear variation of the Coriolis parameter in y
};

SwePrim to_prim(const SweConserved& q);
SweConserved to_conserved(const SwePrim& w);

inline Vec3 as_vec(const SweConserved& q) { return {q.h, q.hv1, q.hv2}; }
inline SweConserved from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

inline double wave_celerity(double h, double g) { return std::sqrt(g * h); }

//! Physical flux contracted with the unit normal (n1, n2).
Vec3 swe_flux_normal(const SweConserved& q, double n1, double n2, double g);

//! Total energy entropy pair in the direction (n1, n2):
//! S = h(v1^2+v2^2)/2 + g h^2/2, entropy flux, entropy variables V, potential
//! psi_n = g h^2 v_n / 2.
struct SweEntropy {
  double S;
  double flux;
  Vec3 V;
  double psi;
};

SweEntropy swe_entropy(const SweConserved& q, double n1, double n2, double g);

//! Entropy-conservative two-point flux in coordinate direction dir (0 = x,
//! 1 = y), built from arithmetic means.
Vec3 swe_ec_flux(const SweConserved& qL, const SweConserved& qR, int dir,
                 double g);

//! Local Lax-Friedrichs flux in direction (n1, n2),
//! lambda = max over the two states of |v_n| + c.
Vec3 swe_llf_flux(const SweConserved& qL, const SweConserved& qR, double n1,
                  double n2, double g);

//! HLL flux with Davis wave-speed estimates.
Vec3 swe_hll_flux(const SweConserved& qL, const SweConserved& qR, double n1,
                  double n2, double g);

//! Coriolis source (0, f h v2, -f h v1) with f = f0 + beta_cor * y.  Orthogonal
//! to the entropy variables, so it does not alter the total energy.
Vec3 coriolis_source(const SweConserved& q, double y, const EquationParams& p);

// ---------------------------------------------------------------------------
// Manufactured solutions and initial conditions
// ---------------------------------------------------------------------------

//! Traveling wave u = 2 + sin(pi (x - t) - 0.7); stays in [1, 3] so the left
//! boundary is always inflow and the right always outflow.
double burgers_mms(double x, double t);
double burgers_mms_source(double x, double t);

//! Gaussian pulse advected along the channel diagonal with v = (1,1)/sqrt(2).
//! The momentum equations pick up a source; mass is satisfied exactly.
SwePrim swe_channel_mms(double x, double y, double t, double h0, double g);
Vec3 swe_channel_source(double x, double y, double t, double h0, double g);

//! Unbalanced elliptical vortex initial condition used for the rotating
//! shallow water adjustment runs; starts at rest.
SwePrim geostrophic_ic(double x, double y, double A0, double lam, double RE,
                       double Ri);

}  // namespace esdg::equations

#endif
