#include "esdg/open_boundary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace esdg::open_boundary {

using equations::SweConserved;
using equations::SwePrim;
using equations::to_prim;

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SupercriticalOutflow: return "supercritical outflow";
    case Regime::SubcriticalOutflow: return "subcritical outflow";
    case Regime::SubcriticalInflow: return "subcritical inflow";
    case Regime::SupercriticalInflow: return "supercritical inflow";
  }
  return "?";
}

Regime classify_regime(double vn, double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("regime classification requires c > 0");
  if (std::abs(vn) >= c)
    return vn >= 0.0 ? Regime::SupercriticalOutflow
                     : Regime::SupercriticalInflow;
  return vn >= 0.0 ? Regime::SubcriticalOutflow : Regime::SubcriticalInflow;
}

Mat3 boundary_matrix(double vn, double c, double beta) {
  Mat3 a;
  a(0, 0) = 2.0 * beta * vn;
  a(0, 1) = a(1, 0) = (1.0 - beta) * c;
  a(1, 1) = vn;
  a(2, 2) = vn;
  return a;
}

const Mat3& transform_matrix() {
  static const Mat3 t = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Mat3 m;
    m(0, 0) = kAlpha * s;
    m(0, 2) = kAlpha * s;
    m(1, 0) = -s;
    m(1, 2) = s;
    m(2, 1) = 1.0;
    return m;
  }();
  return t;
}

Vec3 lambda_diag(double vn, double c) { return {vn - c, vn, vn + c}; }

Vec3 indicator_minus(Regime r) {
  switch (r) {
    case Regime::SupercriticalOutflow: return {0, 0, 0};
    case Regime::SubcriticalOutflow: return {1, 0, 0};
    case Regime::SubcriticalInflow: return {1, 1, 0};
    case Regime::SupercriticalInflow: return {1, 1, 1};
  }
  return {0, 0, 0};
}

Vec3 regime_lambda_mags(Regime r, double vn, double c) {
  switch (r) {
    case Regime::SupercriticalOutflow: return {0, 0, 0};
    case Regime::SubcriticalOutflow: return {c - vn, 0, 0};
    case Regime::SubcriticalInflow: return {std::abs(vn) + c, std::abs(vn), 0};
    case Regime::SupercriticalInflow:
      return {std::abs(vn) + c, std::abs(vn), std::abs(vn) - c};
  }
  return {0, 0, 0};
}

namespace {

// Square roots of the regime magnitudes, rejecting data states whose
// wave speeds are incompatible with the regime of the interior trace.
Vec3 checked_sqrt_mags(Regime r, double vn, double c, const char* who) {
  Vec3 m = regime_lambda_mags(r, vn, c);
  for (int k = 0; k < 3; ++k) {
    if (m[k] < 0.0) {
      const char* what = "";
      if (r == Regime::SubcriticalOutflow && k == 0) what = "(c - v_n)";
      if (r == Regime::SupercriticalInflow && k == 2) what = "(|v_n| - c)";
      std::ostringstream os;
      os << regime_name(r) << " flux: radicand " << what << " = " << m[k]
         << " is negative for the " << who << " state";
      throw std::domain_error(os.str());
    }
    m[k] = std::sqrt(m[k]);
  }
  return m;
}

struct Trace {
  double h, v1, v2, vn, vt, c;
};

Trace trace_of(const SweConserved& q, double n1, double n2, double g) {
  SwePrim w = to_prim(q);
  Trace t;
  t.h = w.h;
  t.v1 = w.v1;
  t.v2 = w.v2;
  t.vn = n1 * w.v1 + n2 * w.v2;
  t.vt = -n2 * w.v1 + n1 * w.v2;
  t.c = std::sqrt(g * w.h);
  return t;
}

void require_regime(const Trace& t, Regime expected) {
  Regime got = classify_regime(t.vn, t.c);
  if (got != expected) {
    std::ostringstream os;
    os << regime_name(expected) << " flux called for a " << regime_name(got)
       << " trace (v_n = " << t.vn << ", c = " << t.c << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Vec3 scaled_rotated_vars(const SwePrim& w, double n1, double n2, double g) {
  double vn = n1 * w.v1 + n2 * w.v2;
  double vt = -n2 * w.v1 + n1 * w.v2;
  double c = std::sqrt(g * w.h);
  double s = 1.0 / std::sqrt(2.0 * g);
  return {s * g * w.h, s * c * vn, s * c * vt};
}

Vec3 char_vars(const SwePrim& w, double n1, double n2, double g) {
  return transform_matrix().transpose() * scaled_rotated_vars(w, n1, n2, g);
}

Vec3 data_vector(Regime r, const SwePrim& exterior, double n1, double n2,
                 double g) {
  double vn = n1 * exterior.v1 + n2 * exterior.v2;
  double c = std::sqrt(g * exterior.h);
  Vec3 sq = checked_sqrt_mags(r, vn, c, "exterior");
  Vec3 im = indicator_minus(r);
  Vec3 w = char_vars(exterior, n1, n2, g);
  return {sq[0] * im[0] * w[0], sq[1] * im[1] * w[1], sq[2] * im[2] * w[2]};
}

Vec3 flux_supercritical_outflow(const SweConserved& q, double n1, double n2,
                                double g) {
  Trace t = trace_of(q, n1, n2, g);
  require_regime(t, Regime::SupercriticalOutflow);
  return equations::swe_flux_normal(q, n1, n2, g);
}

Vec3 flux_subcritical_outflow(const SweConserved& q, const SweConserved& q_ext,
                              double n1, double n2, double g) {
  const double a = kAlpha;
  Trace t = trace_of(q, n1, n2, g);
  require_regime(t, Regime::SubcriticalOutflow);
  Trace x = trace_of(q_ext, n1, n2, g);
  double rad = (t.c - t.vn) * (x.c - x.vn);
  if (rad < 0.0)
    checked_sqrt_mags(Regime::SubcriticalOutflow, x.vn, x.c, "exterior");
  double lam1 = std::sqrt(rad);
  double h = t.h, c = t.c, vn = t.vn;
  double data = lam1 * x.c * (a * x.c - x.vn);
  double mass = 0.5 * a * h * vn + (1.0 - a) * h * c +
                0.5 * a / g * c * vn * vn - 0.5 * a / g * data;
  auto mom = [&](double v, double n) {
    return (0.25 * a + 0.5) * h * v * vn + 0.5 * (1.0 - a) * h * c * v +
           0.25 * a / g * c * v * vn * vn + 0.5 * (1.0 - a) * g * h * h * n +
           0.5 * h * vn * ((1.0 + a) * c - vn) * n -
           0.25 / g * data * (a * v - 2.0 * c * n);
  };
  return {mass, mom(t.v1, n1), mom(t.v2, n2)};
}

Vec3 flux_subcritical_inflow(const SweConserved& q, const SweConserved& q_ext,
                             double n1, double n2, double g) {
  const double a = kAlpha;
  Trace t = trace_of(q, n1, n2, g);
  require_regime(t, Regime::SubcriticalInflow);
  Trace x = trace_of(q_ext, n1, n2, g);
  double lam1 = std::sqrt((std::abs(t.vn) + t.c) * (std::abs(x.vn) + x.c));
  double lam2 = std::sqrt(std::abs(t.vn) * std::abs(x.vn));
  double hbar = std::sqrt(t.h * x.h);
  double h = t.h, c = t.c, vn = t.vn;
  double data = lam1 * x.c * (a * x.c - x.vn);
  double mass = 0.5 * a * h * vn + (1.0 - a) * h * c +
                0.5 * a / g * c * vn * vn - 0.5 * a / g * data;
  auto mom = [&](double v, double n, double tang) {
    return (0.25 * a - 0.5) * h * v * vn + 0.5 * (1.0 - a) * h * c * v +
           0.25 * a / g * c * v * vn * vn + 0.5 * (1.0 - a) * g * h * h * n +
           0.5 * h * vn * ((1.0 + a) * c + vn) * n -
           0.25 / g * data * (a * v - 2.0 * c * n) + tang;
  };
  return {mass, mom(t.v1, n1, lam2 * hbar * x.vt * n2),
          mom(t.v2, n2, -lam2 * hbar * x.vt * n1)};
}

Vec3 flux_supercritical_inflow(const SweConserved& q, const SweConserved& q_ext,
                               double n1, double n2, double g) {
  const double a = kAlpha;
  Trace t = trace_of(q, n1, n2, g);
  require_regime(t, Regime::SupercriticalInflow);
  Trace x = trace_of(q_ext, n1, n2, g);
  double rad3 = (std::abs(t.vn) - t.c) * (std::abs(x.vn) - x.c);
  if (std::abs(x.vn) < x.c)
    checked_sqrt_mags(Regime::SupercriticalInflow, x.vn, x.c, "exterior");
  double lam1 = std::sqrt((std::abs(t.vn) + t.c) * (std::abs(x.vn) + x.c));
  double lam2 = std::sqrt(std::abs(t.vn) * std::abs(x.vn));
  double lam3 = std::sqrt(rad3);
  double hbar = std::sqrt(t.h * x.h);
  double h = t.h, c = t.c, vn = t.vn;
  double d1 = lam1 * x.c * (a * x.c - x.vn);
  double d3 = lam3 * x.c * (a * x.c + x.vn);
  double mass = (a - 1.0) * h * vn - 0.5 * a / g * d1 - 0.5 * a / g * d3;
  auto mom = [&](double v, double n, double tang) {
    return (0.5 * a - 1.0) * h * v * vn +
           0.5 * (1.0 - 2.0 * a) * g * h * h * n -
           0.25 / g * d1 * (a * v - 2.0 * c * n) -
           0.25 / g * d3 * (a * v + 2.0 * c * n) + tang;
  };
  return {mass, mom(t.v1, n1, lam2 * hbar * x.vt * n2),
          mom(t.v2, n2, -lam2 * hbar * x.vt * n1)};
}

Vec3 open_flux(const SweConserved& q, const SweConserved& q_ext, double n1,
               double n2, double g, Regime* regime_out) {
  Trace t = trace_of(q, n1, n2, g);
  Regime r = classify_regime(t.vn, t.c);
  if (regime_out) *regime_out = r;
  switch (r) {
    case Regime::SupercriticalOutflow:
      return flux_supercritical_outflow(q, n1, n2, g);
    case Regime::SubcriticalOutflow:
      return flux_subcritical_outflow(q, q_ext, n1, n2, g);
    case Regime::SubcriticalInflow:
      return flux_subcritical_inflow(q, q_ext, n1, n2, g);
    case Regime::SupercriticalInflow:
      return flux_supercritical_inflow(q, q_ext, n1, n2, g);
  }
  return {0, 0, 0};
}

Vec3 condition_residual(const SweConserved& q, const SweConserved& q_ext,
                        double n1, double n2, double g) {
  Trace t = trace_of(q, n1, n2, g);
  Regime r = classify_regime(t.vn, t.c);
  Vec3 fstar = open_flux(q, q_ext, n1, n2, g);
  Vec3 fn = equations::swe_flux_normal(q, n1, n2, g);

  SwePrim w = to_prim(q);
  SwePrim wx = to_prim(q_ext);
  Vec3 sq_int = checked_sqrt_mags(r, t.vn, t.c, "interior");
  Vec3 im = indicator_minus(r);
  Vec3 W = char_vars(w, n1, n2, g);
  Vec3 G = data_vector(r, wx, n1, n2, g);
  Vec3 inner{};
  for (int k = 0; k < 3; ++k)
    inner[k] = sq_int[k] * (sq_int[k] * im[k] * W[k] - G[k]);

  Mat3 S;
  double s = 1.0 / std::sqrt(2.0 * g);
  S(0, 0) = s * g;
  S(1, 1) = s * t.c;
  S(2, 2) = s * t.c;
  Mat3 Nr;
  Nr(0, 0) = 1.0;
  Nr(1, 1) = n1;
  Nr(1, 2) = n2;
  Nr(2, 1) = -n2;
  Nr(2, 2) = n1;
  Mat3 Minvt;
  Minvt(0, 0) = 1.0 / g;
  Minvt(1, 0) = w.v1 / (2.0 * g);
  Minvt(1, 1) = 1.0;
  Minvt(2, 0) = w.v2 / (2.0 * g);
  Minvt(2, 2) = 1.0;

  Vec3 rhs = Minvt * (Nr.transpose() * (S * (transform_matrix() * inner)));
  return (fstar - fn) - 2.0 * rhs;
}

GapCheck entropy_bound_gap(const SweConserved& q, const SweConserved& q_ext,
                           double n1, double n2, double g) {
  Trace t = trace_of(q, n1, n2, g);
  Regime r = classify_regime(t.vn, t.c);
  SwePrim w = to_prim(q);
  SwePrim wx = to_prim(q_ext);
  Vec3 lam = lambda_diag(t.vn, t.c);
  Vec3 sq_int = checked_sqrt_mags(r, t.vn, t.c, "interior");
  Vec3 im = indicator_minus(r);
  Vec3 U = scaled_rotated_vars(w, n1, n2, g);
  Vec3 W = char_vars(w, n1, n2, g);
  Vec3 G = data_vector(r, wx, n1, n2, g);

  Vec3 inner{};
  for (int k = 0; k < 3; ++k)
    inner[k] = sq_int[k] * (sq_int[k] * im[k] * W[k] - G[k]);
  double lhs = dot(W, {lam[0] * W[0], lam[1] * W[1], lam[2] * W[2]}) +
               2.0 * dot(U, transform_matrix() * inner);
  GapCheck out;
  out.gap = lhs + dot(G, G);

  double quad = 0.0, sqr = 0.0;
  for (int k = 0; k < 3; ++k) {
    double ip = 1.0 - im[k];
    quad += ip * W[k] * lam[k] * ip * W[k];
    double d = sq_int[k] * im[k] * W[k] - G[k];
    sqr += d * d;
  }
  out.square_form = quad + sqr;
  return out;
}

double burgers_inflow_flux(double u_ext, double u) {
  return (2.0 * u_ext * std::sqrt(std::abs(u_ext) * std::abs(u)) -
          0.5 * u * u) /
         3.0;
}

double burgers_open_flux(double u_ext, double u, int outward) {
  if (outward != -1 && outward != 1)
    throw std::invalid_argument("outward side indicator must be -1 or +1");
  bool inflow = (outward == -1) ? (u > 0.0) : (u < 0.0);
  if (!inflow) return equations::burgers_flux(u);
  // the right-boundary inflow formula is the x -> -x, u -> -u mirror image
  if (outward == 1) return burgers_inflow_flux(-u_ext, -u);
  return burgers_inflow_flux(u_ext, u);
}

double burgers_char_var(double u) { return std::sqrt(std::abs(u) / 3.0) * u; }

double burgers_data_value(double u_ext) { return burgers_char_var(u_ext); }

double burgers_boundary_term(double u, double fstar, int outward) {
  equations::BurgersEntropy e = equations::burgers_entropy(u);
  return -outward * (e.flux + e.v * (fstar - equations::burgers_flux(u)));
}

SweConserved riemann_invariant_external_state(const SweConserved& q,
                                              const SwePrim& prescribed,
                                              double n1, double n2, double g) {
  if (!(prescribed.h > 0.0))
    throw std::invalid_argument(
        "riemann invariant exterior state requires a positive prescribed "
        "depth");
  SwePrim w = to_prim(q);
  double vn = n1 * w.v1 + n2 * w.v2;
  double vt = -n2 * w.v1 + n1 * w.v2;
  double c = std::sqrt(g * w.h);
  double cb = std::sqrt(g * prescribed.h);
  double vnb = vn + 2.0 * (c - cb);
  SwePrim out;
  out.h = prescribed.h;
  out.v1 = n1 * vnb - n2 * vt;
  out.v2 = n2 * vnb + n1 * vt;
  return equations::to_conserved(out);
}

}  // namespace esdg::open_boundary
