#include "esdg/dgsem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace esdg::dgsem {

using equations::SweConserved;
using equations::SwePrim;

// ---------------------------------------------------------------------------
// Burgers
// ---------------------------------------------------------------------------

BurgersSolver::BurgersSolver(mesh::Mesh1D m, sbp_basis::NodalBasis basis,
                             InteriorFlux interior_, BoundaryTreatment left_,
                             BoundaryTreatment right_, DataFn data_,
                             SourceFn source_)
    : msh(m),
      bas(std::move(basis)),
      interior(interior_),
      left(left_),
      right(right_),
      data(std::move(data_)),
      source(std::move(source_)) {
  if ((left == BoundaryTreatment::Periodic) !=
      (right == BoundaryTreatment::Periodic))
    throw std::invalid_argument(
        "periodic treatment must apply to both interval ends");
  for (BoundaryTreatment bt : {left, right}) {
    if (bt == BoundaryTreatment::RiemannInvariantLLF ||
        bt == BoundaryTreatment::RiemannInvariantHLL ||
        bt == BoundaryTreatment::ExactData)
      throw std::invalid_argument(
          "boundary treatment not supported for the Burgers solver");
  }
  if (interior == InteriorFlux::HLL)
    throw std::invalid_argument("hll interior flux is shallow-water only");
  if (left != BoundaryTreatment::Periodic && !data)
    throw std::invalid_argument("open interval ends require a data function");
}

std::vector<double> BurgersSolver::project(const DataFn& f, double t) const {
  std::vector<double> u(size());
  for (int e = 0; e < msh.K; ++e)
    for (int i = 0; i <= bas.N; ++i) u[idx(e, i)] = f(x(e, i), t);
  return u;
}

double BurgersSolver::boundary_flux(BoundaryTreatment bt, double u_in,
                                    double u_ext, int outward) const {
  switch (bt) {
    case BoundaryTreatment::NewNonlinear:
      return open_boundary::burgers_open_flux(u_ext, u_in, outward);
    case BoundaryTreatment::EC:
      return equations::burgers_ec_flux(u_ext, u_in);
    case BoundaryTreatment::LLF:
      return outward < 0 ? equations::burgers_llf_flux(u_ext, u_in)
                         : equations::burgers_llf_flux(u_in, u_ext);
    default:
      throw std::logic_error("unexpected interval-end treatment");
  }
}

void BurgersSolver::rhs(const std::vector<double>& u, double t,
                        std::vector<double>& dudt) const {
  const int N = bas.N, np = N + 1, K = msh.K;
  const double invJ2 = 2.0 / msh.jacobian();
  dudt.assign(size(), 0.0);

  for (int e = 0; e < K; ++e) {
    const double* ue = &u[idx(e, 0)];
    double* de = &dudt[idx(e, 0)];
    for (int i = 0; i < np; ++i) {
      double acc = 0.0;
      for (int m = 0; m < np; ++m)
        acc -= bas.d(i, m) * equations::burgers_ec_flux(ue[i], ue[m]);
      de[i] = invJ2 * acc;
    }
  }

  const double wend = bas.weights[0];
  const double coef = 1.0 / (wend * msh.jacobian());
  auto interface_flux = [&](double uL, double uR) {
    return interior == InteriorFlux::EC ? equations::burgers_ec_flux(uL, uR)
                                        : equations::burgers_llf_flux(uL, uR);
  };
  for (int e = 0; e + 1 < K; ++e) {
    double uL = u[idx(e, N)], uR = u[idx(e + 1, 0)];
    double fs = interface_flux(uL, uR);
    dudt[idx(e, N)] -= coef * (fs - equations::burgers_flux(uL));
    dudt[idx(e + 1, 0)] += coef * (fs - equations::burgers_flux(uR));
  }

  if (left == BoundaryTreatment::Periodic) {
    double uL = u[idx(K - 1, N)], uR = u[idx(0, 0)];
    double fs = interface_flux(uL, uR);
    dudt[idx(K - 1, N)] -= coef * (fs - equations::burgers_flux(uL));
    dudt[idx(0, 0)] += coef * (fs - equations::burgers_flux(uR));
  } else {
    double u0 = u[idx(0, 0)], uN = u[idx(K - 1, N)];
    double fl = boundary_flux(left, u0, data(msh.a, t), -1);
    dudt[idx(0, 0)] += coef * (fl - equations::burgers_flux(u0));
    double fr = boundary_flux(right, uN, data(msh.b, t), 1);
    dudt[idx(K - 1, N)] -= coef * (fr - equations::burgers_flux(uN));
  }

  if (source)
    for (int e = 0; e < K; ++e)
      for (int i = 0; i < np; ++i) dudt[idx(e, i)] += source(x(e, i), t);
}

EntropyReport BurgersSolver::entropy_report(const std::vector<double>& u,
                                            double t) const {
  std::vector<double> dudt;
  rhs(u, t, dudt);
  EntropyReport r;
  r.t = t;
  const double J = msh.jacobian();
  r.min_h = std::numeric_limits<double>::max();
  for (int e = 0; e < msh.K; ++e)
    for (int i = 0; i <= bas.N; ++i) {
      double ui = u[idx(e, i)];
      double w = bas.weights[i] * J;
      r.E += w * 0.5 * ui * ui;
      r.dEdt += w * ui * dudt[idx(e, i)];
      r.min_h = std::min(r.min_h, ui);
      r.max_speed = std::max(r.max_speed, std::abs(ui));
    }
  if (left != BoundaryTreatment::Periodic) {
    double u0 = u[idx(0, 0)], uN = u[idx(msh.K - 1, bas.N)];
    if (u0 > 0.0) {
      double gl = open_boundary::burgers_data_value(data(msh.a, t));
      r.budget += gl * gl;
    }
    if (uN < 0.0) {
      double gr = open_boundary::burgers_data_value(data(msh.b, t));
      r.budget += gr * gr;
    }
  }
  r.margin = r.budget - r.dEdt;
  return r;
}

double BurgersSolver::stable_dt(const std::vector<double>& u) const {
  double dt = std::numeric_limits<double>::infinity();
  for (int e = 0; e < msh.K; ++e) {
    double lam = 0.0;
    for (int i = 0; i <= bas.N; ++i)
      lam = std::max(lam, std::abs(u[idx(e, i)]));
    if (lam > 0.0)
      dt = std::min(dt, msh.dx() / (lam * (2.0 * bas.N + 1.0)));
  }
  return dt;
}

void BurgersSolver::check_state(const std::vector<double>& u, double t) const {
  for (double v : u)
    if (!std::isfinite(v))
      throw AbortError(AbortError::Reason::NaN, t,
                       "solution is no longer finite");
}

// ---------------------------------------------------------------------------
// Shallow water
// ---------------------------------------------------------------------------

SweSolver::SweSolver(mesh::QuadMesh m, sbp_basis::NodalBasis basis,
                     equations::EquationParams params, InteriorFlux interior_,
                     std::map<std::string, BoundarySpec> boundary, DataFn data_,
                     SourceFn source_)
    : msh(std::move(m)),
      bas(std::move(basis)),
      mt(mesh::compute_metrics(msh, bas)),
      prm(params),
      interior(interior_),
      bnd(std::move(boundary)),
      data(std::move(data_)),
      source(std::move(source_)) {
  bool needs_data = false;
  for (const auto& bf : msh.boundary) {
    auto it = bnd.find(bf.tag);
    if (it == bnd.end())
      throw std::invalid_argument("no boundary treatment configured for tag '" +
                                  bf.tag + "'");
    const BoundarySpec& spec = it->second;
    if (spec.treatment == BoundaryTreatment::Periodic)
      throw std::invalid_argument(
          "periodic coupling is requested through the mesh tags, not a "
          "boundary treatment");
    if ((spec.treatment == BoundaryTreatment::RiemannInvariantLLF ||
         spec.treatment == BoundaryTreatment::RiemannInvariantHLL) &&
        !(spec.prescribed_h > 0.0))
      throw std::invalid_argument(
          "riemann invariant treatment requires a positive prescribed depth "
          "for tag '" +
          bf.tag + "'");
    needs_data = true;
  }
  if (needs_data && !data)
    throw std::invalid_argument("open boundaries require a data function");
}

std::vector<double> SweSolver::project(const DataFn& f, double t) const {
  std::vector<double> q(size());
  for (int e = 0; e < elements(); ++e)
    for (int j = 0; j < np(); ++j)
      for (int i = 0; i < np(); ++i) {
        int v = mt.vid(e, i, j);
        SweConserved c = equations::to_conserved(f(mt.x[v], mt.y[v], t));
        q[sid(e, i, j, 0)] = c.h;
        q[sid(e, i, j, 1)] = c.hv1;
        q[sid(e, i, j, 2)] = c.hv2;
      }
  return q;
}

Vec3 SweSolver::boundary_flux(const BoundarySpec& spec, const SweConserved& q_in,
                              double x, double y, double n1, double n2,
                              double t) const {
  const double g = prm.g;
  switch (spec.treatment) {
    case BoundaryTreatment::NewNonlinear: {
      SweConserved q_ext = equations::to_conserved(data(x, y, t));
      return open_boundary::open_flux(q_in, q_ext, n1, n2, g);
    }
    case BoundaryTreatment::RiemannInvariantLLF: {
      SweConserved q_ext = open_boundary::riemann_invariant_external_state(
          q_in, {spec.prescribed_h, 0.0, 0.0}, n1, n2, g);
      return equations::swe_llf_flux(q_in, q_ext, n1, n2, g);
    }
    case BoundaryTreatment::RiemannInvariantHLL: {
      SweConserved q_ext = open_boundary::riemann_invariant_external_state(
          q_in, {spec.prescribed_h, 0.0, 0.0}, n1, n2, g);
      return equations::swe_hll_flux(q_in, q_ext, n1, n2, g);
    }
    case BoundaryTreatment::EC: {
      SweConserved q_ext = equations::to_conserved(data(x, y, t));
      Vec3 fx = equations::swe_ec_flux(q_in, q_ext, 0, g);
      Vec3 fy = equations::swe_ec_flux(q_in, q_ext, 1, g);
      return n1 * fx + n2 * fy;
    }
    case BoundaryTreatment::LLF: {
      SweConserved q_ext = equations::to_conserved(data(x, y, t));
      return equations::swe_llf_flux(q_in, q_ext, n1, n2, g);
    }
    case BoundaryTreatment::ExactData: {
      SweConserved q_ext = equations::to_conserved(data(x, y, t));
      return equations::swe_flux_normal(q_ext, n1, n2, g);
    }
    case BoundaryTreatment::Periodic:
      break;
  }
  throw std::logic_error("unexpected boundary treatment");
}

void SweSolver::rhs(const std::vector<double>& q, double t,
                    std::vector<double>& dqdt) const {
  const int N = bas.N, npv = N + 1, nel = elements();
  const double g = prm.g;
  dqdt.assign(size(), 0.0);
  prim.resize(size());

  for (size_t v = 0; v < size() / 3; ++v) {
    double h = q[3 * v];
    if (!(h > 0.0)) {
      if (std::isfinite(h))
        throw AbortError(AbortError::Reason::NonpositiveHeight, t,
                         "water depth reached zero");
      throw AbortError(AbortError::Reason::NaN, t,
                       "solution is no longer finite");
    }
    prim[3 * v] = h;
    prim[3 * v + 1] = q[3 * v + 1] / h;
    prim[3 * v + 2] = q[3 * v + 2] / h;
  }

  // split-form volume terms: two-point fluxes against every node that shares
  // a mesh line, contracted with arithmetically averaged metric vectors
  for (int e = 0; e < nel; ++e) {
    for (int j = 0; j < npv; ++j)
      for (int i = 0; i < npv; ++i) {
        int v = mt.vid(e, i, j);
        const double h = prim[3 * v], v1 = prim[3 * v + 1],
                     v2 = prim[3 * v + 2];
        const double a1x = mt.Ja1_1[v], a1y = mt.Ja1_2[v];
        const double a2x = mt.Ja2_1[v], a2y = mt.Ja2_2[v];
        double acc0 = 0, acc1 = 0, acc2 = 0;
        for (int m = 0; m < npv; ++m) {
          {
            int vm = mt.vid(e, m, j);
            double hb = prim[3 * vm], v1b = prim[3 * vm + 1],
                   v2b = prim[3 * vm + 2];
            double nx = 0.5 * (a1x + mt.Ja1_1[vm]);
            double ny = 0.5 * (a1y + mt.Ja1_2[vm]);
            double ha = 0.5 * (h + hb);
            double v1a = 0.5 * (v1 + v1b);
            double v2a = 0.5 * (v2 + v2b);
            double pa = 0.25 * g * (h * h + hb * hb);
            double vna = nx * v1a + ny * v2a;
            double d = bas.d(i, m);
            acc0 -= d * ha * vna;
            acc1 -= d * (ha * v1a * vna + pa * nx);
            acc2 -= d * (ha * v2a * vna + pa * ny);
          }
          {
            int vm = mt.vid(e, i, m);
            double hb = prim[3 * vm], v1b = prim[3 * vm + 1],
                   v2b = prim[3 * vm + 2];
            double nx = 0.5 * (a2x + mt.Ja2_1[vm]);
            double ny = 0.5 * (a2y + mt.Ja2_2[vm]);
            double ha = 0.5 * (h + hb);
            double v1a = 0.5 * (v1 + v1b);
            double v2a = 0.5 * (v2 + v2b);
            double pa = 0.25 * g * (h * h + hb * hb);
            double vna = nx * v1a + ny * v2a;
            double d = bas.d(j, m);
            acc0 -= d * ha * vna;
            acc1 -= d * (ha * v1a * vna + pa * nx);
            acc2 -= d * (ha * v2a * vna + pa * ny);
          }
        }
        double invJ2 = 2.0 / mt.J[v];
        dqdt[3 * v + 0] = invJ2 * acc0;
        dqdt[3 * v + 1] = invJ2 * acc1;
        dqdt[3 * v + 2] = invJ2 * acc2;
      }
  }

  const double wend = bas.weights[0];
  auto state_at = [&](int v) {
    return SweConserved{q[3 * v], q[3 * v + 1], q[3 * v + 2]};
  };
  auto interface_flux = [&](const SweConserved& qL, const SweConserved& qR,
                            double n1, double n2) {
    switch (interior) {
      case InteriorFlux::EC: {
        Vec3 fx = equations::swe_ec_flux(qL, qR, 0, g);
        Vec3 fy = equations::swe_ec_flux(qL, qR, 1, g);
        return n1 * fx + n2 * fy;
      }
      case InteriorFlux::LLF:
        return equations::swe_llf_flux(qL, qR, n1, n2, g);
      case InteriorFlux::HLL:
        return equations::swe_hll_flux(qL, qR, n1, n2, g);
    }
    return Vec3{0, 0, 0};
  };

  for (size_t f = 0; f < msh.interior.size(); ++f) {
    const mesh::InteriorFace& fc = msh.interior[f];
    const auto& perm = mt.interior_perm[f];
    for (int k = 0; k < npv; ++k) {
      int il, jl, ir, jr;
      mesh::face_node(fc.side_l, k, N, il, jl);
      mesh::face_node(fc.side_r, perm[k], N, ir, jr);
      int vl = mt.vid(fc.elem_l, il, jl);
      int vr = mt.vid(fc.elem_r, ir, jr);
      const mesh::FaceGeom& gl = mt.face[fc.elem_l][fc.side_l][k];
      const mesh::FaceGeom& gr = mt.face[fc.elem_r][fc.side_r][perm[k]];
      SweConserved qL = state_at(vl), qR = state_at(vr);
      Vec3 fs = interface_flux(qL, qR, gl.n1, gl.n2);
      Vec3 fnL = equations::swe_flux_normal(qL, gl.n1, gl.n2, g);
      Vec3 fnR = equations::swe_flux_normal(qR, gr.n1, gr.n2, g);
      double cl = gl.sdet / (wend * mt.J[vl]);
      double cr = gr.sdet / (wend * mt.J[vr]);
      for (int c = 0; c < 3; ++c) {
        dqdt[3 * vl + c] -= cl * (fs[c] - fnL[c]);
        dqdt[3 * vr + c] -= cr * (-fs[c] - fnR[c]);
      }
    }
  }

  for (const auto& bf : msh.boundary) {
    const BoundarySpec& spec = bnd.at(bf.tag);
    for (int k = 0; k < npv; ++k) {
      int i, j;
      mesh::face_node(bf.side, k, N, i, j);
      int v = mt.vid(bf.elem, i, j);
      const mesh::FaceGeom& ge = mt.face[bf.elem][bf.side][k];
      SweConserved q_in = state_at(v);
      Vec3 fs = boundary_flux(spec, q_in, mt.x[v], mt.y[v], ge.n1, ge.n2, t);
      Vec3 fn = equations::swe_flux_normal(q_in, ge.n1, ge.n2, g);
      double cb = ge.sdet / (wend * mt.J[v]);
      for (int c = 0; c < 3; ++c) dqdt[3 * v + c] -= cb * (fs[c] - fn[c]);
    }
  }

  if (source) {
    for (int e = 0; e < nel; ++e)
      for (int j = 0; j < npv; ++j)
        for (int i = 0; i < npv; ++i) {
          int v = mt.vid(e, i, j);
          Vec3 s = source(state_at(v), mt.x[v], mt.y[v], t);
          dqdt[3 * v + 0] += s[0];
          dqdt[3 * v + 1] += s[1];
          dqdt[3 * v + 2] += s[2];
        }
  }
}

EntropyReport SweSolver::entropy_report(const std::vector<double>& q,
                                        double t) const {
  std::vector<double> dqdt;
  rhs(q, t, dqdt);
  EntropyReport r;
  r.t = t;
  r.min_h = std::numeric_limits<double>::max();
  const double g = prm.g;
  for (int e = 0; e < elements(); ++e)
    for (int j = 0; j < np(); ++j)
      for (int i = 0; i < np(); ++i) {
        int v = mt.vid(e, i, j);
        SweConserved qv{q[3 * v], q[3 * v + 1], q[3 * v + 2]};
        equations::SweEntropy en = equations::swe_entropy(qv, 1.0, 0.0, g);
        double w = bas.weights[i] * bas.weights[j] * mt.J[v];
        r.E += w * en.S;
        r.dEdt += w * (en.V[0] * dqdt[3 * v] + en.V[1] * dqdt[3 * v + 1] +
                       en.V[2] * dqdt[3 * v + 2]);
        equations::SwePrim wv = equations::to_prim(qv);
        double c = equations::wave_celerity(wv.h, g);
        r.min_h = std::min(r.min_h, wv.h);
        r.max_speed = std::max(r.max_speed, std::max(std::abs(wv.v1) + c,
                                                     std::abs(wv.v2) + c));
      }

  // data budget: |G|^2 integrated over the open boundary, G formed from the
  // interior-trace regime and the configured data; entries whose radicand is
  // incompatible with the regime contribute zero (understating the budget)
  for (const auto& bf : msh.boundary) {
    for (int k = 0; k < np(); ++k) {
      int i, j;
      mesh::face_node(bf.side, k, bas.N, i, j);
      int v = mt.vid(bf.elem, i, j);
      const mesh::FaceGeom& ge = mt.face[bf.elem][bf.side][k];
      SweConserved qv{q[3 * v], q[3 * v + 1], q[3 * v + 2]};
      equations::SwePrim wv = equations::to_prim(qv);
      double vn = ge.n1 * wv.v1 + ge.n2 * wv.v2;
      double c = equations::wave_celerity(wv.h, g);
      open_boundary::Regime reg = open_boundary::classify_regime(vn, c);
      equations::SwePrim ext = data(mt.x[v], mt.y[v], t);
      double vnx = ge.n1 * ext.v1 + ge.n2 * ext.v2;
      double cx = equations::wave_celerity(ext.h, g);
      Vec3 mags = open_boundary::regime_lambda_mags(reg, vnx, cx);
      Vec3 im = open_boundary::indicator_minus(reg);
      Vec3 wx = open_boundary::char_vars(ext, ge.n1, ge.n2, g);
      double g2 = 0.0;
      for (int cidx = 0; cidx < 3; ++cidx) {
        double mag = std::max(mags[cidx], 0.0);
        double gc = std::sqrt(mag) * im[cidx] * wx[cidx];
        g2 += gc * gc;
      }
      double wk = bas.weights[k];
      r.budget += wk * ge.sdet * g2;
    }
  }
  r.margin = r.budget - r.dEdt;
  return r;
}

double SweSolver::stable_dt(const std::vector<double>& q) const {
  double dt = std::numeric_limits<double>::infinity();
  const double g = prm.g;
  for (int e = 0; e < elements(); ++e) {
    double lam = 0.0;
    for (int j = 0; j < np(); ++j)
      for (int i = 0; i < np(); ++i) {
        int v = mt.vid(e, i, j);
        double h = q[3 * v];
        double c = equations::wave_celerity(h, g);
        double v1 = q[3 * v + 1] / h, v2 = q[3 * v + 2] / h;
        lam = std::max(lam, std::max(std::abs(v1), std::abs(v2)) + c);
      }
    if (lam > 0.0)
      dt = std::min(dt, mt.min_edge[e] / (lam * (2.0 * bas.N + 1.0)));
  }
  return dt;
}

void SweSolver::check_state(const std::vector<double>& q, double t) const {
  for (double v : q)
    if (!std::isfinite(v))
      throw AbortError(AbortError::Reason::NaN, t,
                       "solution is no longer finite");
  for (size_t v = 0; v < q.size(); v += 3)
    if (!(q[v] > 0.0))
      throw AbortError(AbortError::Reason::NonpositiveHeight, t,
                       "water depth reached zero");
}

}  // namespace esdg::dgsem
