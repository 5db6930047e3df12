#ifndef ESDG_DGSEM_HPP
#define ESDG_DGSEM_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "esdg/equations.hpp"
#include "esdg/mesh.hpp"
#include "esdg/nodal_basis.hpp"
#include "esdg/open_boundary.hpp"

namespace esdg::dgsem {

enum class InteriorFlux { EC, LLF, HLL };

enum class BoundaryTreatment {
  NewNonlinear,         //!< regime-dispatched open-boundary flux
  RiemannInvariantLLF,  //!< exterior state from the outgoing invariant, LLF
  RiemannInvariantHLL,  //!< same exterior state, HLL
  EC,                   //!< entropy-conservative flux against the data
  LLF,                  //!< LLF flux against the data
  ExactData,            //!< physical flux of the data state
  Periodic,
};

//! Unrecoverable state failure during a run; carries the simulation time at
//! which it was detected.
struct AbortError : std::runtime_error {
  enum class Reason { NaN, NonpositiveHeight };
  Reason reason;
  double t;
  AbortError(Reason r, double t_, const std::string& what)
      : std::runtime_error(what), reason(r), t(t_) {}
};

//! One sample of the entropy monitor.  `budget` integrates |G|^2 over the
//! open boundary with the face quadrature, where G is formed per face node
//! from the regime of the interior trace and the configured exterior data;
//! data entries incompatible with the regime contribute zero, which can only
//! understate the budget.  The provable-bound property is margin >= 0 up to
//! round-off.
struct EntropyReport {
  double t = 0;
  double E = 0;
  double dEdt = 0;
  double budget = 0;
  double margin = 0;
  double min_h = 0;
  double max_speed = 0;
};

// ---------------------------------------------------------------------------
// 1D Burgers
// ---------------------------------------------------------------------------

class BurgersSolver {
 public:
  using DataFn = std::function<double(double x, double t)>;
  using SourceFn = std::function<double(double x, double t)>;

  BurgersSolver(mesh::Mesh1D m, sbp_basis::NodalBasis basis,
                InteriorFlux interior, BoundaryTreatment left,
                BoundaryTreatment right, DataFn data, SourceFn source);

  int elements() const { return msh.K; }
  int degree() const { return bas.N; }
  size_t size() const { return size_t(msh.K) * (bas.N + 1); }
  size_t idx(int e, int i) const { return size_t(e) * (bas.N + 1) + i; }
  double x(int e, int i) const { return msh.x_of(e, bas.nodes[i]); }
  const sbp_basis::NodalBasis& basis() const { return bas; }
  const mesh::Mesh1D& grid() const { return msh; }

  std::vector<double> project(const DataFn& f, double t = 0.0) const;

  void rhs(const std::vector<double>& u, double t,
           std::vector<double>& dudt) const;
  EntropyReport entropy_report(const std::vector<double>& u, double t) const;
  double stable_dt(const std::vector<double>& u) const;
  void check_state(const std::vector<double>& u, double t) const;

 private:
  double boundary_flux(BoundaryTreatment bt, double u_in, double u_ext,
                       int outward) const;

  mesh::Mesh1D msh;
  sbp_basis::NodalBasis bas;
  InteriorFlux interior;
  BoundaryTreatment left, right;
  DataFn data;
  SourceFn source;
};

// ---------------------------------------------------------------------------
// 2D shallow water
// ---------------------------------------------------------------------------

struct BoundarySpec {
  BoundaryTreatment treatment = BoundaryTreatment::NewNonlinear;
  double prescribed_h = 0.0;  //!< depth for the Riemann-invariant treatments
};

class SweSolver {
 public:
  using DataFn = std::function<equations::SwePrim(double x, double y, double t)>;
  using SourceFn = std::function<Vec3(const equations::SweConserved& q,
                                      double x, double y, double t)>;

  SweSolver(mesh::QuadMesh m, sbp_basis::NodalBasis basis,
            equations::EquationParams params, InteriorFlux interior,
            std::map<std::string, BoundarySpec> boundary, DataFn data,
            SourceFn source);

  int elements() const { return int(msh.elems.size()); }
  int degree() const { return bas.N; }
  size_t size() const { return size_t(elements()) * np() * np() * 3; }
  int np() const { return bas.N + 1; }
  size_t sid(int e, int i, int j, int c) const {
    return size_t(mt.vid(e, i, j)) * 3 + c;
  }
  const sbp_basis::NodalBasis& basis() const { return bas; }
  const mesh::QuadMesh& grid() const { return msh; }
  const mesh::MetricTerms& metrics() const { return mt; }
  const equations::EquationParams& params() const { return prm; }

  std::vector<double> project(const DataFn& f, double t = 0.0) const;

  void rhs(const std::vector<double>& q, double t,
           std::vector<double>& dqdt) const;
  EntropyReport entropy_report(const std::vector<double>& q, double t) const;
  double stable_dt(const std::vector<double>& q) const;
  void check_state(const std::vector<double>& q, double t) const;

 private:
  Vec3 boundary_flux(const BoundarySpec& spec,
                     const equations::SweConserved& q_in, double x, double y,
                     double n1, double n2, double t) const;

  mesh::QuadMesh msh;
  sbp_basis::NodalBasis bas;
  mesh::MetricTerms mt;
  equations::EquationParams prm;
  InteriorFlux interior;
  std::map<std::string, BoundarySpec> bnd;
  DataFn data;
  SourceFn source;
  mutable std::vector<double> prim;  //!< (h, v1, v2) scratch, filled per rhs
};

}  // namespace esdg::dgsem

#endif
