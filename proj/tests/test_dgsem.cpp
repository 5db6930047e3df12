#include "doctest.h"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "esdg/dgsem.hpp"
#include "esdg/timeloop.hpp"

using namespace esdg;
using namespace esdg::dgsem;
using equations::SweConserved;
using equations::SwePrim;

namespace {

const double kPi = 3.14159265358979323846;

BurgersSolver periodic_burgers(int K, int N) {
  return BurgersSolver(mesh::build_interval_mesh(-1.0, 1.0, K),
                       sbp_basis::build_basis(N), InteriorFlux::EC,
                       BoundaryTreatment::Periodic, BoundaryTreatment::Periodic,
                       nullptr, nullptr);
}

SweSolver periodic_swe(int n, int N) {
  auto msh = mesh::build_parallelogram_channel(
      {0, 0}, {1, 0}, {0, 1}, n, n, {"periodic", "periodic", "periodic", "periodic"});
  return SweSolver(std::move(msh), sbp_basis::build_basis(N), {}, InteriorFlux::EC,
                   {}, nullptr, nullptr);
}

SwePrim periodic_ic(double x, double y, double) {
  return {2.0 + 0.2 * std::sin(2 * kPi * x) * std::sin(2 * kPi * y),
          0.3 * std::cos(2 * kPi * x), -0.2 * std::sin(2 * kPi * y)};
}

}  // namespace

TEST_CASE("periodic entropy-conservative discretizations conserve entropy") {
  SUBCASE("Burgers, semidiscrete rate") {
    auto s = periodic_burgers(4, 6);
    auto u = s.project([](double x, double) { return 0.5 + std::sin(kPi * x); });
    auto rep = s.entropy_report(u, 0.0);
    CHECK(std::abs(rep.dEdt) < 1e-12);
    CHECK(rep.budget == 0.0);  // no open boundary
  }
  SUBCASE("Burgers, integrated drift is pure time-integration error") {
    // the semidiscrete rate vanishes, so the only drift left is the RK
    // truncation error, which must fall like dt^4
    auto drift = [](double cfl) {
      auto s = periodic_burgers(4, 6);
      auto u = s.project([](double x, double) { return 0.5 + std::sin(kPi * x); });
      double E0 = s.entropy_report(u, 0.0).E;
      timeloop::RunParams p;
      p.cfl = cfl;
      p.t_end = 0.2;  // before the sine steepens into a shock
      auto res = timeloop::run_time_loop(s, u, p);
      REQUIRE(res.status.outcome == timeloop::RunStatus::Outcome::Completed);
      return std::abs(s.entropy_report(u, p.t_end).E - E0);
    };
    double d4 = drift(0.4), d1 = drift(0.1);
    CHECK(d1 < 1e-9);
    CHECK(d4 / d1 > 100.0);  // dt^4 scaling would give 256
  }
  SUBCASE("shallow water, semidiscrete rate") {
    auto s = periodic_swe(3, 4);
    auto q = s.project(periodic_ic);
    auto rep = s.entropy_report(q, 0.0);
    CHECK(std::abs(rep.dEdt) < 1e-10 * std::max(1.0, rep.E));
    CHECK(rep.budget == 0.0);
  }
  SUBCASE("shallow water, integrated drift and conservation") {
    auto s = periodic_swe(3, 4);
    auto q = s.project(periodic_ic);
    const auto& mt = s.metrics();
    const auto& w = s.basis().weights;
    auto totals = [&](const std::vector<double>& v) {
      std::array<double, 3> m{};
      for (int e = 0; e < s.elements(); ++e)
        for (int j = 0; j < s.np(); ++j)
          for (int i = 0; i < s.np(); ++i) {
            double wj = w[i] * w[j] * mt.J[mt.vid(e, i, j)];
            for (int c = 0; c < 3; ++c) m[c] += wj * v[s.sid(e, i, j, c)];
          }
      return m;
    };
    auto m0 = totals(q);
    double E0 = s.entropy_report(q, 0.0).E;
    auto run = [&](double cfl) {
      auto qq = s.project(periodic_ic);
      timeloop::RunParams p;
      p.cfl = cfl;
      p.t_end = 0.1;
      auto res = timeloop::run_time_loop(s, qq, p);
      REQUIRE(res.status.outcome == timeloop::RunStatus::Outcome::Completed);
      return qq;
    };
    auto q4 = run(0.4);
    auto m1 = totals(q4);
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(m1[c] - m0[c]) < 1e-12 * std::max(1.0, std::abs(m0[c])));
    double d4 = std::abs(s.entropy_report(q4, 0.1).E - E0);
    double d1 = std::abs(s.entropy_report(run(0.1), 0.1).E - E0);
    CHECK(d1 < 1e-8);
    CHECK(d4 / d1 > 100.0);  // dt^4 scaling would give 256
  }
}

TEST_CASE("manufactured Burgers rhs converges spectrally") {
  auto build = [](int N) {
    return BurgersSolver(mesh::build_interval_mesh(-1.0, 1.0, 4),
                         sbp_basis::build_basis(N), InteriorFlux::EC,
                         BoundaryTreatment::NewNonlinear,
                         BoundaryTreatment::NewNonlinear,
                         equations::burgers_mms, equations::burgers_mms_source);
  };
  double t = 0.7;
  auto err = [&](int N) {
    auto s = build(N);
    auto u = s.project(equations::burgers_mms, t);
    std::vector<double> dudt;
    s.rhs(u, t, dudt);
    double worst = 0;
    for (int e = 0; e < s.elements(); ++e)
      for (int i = 0; i <= N; ++i) {
        double exact = -kPi * std::cos(kPi * (s.x(e, i) - t) - 0.7);
        worst = std::max(worst, std::abs(dudt[s.idx(e, i)] - exact));
      }
    return worst;
  };
  double e6 = err(6), e12 = err(12);
  CHECK(e12 < 1e-7);
  CHECK(e6 / e12 > 100.0);
}

TEST_CASE("manufactured channel rhs converges spectrally") {
  double h0 = 32.0, g = 9.81;
  // square patch around the pulse position at the sample time
  auto build = [&](int N) {
    auto msh = mesh::build_parallelogram_channel(
        {-3.3, -1.2}, {1.5, 0}, {0, 1.5}, 2, 2, {"s", "e", "n", "w"});
    std::map<std::string, BoundarySpec> bnd;
    for (const char* tag : {"s", "e", "n", "w"})
      bnd[tag] = {BoundaryTreatment::NewNonlinear, 0.0};
    equations::EquationParams prm;
    prm.g = g;
    return SweSolver(
        std::move(msh), sbp_basis::build_basis(N), prm, InteriorFlux::EC, bnd,
        [&](double x, double y, double t) {
          return equations::swe_channel_mms(x, y, t, h0, g);
        },
        [&](const SweConserved&, double x, double y, double t) {
          return equations::swe_channel_source(x, y, t, h0, g);
        });
  };
  double t = 0.4;
  auto err = [&](int N) {
    auto s = build(N);
    auto q = s.project(
        [&](double x, double y, double tt) {
          return equations::swe_channel_mms(x, y, tt, h0, g);
        },
        t);
    std::vector<double> dqdt;
    s.rhs(q, t, dqdt);
    const auto& mt = s.metrics();
    double worst = 0, eps = 1e-6;
    for (int e = 0; e < s.elements(); ++e)
      for (int j = 0; j < s.np(); ++j)
        for (int i = 0; i < s.np(); ++i) {
          int v = mt.vid(e, i, j);
          auto qp = equations::to_conserved(
              equations::swe_channel_mms(mt.x[v], mt.y[v], t + eps, h0, g));
          auto qm = equations::to_conserved(
              equations::swe_channel_mms(mt.x[v], mt.y[v], t - eps, h0, g));
          Vec3 exact = {(qp.h - qm.h) / (2 * eps), (qp.hv1 - qm.hv1) / (2 * eps),
                        (qp.hv2 - qm.hv2) / (2 * eps)};
          for (int c = 0; c < 3; ++c)
            worst = std::max(worst, std::abs(dqdt[s.sid(e, i, j, c)] - exact[c]));
        }
    return worst;
  };
  double e4 = err(4), e8 = err(8);
  CHECK(e8 < 1e-2);
  CHECK(e4 / e8 > 50.0);
}

TEST_CASE("free-stream preservation on a sheared mesh") {
  SwePrim bg{1.7, 0.3, -0.2};
  auto msh = mesh::build_parallelogram_channel(
      {0, 0}, {1.3, 0.2}, {-0.1, 0.9}, 3, 2, {"s", "e", "n", "w"});
  std::map<std::string, BoundarySpec> bnd;
  for (const char* tag : {"s", "e", "n", "w"})
    bnd[tag] = {BoundaryTreatment::NewNonlinear, 0.0};
  SweSolver s(std::move(msh), sbp_basis::build_basis(4), {}, InteriorFlux::EC,
              bnd, [bg](double, double, double) { return bg; }, nullptr);
  auto q = s.project([bg](double, double, double) { return bg; });
  std::vector<double> dqdt;
  s.rhs(q, 0.0, dqdt);
  double worst = 0;
  for (double v : dqdt) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-12);

  // and it stays free-stream over a hundred steps
  auto q0 = q;
  std::vector<double> reg, work;
  double t = 0, dt = 0.5 * s.stable_dt(q);
  for (int step = 0; step < 100; ++step) {
    timeloop::lsrk45_step(
        q, t, dt,
        [&](const std::vector<double>& u, double tt, std::vector<double>& d) {
          s.rhs(u, tt, d);
        },
        reg, work);
    t += dt;
  }
  worst = 0;
  for (size_t i = 0; i < q.size(); ++i)
    worst = std::max(worst, std::abs(q[i] - q0[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("LLF interior flux dissipates interface jumps, EC does not") {
  // a nodal interpolant of a continuous profile has no interface jumps, so
  // the dissipative term only shows up on a genuinely discontinuous state
  auto fill = [](const BurgersSolver& s) {
    std::vector<double> u(s.size());
    for (int e = 0; e < s.elements(); ++e)
      for (int i = 0; i <= s.degree(); ++i)
        u[s.idx(e, i)] = (e % 2 == 0) ? 1.5 : 0.5;
    return u;
  };
  auto llf = BurgersSolver(mesh::build_interval_mesh(-1.0, 1.0, 4),
                           sbp_basis::build_basis(6), InteriorFlux::LLF,
                           BoundaryTreatment::Periodic,
                           BoundaryTreatment::Periodic, nullptr, nullptr);
  CHECK(llf.entropy_report(fill(llf), 0.0).dEdt < -1e-3);
  auto ec = periodic_burgers(4, 6);
  CHECK(std::abs(ec.entropy_report(fill(ec), 0.0).dEdt) < 1e-12);
}

TEST_CASE("solver configuration validation") {
  auto basis = sbp_basis::build_basis(3);
  auto m1 = mesh::build_interval_mesh(-1, 1, 3);
  auto dataf = [](double, double) { return 1.0; };
  SUBCASE("periodic must apply to both interval ends") {
    CHECK_THROWS_AS(BurgersSolver(m1, basis, InteriorFlux::EC,
                                  BoundaryTreatment::Periodic,
                                  BoundaryTreatment::NewNonlinear, dataf, nullptr),
                    std::invalid_argument);
  }
  SUBCASE("hll interior flux is shallow-water only") {
    CHECK_THROWS_AS(BurgersSolver(m1, basis, InteriorFlux::HLL,
                                  BoundaryTreatment::NewNonlinear,
                                  BoundaryTreatment::NewNonlinear, dataf, nullptr),
                    std::invalid_argument);
  }
  SUBCASE("characteristic exterior reconstructions are shallow-water only") {
    for (auto bt : {BoundaryTreatment::RiemannInvariantLLF,
                    BoundaryTreatment::RiemannInvariantHLL,
                    BoundaryTreatment::ExactData}) {
      CHECK_THROWS_AS(BurgersSolver(m1, basis, InteriorFlux::EC, bt, bt, dataf,
                                    nullptr),
                      std::invalid_argument);
    }
  }
  SUBCASE("open ends need data") {
    CHECK_THROWS_AS(BurgersSolver(m1, basis, InteriorFlux::EC,
                                  BoundaryTreatment::NewNonlinear,
                                  BoundaryTreatment::NewNonlinear, nullptr,
                                  nullptr),
                    std::invalid_argument);
  }
  SUBCASE("every boundary tag needs a treatment") {
    auto msh = mesh::build_parallelogram_channel({0, 0}, {1, 0}, {0, 1}, 1, 1,
                                                 {"s", "e", "n", "w"});
    std::map<std::string, BoundarySpec> bnd;
    bnd["s"] = bnd["e"] = bnd["n"] = {BoundaryTreatment::LLF, 0.0};  // "w" missing
    auto dat = [](double, double, double) { return SwePrim{1, 0, 0}; };
    CHECK_THROWS_AS(
        SweSolver(msh, basis, {}, InteriorFlux::EC, bnd, dat, nullptr),
        std::invalid_argument);
  }
  SUBCASE("riemann treatments need a positive prescribed depth") {
    auto msh = mesh::build_parallelogram_channel({0, 0}, {1, 0}, {0, 1}, 1, 1,
                                                 {"s", "e", "n", "w"});
    std::map<std::string, BoundarySpec> bnd;
    for (const char* tag : {"s", "e", "n", "w"})
      bnd[tag] = {BoundaryTreatment::RiemannInvariantLLF, 0.0};
    auto dat = [](double, double, double) { return SwePrim{1, 0, 0}; };
    CHECK_THROWS_AS(
        SweSolver(msh, basis, {}, InteriorFlux::EC, bnd, dat, nullptr),
        std::invalid_argument);
  }
  SUBCASE("periodic coupling is a mesh property, not a treatment") {
    auto msh = mesh::build_parallelogram_channel({0, 0}, {1, 0}, {0, 1}, 1, 1,
                                                 {"s", "e", "n", "w"});
    std::map<std::string, BoundarySpec> bnd;
    for (const char* tag : {"s", "e", "n", "w"})
      bnd[tag] = {BoundaryTreatment::Periodic, 0.0};
    auto dat = [](double, double, double) { return SwePrim{1, 0, 0}; };
    CHECK_THROWS_AS(
        SweSolver(msh, basis, {}, InteriorFlux::EC, bnd, dat, nullptr),
        std::invalid_argument);
  }
}

TEST_CASE("state checks abort with a reason and a timestamp") {
  auto s = periodic_burgers(2, 3);
  std::vector<double> u(s.size(), 1.0);
  CHECK_NOTHROW(s.check_state(u, 0.5));
  u[3] = std::nan("");
  try {
    s.check_state(u, 0.5);
    FAIL("expected AbortError");
  } catch (const AbortError& e) {
    CHECK(e.reason == AbortError::Reason::NaN);
    CHECK(e.t == 0.5);
  }
}
