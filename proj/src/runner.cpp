#include "esdg/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "esdg/verify.hpp"

namespace esdg::cli {

using equations::SweConserved;
using equations::SwePrim;

namespace {

dgsem::BoundaryTreatment treatment_of(const ScenarioConfig& c,
                                      const std::string& tag) {
  return c.boundary.at(tag).treatment;
}

dgsem::BurgersSolver::DataFn burgers_data(const ScenarioConfig&) {
  return [](double x, double t) { return equations::burgers_mms(x, t); };
}

dgsem::SweSolver::DataFn swe_data(const ScenarioConfig& c) {
  switch (c.scenario) {
    case ScenarioConfig::Scenario::SweChannel: {
      double h0 = c.h0, g = c.params.g;
      return [h0, g](double x, double y, double t) {
        return equations::swe_channel_mms(x, y, t, h0, g);
      };
    }
    case ScenarioConfig::Scenario::Geostrophic:
      return [](double, double, double) { return SwePrim{1.0, 0.0, 0.0}; };
    default:
      return {};
  }
}

}  // namespace

dgsem::BurgersSolver build_burgers_solver(const ScenarioConfig& c) {
  mesh::Mesh1D m =
      mesh::build_interval_mesh(c.mesh1d.a, c.mesh1d.b, c.mesh1d.elements);
  sbp_basis::NodalBasis basis = sbp_basis::build_basis(c.degree);
  auto source = [](double x, double t) {
    return equations::burgers_mms_source(x, t);
  };
  return dgsem::BurgersSolver(m, std::move(basis), c.interior_flux,
                              treatment_of(c, "left"), treatment_of(c, "right"),
                              burgers_data(c), source);
}

dgsem::SweSolver build_swe_solver(const ScenarioConfig& c) {
  mesh::QuadMesh m = mesh::build_parallelogram_channel(
      c.mesh2d.origin, c.mesh2d.edge_u, c.mesh2d.edge_v, c.mesh2d.nx,
      c.mesh2d.ny, c.mesh2d.tags);
  sbp_basis::NodalBasis basis = sbp_basis::build_basis(c.degree);

  dgsem::SweSolver::SourceFn source;
  if (c.scenario == ScenarioConfig::Scenario::SweChannel) {
    double h0 = c.h0, g = c.params.g;
    source = [h0, g](const SweConserved&, double x, double y, double t) {
      return equations::swe_channel_source(x, y, t, h0, g);
    };
  } else if (c.scenario == ScenarioConfig::Scenario::Geostrophic &&
             (c.params.f0 != 0.0 || c.params.beta_cor != 0.0)) {
    equations::EquationParams p = c.params;
    source = [p](const SweConserved& q, double, double y, double) {
      return equations::coriolis_source(q, y, p);
    };
  }
  return dgsem::SweSolver(std::move(m), std::move(basis), c.params,
                          c.interior_flux, c.boundary, swe_data(c), source);
}

std::vector<double> initial_state_burgers(const ScenarioConfig& c,
                                          const dgsem::BurgersSolver& s) {
  (void)c;
  return s.project(
      [](double x, double t) { return equations::burgers_mms(x, t); }, 0.0);
}

std::vector<double> initial_state_swe(const ScenarioConfig& c,
                                      const dgsem::SweSolver& s) {
  if (c.scenario == ScenarioConfig::Scenario::Geostrophic) {
    double A0 = c.A0, lam = c.lambda, RE = c.RE, Ri = c.Ri;
    return s.project(
        [A0, lam, RE, Ri](double x, double y, double) {
          return equations::geostrophic_ic(x, y, A0, lam, RE, Ri);
        },
        0.0);
  }
  double h0 = c.h0, g = c.params.g;
  return s.project(
      [h0, g](double x, double y, double t) {
        return equations::swe_channel_mms(x, y, t, h0, g);
      },
      0.0);
}

bool scenario_has_exact(const ScenarioConfig& c) {
  return c.scenario != ScenarioConfig::Scenario::Geostrophic;
}

std::vector<double> l2_error_burgers(const ScenarioConfig& c,
                                     const dgsem::BurgersSolver& s,
                                     const std::vector<double>& u, double t) {
  (void)c;
  const auto& b = s.basis();
  double J = s.grid().jacobian();
  double err2 = 0, vol = 0;
  for (int e = 0; e < s.elements(); ++e)
    for (int i = 0; i <= b.N; ++i) {
      double d = u[s.idx(e, i)] - equations::burgers_mms(s.x(e, i), t);
      err2 += b.weights[i] * J * d * d;
      vol += b.weights[i] * J;
    }
  return {std::sqrt(err2 / vol)};
}

std::vector<double> l2_error_swe(const ScenarioConfig& c,
                                 const dgsem::SweSolver& s,
                                 const std::vector<double>& q, double t) {
  const auto& b = s.basis();
  const auto& mt = s.metrics();
  std::array<double, 3> err2{};
  double vol = 0;
  for (int e = 0; e < s.elements(); ++e)
    for (int j = 0; j < s.np(); ++j)
      for (int i = 0; i < s.np(); ++i) {
        int v = mt.vid(e, i, j);
        SweConserved ex = equations::to_conserved(
            equations::swe_channel_mms(mt.x[v], mt.y[v], t, c.h0, c.params.g));
        double w = b.weights[i] * b.weights[j] * mt.J[v];
        double d0 = q[3 * v] - ex.h;
        double d1 = q[3 * v + 1] - ex.hv1;
        double d2 = q[3 * v + 2] - ex.hv2;
        err2[0] += w * d0 * d0;
        err2[1] += w * d1 * d1;
        err2[2] += w * d2 * d2;
        vol += w;
      }
  return {std::sqrt(err2[0] / vol), std::sqrt(err2[1] / vol),
          std::sqrt(err2[2] / vol)};
}

timeloop::RunParams run_params(const ScenarioConfig& c) {
  timeloop::RunParams p;
  p.cfl = c.cfl;
  p.t_end = c.t_end;
  p.dt_max = c.dt_max;
  p.log_stride = c.log_stride;
  return p;
}

std::string resolve_output_dir(const ScenarioConfig& c) {
  if (const char* env = std::getenv("ESDG_OUTPUT_DIR"))
    if (*env) return env;
  return c.out_dir;
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  return f;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_entropy_series(const std::string& path,
                          const std::vector<dgsem::EntropyReport>& series) {
  std::ofstream f = open_output(path);
  f << "t,E,dEdt,budget,margin,min_h,max_speed\n";
  for (const auto& r : series)
    f << fmt(r.t) << ',' << fmt(r.E) << ',' << fmt(r.dEdt) << ','
      << fmt(r.budget) << ',' << fmt(r.margin) << ',' << fmt(r.min_h) << ','
      << fmt(r.max_speed) << '\n';
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

void write_snapshot_burgers(const std::string& path,
                            const dgsem::BurgersSolver& s,
                            const std::vector<double>& u) {
  std::ofstream f = open_output(path);
  f << "elem,i,j,x,y,u\n";
  for (int e = 0; e < s.elements(); ++e)
    for (int i = 0; i <= s.degree(); ++i)
      f << e << ',' << i << ",0," << fmt(s.x(e, i)) << ",0,"
        << fmt(u[s.idx(e, i)]) << '\n';
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

void write_snapshot_swe(const std::string& path, const dgsem::SweSolver& s,
                        const std::vector<double>& q) {
  std::ofstream f = open_output(path);
  f << "elem,i,j,x,y,h,hv1,hv2\n";
  const auto& mt = s.metrics();
  for (int e = 0; e < s.elements(); ++e)
    for (int j = 0; j < s.np(); ++j)
      for (int i = 0; i < s.np(); ++i) {
        int v = mt.vid(e, i, j);
        f << e << ',' << i << ',' << j << ',' << fmt(mt.x[v]) << ','
          << fmt(mt.y[v]) << ',' << fmt(q[3 * v]) << ',' << fmt(q[3 * v + 1])
          << ',' << fmt(q[3 * v + 2]) << '\n';
      }
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

int cmd_run(const std::string& config_path, std::ostream& out,
            std::ostream& err) {
  ScenarioConfig c;
  try {
    c = parse_config_file(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  }
  try {
    std::string dir = resolve_output_dir(c);
    auto path = [&dir](const std::string& name) {
      return (std::filesystem::path(dir) / name).string();
    };

    timeloop::RunResult result;
    bool completed = false;
    if (c.equation == ScenarioConfig::Equation::Burgers) {
      dgsem::BurgersSolver solver = build_burgers_solver(c);
      std::vector<double> u = initial_state_burgers(c, solver);
      result = timeloop::run_time_loop(solver, u, run_params(c));
      write_entropy_series(path(c.entropy_series), result.series);
      completed =
          result.status.outcome == timeloop::RunStatus::Outcome::Completed;
      if (completed) {
        write_snapshot_burgers(path(c.snapshot), solver, u);
        if (scenario_has_exact(c)) {
          auto e2 = l2_error_burgers(c, solver, u, result.status.t_final);
          out << "l2_error " << fmt(e2[0]) << "\n";
        }
      }
    } else {
      dgsem::SweSolver solver = build_swe_solver(c);
      std::vector<double> q = initial_state_swe(c, solver);
      result = timeloop::run_time_loop(solver, q, run_params(c));
      write_entropy_series(path(c.entropy_series), result.series);
      completed =
          result.status.outcome == timeloop::RunStatus::Outcome::Completed;
      if (completed) {
        write_snapshot_swe(path(c.snapshot), solver, q);
        if (scenario_has_exact(c)) {
          auto e2 = l2_error_swe(c, solver, q, result.status.t_final);
          out << "l2_error " << fmt(e2[0]) << " " << fmt(e2[1]) << " "
              << fmt(e2[2]) << "\n";
        }
      }
    }

    if (completed) {
      out << "Completed t=" << fmt(result.status.t_final)
          << " steps=" << result.status.steps << "\n";
      return 0;
    }
    err << "Aborted at t=" << fmt(result.status.t_final) << " ("
        << (result.status.reason == dgsem::AbortError::Reason::NaN
                ? "solution not finite"
                : "nonpositive depth")
        << ")\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(std::ostream& out) {
  verify::Report rep = verify::run_all();
  verify::print(rep, out);
  return rep.all_pass() ? 0 : 1;
}

int cmd_convergence(const std::string& config_path,
                    const std::vector<int>& degrees, std::ostream& out,
                    std::ostream& err) {
  ScenarioConfig c;
  try {
    c = parse_config_file(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  }
  if (!scenario_has_exact(c)) {
    err << "convergence study requires a scenario with an exact solution\n";
    return 1;
  }
  if (degrees.empty()) {
    err << "no degrees given\n";
    return 1;
  }
  try {
    std::vector<std::vector<double>> errs;
    for (int N : degrees) {
      ScenarioConfig cn = c;
      cn.degree = N;
      if (c.equation == ScenarioConfig::Equation::Burgers) {
        dgsem::BurgersSolver solver = build_burgers_solver(cn);
        std::vector<double> u = initial_state_burgers(cn, solver);
        auto result = timeloop::run_time_loop(solver, u, run_params(cn));
        if (result.status.outcome != timeloop::RunStatus::Outcome::Completed) {
          err << "run at degree " << N << " aborted at t="
              << fmt(result.status.t_final) << "\n";
          return 2;
        }
        errs.push_back(l2_error_burgers(cn, solver, u, result.status.t_final));
      } else {
        dgsem::SweSolver solver = build_swe_solver(cn);
        std::vector<double> q = initial_state_swe(cn, solver);
        auto result = timeloop::run_time_loop(solver, q, run_params(cn));
        if (result.status.outcome != timeloop::RunStatus::Outcome::Completed) {
          err << "run at degree " << N << " aborted at t="
              << fmt(result.status.t_final) << "\n";
          return 2;
        }
        errs.push_back(l2_error_swe(cn, solver, q, result.status.t_final));
      }
    }
    out << "degree";
    size_t nvar = errs[0].size();
    for (size_t v = 0; v < nvar; ++v) out << " l2_err_" << v;
    for (size_t v = 0; v < nvar; ++v) out << " ratio_" << v;
    out << "\n";
    for (size_t k = 0; k < degrees.size(); ++k) {
      out << degrees[k];
      for (size_t v = 0; v < nvar; ++v) out << " " << fmt(errs[k][v]);
      for (size_t v = 0; v < nvar; ++v) {
        if (k == 0)
          out << " -";
        else
          out << " " << fmt(errs[k - 1][v] / errs[k][v]);
      }
      out << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace esdg::cli
