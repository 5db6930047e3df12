#ifndef ESDG_TIMELOOP_HPP
#define ESDG_TIMELOOP_HPP

#include <cmath>
#include <string>
#include <vector>

#include "esdg/dgsem.hpp"

namespace esdg::timeloop {

//! Five-stage fourth-order low-storage Runge-Kutta coefficients (2N storage).
struct Lsrk45 {
  static constexpr double A[5] = {
      0.0,
      -567301805773.0 / 1357537059087.0,
      -2404267990393.0 / 2016746695238.0,
      -3550918686646.0 / 2091501179385.0,
      -1275806237668.0 / 842570457699.0,
  };
  static constexpr double B[5] = {
      1432997174477.0 / 9575080441755.0,
      5161836677717.0 / 13612068292357.0,
      1720146321549.0 / 2090206949498.0,
      3134564353537.0 / 4481467310338.0,
      2277821191437.0 / 14882151754819.0,
  };
  static constexpr double C[5] = {
      0.0,
      1432997174477.0 / 9575080441755.0,
      2526269341429.0 / 6820363962896.0,
      2006345519317.0 / 3224310063776.0,
      2802321613138.0 / 2924317926251.0,
  };
};

//! One low-storage step u <- u + dt * L(u) through the five stages.  `reg`
//! and `work` are scratch vectors reused across steps.
template <class RhsFn>
void lsrk45_step(std::vector<double>& u, double t, double dt, RhsFn&& rhs,
                 std::vector<double>& reg, std::vector<double>& work) {
  reg.assign(u.size(), 0.0);
  for (int s = 0; s < 5; ++s) {
    rhs(u, t + Lsrk45::C[s] * dt, work);
    for (size_t i = 0; i < u.size(); ++i) {
      reg[i] = Lsrk45::A[s] * reg[i] + dt * work[i];
      u[i] += Lsrk45::B[s] * reg[i];
    }
  }
}

struct RunParams {
  double cfl = 0.5;
  double t_end = 1.0;
  double dt_max = 0.1;   //!< cap, and the step taken when nothing moves
  int log_stride = 20;   //!< entropy samples every this many steps
};

struct RunStatus {
  enum class Outcome { Completed, Aborted };
  Outcome outcome = Outcome::Completed;
  double t_final = 0.0;
  dgsem::AbortError::Reason reason = dgsem::AbortError::Reason::NaN;
  std::string message;
  int steps = 0;
};

struct RunResult {
  RunStatus status;
  std::vector<dgsem::EntropyReport> series;
};

//! Advance `state` to t_end with an adaptive step
//! dt = cfl * min_e(dx_min,e / (lambda_max,e (2N+1))), recomputed every step,
//! clipped to land exactly on t_end.  Entropy samples are taken at t = 0,
//! every log_stride steps, and at the final time.  The first NaN or
//! nonpositive depth aborts the run; samples gathered so far are kept and the
//! abort is timestamped.
template <class Solver>
RunResult run_time_loop(Solver& solver, std::vector<double>& state,
                        const RunParams& p) {
  RunResult out;
  std::vector<double> reg, work;
  double t = 0.0;
  auto rhs = [&solver](const std::vector<double>& u, double tt,
                       std::vector<double>& dudt) { solver.rhs(u, tt, dudt); };
  try {
    solver.check_state(state, t);
    out.series.push_back(solver.entropy_report(state, t));
    int step = 0;
    while (t < p.t_end) {
      double dt = p.cfl * solver.stable_dt(state);
      if (!std::isfinite(dt) || dt > p.dt_max) dt = p.dt_max;
      bool final_step = false;
      if (t + dt >= p.t_end - 1e-12 * p.t_end) {
        dt = p.t_end - t;
        final_step = true;
      }
      lsrk45_step(state, t, dt, rhs, reg, work);
      t = final_step ? p.t_end : t + dt;
      ++step;
      solver.check_state(state, t);
      if (step % p.log_stride == 0 && !final_step)
        out.series.push_back(solver.entropy_report(state, t));
      if (final_step) break;
    }
    out.series.push_back(solver.entropy_report(state, t));
    out.status.outcome = RunStatus::Outcome::Completed;
    out.status.t_final = t;
    out.status.steps = step;
  } catch (const dgsem::AbortError& err) {
    out.status.outcome = RunStatus::Outcome::Aborted;
    out.status.t_final = err.t;
    out.status.reason = err.reason;
    out.status.message = err.what();
  }
  return out;
}

}  // namespace esdg::timeloop

#endif
