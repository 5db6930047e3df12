#ifndef ESDG_RUNNER_HPP
#define ESDG_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "esdg/config.hpp"
#include "esdg/timeloop.hpp"

namespace esdg::cli {

//! Scenario assembly: solver plus initial state plus (when the scenario has
//! one) the exact solution for error measurement.
dgsem::BurgersSolver build_burgers_solver(const ScenarioConfig& c);
dgsem::SweSolver build_swe_solver(const ScenarioConfig& c);

std::vector<double> initial_state_burgers(const ScenarioConfig& c,
                                          const dgsem::BurgersSolver& s);
std::vector<double> initial_state_swe(const ScenarioConfig& c,
                                      const dgsem::SweSolver& s);

bool scenario_has_exact(const ScenarioConfig& c);

//! Discrete L2 errors against the exact solution at time t, one entry per
//! conserved variable, normalized by the domain measure.
std::vector<double> l2_error_burgers(const ScenarioConfig& c,
                                     const dgsem::BurgersSolver& s,
                                     const std::vector<double>& u, double t);
std::vector<double> l2_error_swe(const ScenarioConfig& c,
                                 const dgsem::SweSolver& s,
                                 const std::vector<double>& q, double t);

timeloop::RunParams run_params(const ScenarioConfig& c);

//! Output directory after applying the ESDG_OUTPUT_DIR override.
std::string resolve_output_dir(const ScenarioConfig& c);

void write_entropy_series(const std::string& path,
                          const std::vector<dgsem::EntropyReport>& series);
void write_snapshot_burgers(const std::string& path,
                            const dgsem::BurgersSolver& s,
                            const std::vector<double>& u);
void write_snapshot_swe(const std::string& path, const dgsem::SweSolver& s,
                        const std::vector<double>& q);

//! Exit codes: 0 completed, 1 configuration or output failure, 2 aborted run.
int cmd_run(const std::string& config_path, std::ostream& out,
            std::ostream& err);
int cmd_verify(std::ostream& out);
int cmd_convergence(const std::string& config_path,
                    const std::vector<int>& degrees, std::ostream& out,
                    std::ostream& err);

}  // namespace esdg::cli

#endif
