#ifndef ESDG_CONFIG_HPP
#define ESDG_CONFIG_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "esdg/dgsem.hpp"

namespace esdg::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeshConfig1D {
  double a = -1.0, b = 1.0;
  int elements = 1;
};

struct MeshConfig2D {
  std::array<double, 2> origin{0, 0}, edge_u{1, 0}, edge_v{0, 1};
  int nx = 1, ny = 1;
  std::array<std::string, 4> tags;  //!< south, east, north, west
};

//! Fully validated description of one run, parsed from a sectioned key-value
//! file.  Unknown sections or keys are rejected with the offending line.
struct ScenarioConfig {
  enum class Equation { Burgers, Swe };
  enum class Scenario { BurgersMms, SweChannel, Geostrophic };

  Equation equation = Equation::Burgers;
  Scenario scenario = Scenario::BurgersMms;
  int degree = 3;
  double cfl = 0.5;
  double t_end = 1.0;
  double dt_max = 0.1;
  int log_stride = 20;
  dgsem::InteriorFlux interior_flux = dgsem::InteriorFlux::EC;

  MeshConfig1D mesh1d;
  MeshConfig2D mesh2d;

  //! keyed by boundary tag ("left"/"right" for interval meshes)
  std::map<std::string, dgsem::BoundarySpec> boundary;

  equations::EquationParams params;
  double h0 = 0, A0 = 0, lambda = 0, RE = 0, Ri = 0;

  std::string out_dir = ".";
  std::string entropy_series = "entropy.csv";
  std::string snapshot = "snapshot.csv";
};

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin_name);
ScenarioConfig parse_config_file(const std::string& path);

}  // namespace esdg::cli

#endif
