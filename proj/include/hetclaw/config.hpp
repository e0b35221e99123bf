#ifndef HETCLAW_CONFIG_HPP_
#define HETCLAW_CONFIG_HPP_

#include <map>
#include <string>
#include <vector>

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

/// Flat key = value run configuration with dotted sections. Unknown keys are
/// rejected so typos surface as ConfigError with the offending key.
struct RunConfig {
  std::string experiment = "simulate";

  FluxFamily flux;
  InitialData init;

  Grid1D grid{-4.0, 4.0, 1000};
  bool grid_auto = false;
  double grid_margin = 1.5;

  double horizon = 1.0;
  double cfl = 0.45;
  int snapshot_every = 10;
  BoundaryMode boundary = BoundaryMode::far_field;
  std::vector<double> snapshot_times;  // file emission times for `simulate`

  std::string out_dir = "out";
  bool overwrite = false;

  // Tolerances (defaults per module contracts).
  double jump_floor_rel = 1e-3;
  double ordering_tol_cells = 2.0;
  double emergence_tol_cells = 10.0;  // L1 tolerance = cells * dx * (u_- - u_+)
  double num_tol_override = 0.0;      // 0 = use 5 sqrt(dx) ||u0||_inf

  // characteristics experiment: seeds "y:z[:t]" separated by ';'
  std::vector<std::vector<double>> char_seeds;
  double char_dt = 1e-3;

  // validate-flux sampling box
  double validate_x_lo = -3.0, validate_x_hi = 3.0;
  double validate_u_lo = -1.0, validate_u_hi = 2.0;
  int validate_density = 64;

  // hj-check
  double hj_t_end = 0.5;
  double hj_dt_factor = 0.9;  // dt = factor * dx / theta(slope_bound)

  // negcheck
  double neg_reference = 0.0;  // 0 = flux u_minus

  // Raw echo of the parsed keys, for the manifest.
  std::map<std::string, std::string> raw;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  void validate() const;
};

std::vector<std::string> valid_experiments();

}  // namespace hetclaw

#endif  // HETCLAW_CONFIG_HPP_
