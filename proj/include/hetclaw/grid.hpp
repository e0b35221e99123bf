#ifndef HETCLAW_GRID_HPP_
#define HETCLAW_GRID_HPP_

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace hetclaw {

struct Grid1D {
  double x_left = -1.0;
  double x_right = 1.0;
  int n_cells = 8;

  double dx() const { return (x_right - x_left) / n_cells; }
  double center(int i) const { return x_left + (i + 0.5) * dx(); }
  double interface(int i) const { return x_left + i * dx(); }

  // Index of the cell containing x, clamped to [0, n_cells-1].
  int cell_index(double x) const;

  void validate() const;  // n_cells >= 8, dx > 0
  bool operator==(const Grid1D& other) const;
};

enum class BoundaryMode { far_field, periodic };

struct InitialData {
  enum class Kind { riemann_phi, piecewise4, perturbed_phi, constant, custom_samples };
  Kind kind = Kind::riemann_phi;

  // piecewise4: u_- | u_m | u_M | u_+ with breaks at x_minus <= x0 <= x_plus
  double x_minus = -1.0;
  double x0 = 0.0;
  double x_plus = 1.0;
  double u_m = 0.0;
  double u_M = 1.0;

  // perturbed_phi / bump profile: amplitude * (1 - ((x-c)/w)^2)^2 on |x-c| < w
  double bump_amplitude = 0.0;
  double bump_center = 0.0;
  double bump_width = 1.0;

  double value = 0.0;  // constant

  // custom_samples: (x, u) pairs, piecewise-linear in between
  std::vector<std::pair<double, double>> samples;

  static InitialData riemann();
  static InitialData piecewise4(double x_minus, double x0, double x_plus, double u_m,
                                double u_M);
  static InitialData perturbed(double amplitude, double center, double width);
  static InitialData constant(double value);

  // Pointwise evaluation given the flux reference states (u_minus, u_plus).
  double at(double x, double u_minus, double u_plus) const;

  // Far-field values the data attains outside its compact features.
  std::pair<double, double> far_fields(double u_minus, double u_plus) const;

  // Validates internal consistency against the reference states.
  void validate(double u_minus, double u_plus) const;

  // Extent of the non-trivial features (jumps, bumps), used for domain auto-sizing.
  std::pair<double, double> feature_extent() const;
};

/// Piecewise-constant cell-average representation of u(., t).
struct SolutionField {
  Grid1D grid;
  double time = 0.0;
  std::vector<double> values;
  BoundaryMode boundary = BoundaryMode::far_field;
  // Ghost values for far_field mode; captured from the initial data.
  double far_left = 0.0;
  double far_right = 0.0;
  // Accumulated boundary flux integrals (for conservation accounting).
  double boundary_influx_left = 0.0;
  double boundary_outflux_right = 0.0;

  double mass() const;  // sum(values) * dx
  double min_value() const;
  double max_value() const;

  // Left/right traces at x from adjacent cell averages. Throws OutOfDomain
  // unless x lies in the grid interior.
  std::pair<double, double> traces_at(double x) const;

  // Traces read `offset_cells` outside the cell containing x, bracketing a
  // numerical shock layer.
  std::pair<double, double> traces_offset(double x, int offset_cells) const;
};

/// Builds the cell-average field for the given data. Jumps are averaged exactly
/// (sub-cell splitting); smooth bump contributions use a 4-point Gauss rule per cell.
SolutionField make_field(const Grid1D& grid, const InitialData& data, double u_minus,
                         double u_plus, BoundaryMode boundary = BoundaryMode::far_field);

/// Time-ordered snapshots of one run. value lookups interpolate linearly in time
/// between stored snapshots and read cell averages in space.
class FieldHistory {
 public:
  FieldHistory() = default;
  explicit FieldHistory(Grid1D grid) : grid_(grid) {}

  void push(const SolutionField& field, double solver_dt);
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  const Grid1D& grid() const { return grid_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values(std::size_t k) const { return snapshots_[k]; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  double solver_dt(std::size_t k) const { return solver_dts_[k]; }
  BoundaryMode boundary() const { return boundary_; }
  std::pair<double, double> far_fields() const { return {far_left_, far_right_}; }

  /// Reconstructed field at time t (linear interpolation between snapshots).
  SolutionField at_time(double t) const;

  double value(double x, double t) const;
  std::pair<double, double> traces(double x, double t) const;
  std::pair<double, double> traces_offset(double x, double t, int offset_cells) const;

  // Snapshot index with largest time <= t (clamped).
  std::size_t index_at(double t) const;

 private:
  Grid1D grid_;
  std::vector<double> times_;
  std::vector<std::vector<double>> snapshots_;
  std::vector<double> solver_dts_;
  BoundaryMode boundary_ = BoundaryMode::far_field;
  double far_left_ = 0.0;
  double far_right_ = 0.0;
};

}  // namespace hetclaw

#endif  // HETCLAW_GRID_HPP_
