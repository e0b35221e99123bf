#ifndef HETCLAW_CHARACTERISTICS_HPP_
#define HETCLAW_CHARACTERISTICS_HPP_

#include <optional>
#include <vector>

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

/// Point on a characteristic: position y, carried state z, time t.
struct CharState {
  double y = 0.0;
  double z = 0.0;
  double t = 0.0;
};

struct CharTrajectory {
  std::vector<CharState> samples;  // uniform dt, time monotone in `direction`
  bool forward = true;
  // max_t |f(y(t), z(t)) - f(y(0), z(0))| along the trajectory; f is a first
  // integral of the characteristic system, so this measures integration error.
  double flux_residual = 0.0;

  const CharState& start() const { return samples.front(); }
  const CharState& end() const { return samples.back(); }
};

/// Classical RK4 integration of y' = f_u(y, z), z' = -f_x(y, z) from start.t to
/// t_end (backward when t_end < start.t). Throws NonFiniteState on blowup.
CharTrajectory integrate_char(const FluxModel& flux, const CharState& start, double t_end,
                              double dt);

/// Backward characteristic from (x, t): seeds z from the requested trace of the
/// recorded field (read outside the numerical shock layer when a jump is
/// detected at x) and integrates the system back to the initial time.
enum class TraceSide { left, right };

CharTrajectory backward_char_from(const FieldHistory& history, const FluxModel& flux,
                                  double x, double t, TraceSide side, double dt,
                                  double jump_floor = 1e-3, int layer_offset_cells = 3);

/// First time at which the two characteristics come within dx_tol of each other,
/// or nullopt if they stay separated up to t_max. Requires a.y < b.y and a.t == b.t.
std::optional<double> crossing_time(const FluxModel& flux, const CharState& a,
                                    const CharState& b, double t_max, double dt = 1e-3,
                                    double dx_tol = 1e-6);

}  // namespace hetclaw

#endif  // HETCLAW_CHARACTERISTICS_HPP_
