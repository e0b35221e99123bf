#include "hetclaw/characteristics.hpp"

#include <cmath>

#include "hetclaw/errors.hpp"

namespace hetclaw {
namespace {

struct Rhs {
  double dy;
  double dz;
};

Rhs char_rhs(const FluxModel& flux, double y, double z) {
  return {flux.du(y, z), -flux.dx(y, z)};
}

// One RK4 step of the characteristic system; h may be negative.
CharState rk4_step(const FluxModel& flux, const CharState& s, double h) {
  const Rhs k1 = char_rhs(flux, s.y, s.z);
  const Rhs k2 = char_rhs(flux, s.y + 0.5 * h * k1.dy, s.z + 0.5 * h * k1.dz);
  const Rhs k3 = char_rhs(flux, s.y + 0.5 * h * k2.dy, s.z + 0.5 * h * k2.dz);
  const Rhs k4 = char_rhs(flux, s.y + h * k3.dy, s.z + h * k3.dz);
  CharState next;
  next.y = s.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  next.z = s.z + h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz);
  next.t = s.t + h;
  return next;
}

}  // namespace

CharTrajectory integrate_char(const FluxModel& flux, const CharState& start, double t_end,
                              double dt) {
  if (!(dt > 0.0)) throw ConfigError("integrate_char: dt must be positive");
  if (t_end == start.t) throw ConfigError("integrate_char: t_end equals start time");

  const double span = t_end - start.t;
  const int n_steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt)));
  const double h = span / n_steps;

  CharTrajectory traj;
  traj.forward = span > 0.0;
  traj.samples.reserve(n_steps + 1);
  traj.samples.push_back(start);

  const double f0 = flux.eval(start.y, start.z);
  CharState cur = start;
  for (int k = 0; k < n_steps; ++k) {
    cur = rk4_step(flux, cur, h);
    if (!std::isfinite(cur.y) || !std::isfinite(cur.z)) {
      throw NonFiniteState("integrate_char: trajectory blew up");
    }
    cur.t = start.t + (k + 1) * h;
    traj.samples.push_back(cur);
    traj.flux_residual =
        std::max(traj.flux_residual, std::abs(flux.eval(cur.y, cur.z) - f0));
  }
  return traj;
}

CharTrajectory backward_char_from(const FieldHistory& history, const FluxModel& flux,
                                  double x, double t, TraceSide side, double dt,
                                  double jump_floor, int layer_offset_cells) {
  if (!(t > history.t_begin())) throw ConfigError("backward_char_from: t must be positive");
  if (t > history.t_end()) throw OutOfDomain("backward_char_from: t beyond recorded history");

  // Seed from the requested trace; inside a numerical shock layer the value is
  // smeared, so read the offset trace instead.
  const auto offset = history.traces_offset(x, t, layer_offset_cells);
  const auto plain = history.traces(x, t);
  const bool jump = std::abs(offset.first - offset.second) > jump_floor;
  double z0;
  if (side == TraceSide::left) {
    z0 = jump ? offset.first : plain.first;
  } else {
    z0 = jump ? offset.second : plain.second;
  }

  CharTrajectory traj = integrate_char(flux, CharState{x, z0, t}, history.t_begin(), dt);
  const Grid1D& grid = history.grid();
  for (const CharState& s : traj.samples) {
    if (s.y < grid.x_left || s.y > grid.x_right) {
      throw OutOfDomain("backward_char_from: trajectory exited the grid");
    }
  }
  return traj;
}

std::optional<double> crossing_time(const FluxModel& flux, const CharState& a,
                                    const CharState& b, double t_max, double dt,
                                    double dx_tol) {
  if (!(a.y < b.y)) throw ConfigError("crossing_time: requires a.y < b.y");
  if (a.t != b.t) throw ConfigError("crossing_time: states must share the start time");

  const double span = t_max - a.t;
  if (!(span > 0.0)) return std::nullopt;
  const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt)));
  const double h = span / n_steps;

  CharState sa = a;
  CharState sb = b;
  double gap = sb.y - sa.y;
  for (int k = 0; k < n_steps; ++k) {
    const CharState na = rk4_step(flux, sa, h);
    const CharState nb = rk4_step(flux, sb, h);
    const double next_gap = nb.y - na.y;
    if (next_gap <= dx_tol) {
      // Linear interpolation to the crossing instant within the step.
      const double w = gap > dx_tol ? (gap - dx_tol) / (gap - next_gap) : 0.0;
      return sa.t + w * h;
    }
    sa = na;
    sb = nb;
    gap = next_gap;
  }
  return std::nullopt;
}

}  // namespace hetclaw
