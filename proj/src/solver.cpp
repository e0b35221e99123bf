#include "hetclaw/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hetclaw/errors.hpp"

namespace hetclaw {
namespace {

// Sonic point: the unique root of f_u(x, .) in [lo, hi]. Newton with a
// bisection safeguard; f_u is strictly increasing by uniform convexity.
double sonic_point(const FluxModel& flux, double x, double lo, double hi) {
  double flo = flux.du(x, lo);
  double fhi = flux.du(x, hi);
  if (flo > 0.0 || fhi < 0.0) {
    throw NewtonDivergence("godunov: no sign change for the sonic-point solve");
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double g = flux.du(x, u);
    if (g > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double dg = flux.duu(x, u);
    double next = (dg > 0.0) ? u - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-15 * std::max(1.0, std::abs(u))) return next;
    u = next;
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(u))) return u;
  throw NewtonDivergence("godunov: sonic-point solve failed after 50 iterations");
}

}  // namespace

double godunov_state(const FluxModel& flux, double x, double u_left, double u_right) {
  if (u_left == u_right) return u_left;
  if (u_left < u_right) {
    // Rarefaction side: minimiser of the convex section over [u_left, u_right].
    if (flux.du(x, u_left) >= 0.0) return u_left;
    if (flux.du(x, u_right) <= 0.0) return u_right;
    return sonic_point(flux, x, u_left, u_right);
  }
  // Shock side: convex max over [u_right, u_left] sits at an endpoint.
  return flux.eval(x, u_left) >= flux.eval(x, u_right) ? u_left : u_right;
}

double godunov_flux(const FluxModel& flux, double x, double u_left, double u_right) {
  return flux.eval(x, godunov_state(flux, x, u_left, u_right));
}

SolutionField step(const SolutionField& field, const FluxModel& flux, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw CflViolation("step: dt must be positive");
  const Grid1D& grid = field.grid;
  const int n = grid.n_cells;
  const double lambda = dt / grid.dx();

  auto cell = [&](int i) -> double {
    if (i >= 0 && i < n) return field.values[i];
    if (field.boundary == BoundaryMode::periodic) return field.values[(i % n + n) % n];
    return i < 0 ? field.far_left : field.far_right;
  };

  // Interface fluxes, frozen at the interface midpoint position.
  std::vector<double> flux_if(n + 1);
  for (int i = 0; i <= n; ++i) {
    flux_if[i] = godunov_flux(flux, grid.interface(i), cell(i - 1), cell(i));
  }

  SolutionField next = field;
  next.time = field.time + dt;
  for (int i = 0; i < n; ++i) {
    next.values[i] = field.values[i] - lambda * (flux_if[i + 1] - flux_if[i]);
    if (!std::isfinite(next.values[i])) {
      throw NonFiniteState("step: non-finite cell value");
    }
  }
  next.boundary_influx_left = field.boundary_influx_left + flux_if[0] * dt;
  next.boundary_outflux_right = field.boundary_outflux_right + flux_if[n] * dt;
  return next;
}

namespace {

// CFL-stable step size. The wave-speed bound alone is not enough for
// heterogeneous fluxes: f_x drives the solution range outward within a step
// (constant data with f_u(., u0) == 0 still evolves), so the range is padded by
// the per-step drift cap |f_x|_max * dt <= pad before the speed envelope is read.
double stable_dt(const SolutionField& field, const FluxModel& flux, double cfl,
                 double remaining) {
  const Grid1D& grid = field.grid;
  double fx_max = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    fx_max = std::max(fx_max, std::abs(flux.dx(grid.center(i), field.values[i])));
  }
  const double pad = fx_max > 0.0 ? 0.05 * (flux.u_minus() - flux.u_plus()) : 0.0;
  const double speed = flux.max_speed(field.min_value() - pad, field.max_value() + pad);
  double dt = remaining;
  if (speed > 0.0) dt = std::min(dt, cfl * grid.dx() / speed);
  if (fx_max > 0.0) dt = std::min(dt, pad / fx_max);
  return dt;
}

}  // namespace

SolutionField advance(const SolutionField& field, const FluxModel& flux, double t_target,
                      double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw CflViolation("advance: cfl must lie in (0, 1]");
  if (t_target < field.time) throw ConfigError("advance: t_target < field.time");

  SolutionField cur = field;
  while (cur.time < t_target) {
    const double remaining = t_target - cur.time;
    const double dt = stable_dt(cur, flux, cfl, remaining);
    const bool final_step = dt >= remaining;
    if (!(dt > 0.0)) throw CflViolation("advance: computed dt <= 0");
    cur = step(cur, flux, dt);
    if (final_step) cur.time = t_target;  // land exactly, no roundoff drift
  }
  return cur;
}

FieldHistory simulate(const SolutionField& initial, const FluxModel& flux, double horizon,
                      const SimulateOptions& options) {
  if (!(horizon > initial.time)) throw ConfigError("simulate: horizon must exceed start time");
  const int every = std::max(1, options.snapshot_every);

  FieldHistory history(initial.grid);
  SolutionField cur = initial;
  double last_dt = 0.0;
  history.push(cur, 0.0);

  int steps_since_snapshot = 0;
  while (cur.time < horizon) {
    const double remaining = horizon - cur.time;
    const double dt = stable_dt(cur, flux, options.cfl, remaining);
    const bool final_step = dt >= remaining;
    if (!(dt > 0.0)) throw CflViolation("simulate: computed dt <= 0");
    cur = step(cur, flux, dt);
    last_dt = dt;
    if (final_step) cur.time = horizon;
    if (++steps_since_snapshot == every || final_step) {
      history.push(cur, last_dt);
      steps_since_snapshot = 0;
    }
  }
  return history;
}

Grid1D auto_domain(const FluxModel& flux, const InitialData& data, double horizon,
                   int n_cells, double margin) {
  const auto extent = data.feature_extent();
  const auto far = data.far_fields(flux.u_minus(), flux.u_plus());
  double bound = std::max({std::abs(far.first), std::abs(far.second),
                           std::abs(flux.u_minus()), std::abs(flux.u_plus())});
  if (data.kind == InitialData::Kind::piecewise4) {
    bound = std::max({bound, std::abs(data.u_m), std::abs(data.u_M)});
  }
  bound += std::abs(data.bump_amplitude);
  const double reach = margin * flux.max_speed(-bound, bound) * horizon + 1.0;
  Grid1D grid;
  grid.x_left = extent.first - reach;
  grid.x_right = extent.second + reach;
  grid.n_cells = n_cells;
  return grid;
}

}  // namespace hetclaw
