#ifndef HETCLAW_SOLVER_HPP_
#define HETCLAW_SOLVER_HPP_

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

/// Exact-Riemann (Godunov) interface state for convex f, frozen at the
/// interface position: the state at which the numerical flux is attained.
double godunov_state(const FluxModel& flux, double x_interface, double u_left,
                     double u_right);

/// Godunov numerical flux: min of f(x,.) over [u_l, u_r] when u_l <= u_r, else
/// max over the endpoints. Throws NewtonDivergence if the sonic-point solve fails.
double godunov_flux(const FluxModel& flux, double x_interface, double u_left,
                    double u_right);

/// One conservative explicit step with the given dt (caller owns the CFL
/// restriction). Ghost cells clamp to the far-field values (or wrap, if periodic).
SolutionField step(const SolutionField& field, const FluxModel& flux, double dt);

/// Advances to t_target with dt = cfl * dx / max_speed(range), sub-stepped to
/// land exactly on t_target. Throws CflViolation / NonFiniteState.
SolutionField advance(const SolutionField& field, const FluxModel& flux, double t_target,
                      double cfl = 0.45);

struct SimulateOptions {
  double cfl = 0.45;
  int snapshot_every = 10;  // record every k-th solver step (plus t=0 and the horizon)
};

/// Runs advance() from field.time to horizon, recording snapshots.
FieldHistory simulate(const SolutionField& initial, const FluxModel& flux, double horizon,
                      const SimulateOptions& options = {});

/// Domain wide enough that boundary effects cannot reach the data features
/// within the horizon (margin factor applied to the speed envelope).
Grid1D auto_domain(const FluxModel& flux, const InitialData& data, double horizon,
                   int n_cells, double margin = 1.5);

}  // namespace hetclaw

#endif  // HETCLAW_SOLVER_HPP_
