#ifndef HETCLAW_STABILITY_HPP_
#define HETCLAW_STABILITY_HPP_

#include <string>
#include <vector>

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

/// Quadratic relative entropy eta(u, c) = (u - c)^2.
double entropy_eta(double u, double c);

/// Entropy flux Q(x, u, c) = int_c^u 2 (y - c) f_u(x, y) dy (32-point Gauss).
double entropy_flux_Q(const FluxModel& flux, double x, double u, double c,
                      int quad_order = 32);

/// Normalised entropy flux q(x, u, c) = int_0^1 2 z f_u(x, c + z (u - c)) dz.
/// Regular at u == c, where it equals f_u(x, c). Equals Q / eta away from u == c.
double eval_q(const FluxModel& flux, double x, double u, double c, int quad_order = 32);

struct ShiftPair {
  std::vector<double> times;
  std::vector<double> xi_plus;   // inclusion driven by c = u_+
  std::vector<double> xi_minus;  // inclusion driven by c = u_-
  std::vector<double> xi_bar;    // (xi_+ + xi_-)/2 - sigma t
  double sigma = 0.0;
  double lipschitz = 0.0;  // measured max |xi-dot| over both curves

  std::size_t size() const { return times.size(); }
};

struct ShiftOptions {
  double jump_floor_rel = 1e-3;
  int layer_offset_cells = 3;
  double ordering_tol_cells = 2.0;  // xi_+ - xi_- <= tol * dx allowed
  // Selector for xi_bar inside [xi_+ - sigma t, xi_- - sigma t]; 0.5 = midpoint.
  double selector = 0.5;
};

/// Integrates the two shift curves from 0: at a live jump both follow the
/// Rankine-Hugoniot speed (the determinate Filippov value); at continuity
/// points xi-dot = q(xi, u(xi, t), c) with c = u_+ resp. u_-. Substep equals the
/// recorded solver step. Throws OrderingViolation if xi_+ - xi_- exceeds tolerance.
ShiftPair integrate_shift_curves(const FieldHistory& history, const FluxModel& flux,
                                 const ShiftOptions& options = {});

/// Grid L2 norm of u(.) - Phi(. - shift - sigma_t_offset); the straddling cell
/// is split at the exact jump location (sub-cell weighting).
double relative_l2(const SolutionField& field, double u_minus, double u_plus, double shift,
                   double sigma_t_offset = 0.0);

struct ShiftBound {
  double K = 0.0;            // |xi_bar(t)| <= K sqrt(t)
  double linear_rate = 0.0;  // |xi_bar(t)| <= linear_rate * t (small times)
  double sigma = 0.0;
  double V = 0.0;  // speed envelope at the essential sup of |u|
};

/// K = (sqrt(L+|sigma|) + sqrt(L+|sigma|+V)) ||u0 - Phi||_2 / (u_- - u_+), with
/// V = theta(ess sup |u|) and L the measured Lipschitz constant of the curves.
ShiftBound shift_bound_K(const FluxModel& flux, double l2_initial, double lipschitz_L,
                         double u_abs_max);

struct StabilityReport {
  std::vector<double> times;
  std::vector<double> relative_l2;  // ||u(t) - Phi(. - xi_bar - sigma t)||_2
  std::vector<double> xi_plus;
  std::vector<double> xi_minus;
  std::vector<double> xi_bar;
  std::vector<double> envelope;  // K sqrt(t) + slack
  double initial_l2 = 0.0;
  double num_tol = 0.0;  // contraction slack: 5 sqrt(dx) ||u0||_inf
  bool contraction_pass = false;
  bool ordering_pass = false;
  bool shift_bound_pass = false;
  bool p_validated = false;  // mixed-derivative sign on the measured range
  double p_worst = 0.0;
  ShiftBound bound;
};

/// Full stability certification for one recorded run.
StabilityReport certify_stability(const FieldHistory& history, const FluxModel& flux,
                                  const ShiftOptions& options = {});

struct GrowthReport {
  std::vector<double> times;
  std::vector<double> l2_to_reference;   // ||u(t) - u_ref||_2
  std::vector<double> entropy_production;  // int -2 phi-style production, >= 0 expected
  double reference = 0.0;
  double t_classical = 0.0;  // window end (gradient blowup monitor)
  bool strictly_increasing = false;
  double total_increase = 0.0;
};

struct GrowthOptions {
  int snapshot_every = 10;
  double cfl = 0.45;
  double gradient_factor = 4.0;  // blowup when max slope exceeds factor * initial
};

/// Runs u0 = reference + psi under the given flux and records the L2 distance to
/// the reference state. Throws ShockFormedEarly if the gradient monitor trips
/// before a meaningful window is recorded. The reference defaults to the flux's
/// u_minus (pass the same explicit reference to a control flux for comparison).
GrowthReport reference_growth(const FluxModel& flux, const InitialData& psi_data,
                              const Grid1D& grid, double horizon, double reference,
                              const GrowthOptions& options = {});

struct EntropyResidual {
  double max_positive = 0.0;
  double max_abs = 0.0;  // consistency measure; decays O(dx) on smooth regions
  double witness_x = 0.0;
  double witness_t = 0.0;
  std::vector<double> cell_max;  // per-cell max over time
};

/// Discrete space-time residual of eta_t + Q_x with the Godunov-consistent
/// entropy flux; positive part must stay within O(dx) consistency error.
EntropyResidual entropy_residual(const FieldHistory& history, const FluxModel& flux,
                                 double c, int quad_order = 32);

}  // namespace hetclaw

#endif  // HETCLAW_STABILITY_HPP_
