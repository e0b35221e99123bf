#ifndef HETCLAW_SHOCK_HPP_
#define HETCLAW_SHOCK_HPP_

#include <string>
#include <vector>

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

struct ShockSample {
  double t = 0.0;
  double s = 0.0;       // curve position
  double u_l = 0.0;     // left trace (outside the numerical layer)
  double u_r = 0.0;     // right trace
  double speed = 0.0;   // speed law value at this sample
  bool on_jump = true;  // jump above the floor at this sample
};

struct ShockCurve {
  std::vector<ShockSample> samples;
  double x_origin = 0.0;
  double t_origin = 0.0;

  double position_at(double t) const;  // linear interpolation between samples
  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
};

struct TrackOptions {
  double jump_floor_rel = 1e-3;  // floor = rel * (u_minus - u_plus)
  int layer_offset_cells = 3;    // traces read this many cells outside the layer
};

/// Advances a curve from the seed with ds/dt = Rankine-Hugoniot speed at the
/// offset traces while the jump exceeds the floor, else the classical speed
/// f_u(s, u(s)). Throws LostShock if the jump vanishes (tracking failure or an
/// unhandled merge: admissible shocks cannot disappear).
ShockCurve track_shock(const FieldHistory& history, const FluxModel& flux, double seed_x,
                       double seed_t, const TrackOptions& options = {});

/// Single continuation after two curves meet, seeded with the outer traces.
/// Throws NoIntersection if the curves never come within merge_tol_cells * dx
/// at a common time.
ShockCurve merge_shocks(const FieldHistory& history, const FluxModel& flux,
                        const ShockCurve& a, const ShockCurve& b,
                        const TrackOptions& options = {}, double merge_tol_cells = 1.0);

/// First common sample time at which the curves are within tol, if any.
std::vector<double> curve_gap_times(const ShockCurve& a, const ShockCurve& b, double tol);

struct EmergenceReport {
  bool emerged = false;
  double T_detected = 0.0;
  double X_detected = 0.0;
  double sigma_measured = 0.0;
  double sigma_rh = 0.0;
  double T_bound_analytic = 0.0;  // filled by the caller when data is piecewise4
  double post_emergence_error = 0.0;
  double tolerance = 0.0;
  std::string note;
};

/// Finds the earliest snapshot time T such that for every later snapshot the
/// best-shift L1 distance to the travelling profile Phi stays within tolerance
/// (persistence: every subsequent snapshot must qualify). The shift fit scans
/// all cell interfaces (the L1 objective is piecewise linear in the shift) with
/// a golden-section polish in the winning bracket.
EmergenceReport detect_emergence(const FieldHistory& history, const FluxModel& flux,
                                 double tolerance);

struct EmergenceBound {
  double T_right = 0.0;  // bound for the right shock to meet the u_- characteristic
  double T_left = 0.0;   // mirror bound on the left
  double T_max = 0.0;    // max of the two: partial-progress bound, not a full
                         // emergence time (the final merge phase is unquantified)
};

/// Analytic reduction bounds: T_right = 2 (u_M - u_+)(x_+ - x_0) / (alpha (u_- - u_+)^2),
/// mirrored for the left side.
EmergenceBound emergence_bound(const FluxModel& flux, const InitialData& data);

/// Best shift X minimising ||u - Phi(. - X)||_L1 and the attained distance.
struct ShiftFit {
  double shift = 0.0;
  double l1 = 0.0;
};
ShiftFit best_shift_l1(const Grid1D& grid, const std::vector<double>& values, double u_minus,
                       double u_plus);

}  // namespace hetclaw

#endif  // HETCLAW_SHOCK_HPP_
