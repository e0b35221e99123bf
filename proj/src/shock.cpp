#include "hetclaw/shock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetclaw/errors.hpp"

namespace hetclaw {

double ShockCurve::position_at(double t) const {
  if (samples.empty()) throw OutOfDomain("ShockCurve: empty");
  if (t <= samples.front().t) return samples.front().s;
  if (t >= samples.back().t) return samples.back().s;
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const ShockSample& s) { return v < s.t; });
  const ShockSample& hi = *it;
  const ShockSample& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.s + w * (hi.s - lo.s);
}

namespace {

// Speed law at (s, t): RH speed from offset traces above the floor, classical
// characteristic speed otherwise. Returns the traces and whether a jump is live.
struct SpeedProbe {
  double speed;
  double u_l;
  double u_r;
  bool on_jump;
};

SpeedProbe probe_speed(const FieldHistory& history, const FluxModel& flux, double s,
                       double t, double jump_floor, int offset) {
  const auto traces = history.traces_offset(s, t, offset);
  SpeedProbe p;
  p.u_l = traces.first;
  p.u_r = traces.second;
  p.on_jump = p.u_l - p.u_r > jump_floor;
  if (p.on_jump) {
    p.speed = (flux.eval(s, p.u_l) - flux.eval(s, p.u_r)) / (p.u_l - p.u_r);
  } else {
    p.speed = flux.du(s, history.value(s, t));
  }
  return p;
}

ShockCurve track_from(const FieldHistory& history, const FluxModel& flux, double seed_x,
                      double seed_t, const TrackOptions& options, bool require_seed_jump) {
  const Grid1D& grid = history.grid();
  const double dx = grid.dx();
  const double jump_floor = options.jump_floor_rel * (flux.u_minus() - flux.u_plus());
  const std::vector<double>& times = history.times();

  std::size_t k0 = history.index_at(seed_t);
  if (times[k0] < seed_t && k0 + 1 < times.size()) ++k0;

  ShockCurve curve;
  curve.x_origin = seed_x;
  curve.t_origin = seed_t;

  double s = seed_x;
  {
    const SpeedProbe p = probe_speed(history, flux, s, times[k0], jump_floor,
                                     options.layer_offset_cells);
    if (require_seed_jump && !p.on_jump) {
      throw DegenerateJump("track_shock: no discontinuity above the floor at the seed");
    }
    curve.samples.push_back({times[k0], s, p.u_l, p.u_r, p.speed, p.on_jump});
  }

  for (std::size_t k = k0; k + 1 < times.size(); ++k) {
    const double t_a = times[k];
    const double t_b = times[k + 1];
    // Substep so the curve moves at most half a cell per update.
    const double span = t_b - t_a;
    const std::vector<double>& snap = history.values(k);
    const double speed_cap =
        std::max(1e-300, flux.max_speed(*std::min_element(snap.begin(), snap.end()),
                                        *std::max_element(snap.begin(), snap.end())));
    const int n_sub = std::max(1, static_cast<int>(std::ceil(span * speed_cap / (0.5 * dx))));
    const double h = span / n_sub;
    for (int j = 0; j < n_sub; ++j) {
      const double tau = t_a + j * h;
      const SpeedProbe p = probe_speed(history, flux, s, tau, jump_floor,
                                       options.layer_offset_cells);
      s += h * p.speed;
      s = std::clamp(s, grid.x_left, grid.x_right);
    }
    const SpeedProbe p = probe_speed(history, flux, s, t_b, jump_floor,
                                     options.layer_offset_cells);
    curve.samples.push_back({t_b, s, p.u_l, p.u_r, p.speed, p.on_jump});
    if (require_seed_jump && !p.on_jump) {
      throw LostShock("track_shock: jump fell below the floor at t=" + std::to_string(t_b));
    }
  }
  return curve;
}

}  // namespace

ShockCurve track_shock(const FieldHistory& history, const FluxModel& flux, double seed_x,
                       double seed_t, const TrackOptions& options) {
  return track_from(history, flux, seed_x, seed_t, options, /*require_seed_jump=*/true);
}

std::vector<double> curve_gap_times(const ShockCurve& a, const ShockCurve& b, double tol) {
  std::vector<double> hits;
  for (const ShockSample& sa : a.samples) {
    if (sa.t < b.t_begin() || sa.t > b.t_end()) continue;
    if (std::abs(sa.s - b.position_at(sa.t)) <= tol) hits.push_back(sa.t);
  }
  return hits;
}

ShockCurve merge_shocks(const FieldHistory& history, const FluxModel& flux,
                        const ShockCurve& a, const ShockCurve& b,
                        const TrackOptions& options, double merge_tol_cells) {
  const double tol = merge_tol_cells * history.grid().dx();
  const auto hits = curve_gap_times(a, b, tol);
  if (hits.empty()) {
    throw NoIntersection("merge_shocks: curves never intersect within tolerance");
  }
  const double t_merge = hits.front();
  const double s_merge = 0.5 * (a.position_at(t_merge) + b.position_at(t_merge));
  ShockCurve merged = track_from(history, flux, s_merge, t_merge, options,
                                 /*require_seed_jump=*/false);
  merged.x_origin = s_merge;
  merged.t_origin = t_merge;
  return merged;
}

ShiftFit best_shift_l1(const Grid1D& grid, const std::vector<double>& values, double u_minus,
                       double u_plus) {
  const int n = grid.n_cells;
  const double dx = grid.dx();
  // Prefix sums of |u - u_-| and |u - u_+| make the interface scan O(n).
  std::vector<double> pre_minus(n + 1, 0.0), pre_plus(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    pre_minus[i + 1] = pre_minus[i] + std::abs(values[i] - u_minus);
    pre_plus[i + 1] = pre_plus[i] + std::abs(values[i] - u_plus);
  }
  // The L1 objective is piecewise linear in the shift, so its minimum over the
  // domain is attained at a cell interface; scanning all interfaces is exact.
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= n; ++i) {
    const double j = (pre_minus[i] + (pre_plus[n] - pre_plus[i])) * dx;
    if (j < best) {
      best = j;
      best_i = i;
    }
  }
  // Golden-section polish within the two adjacent cells (sub-interface optimum
  // can only improve via the straddling-cell split terms).
  auto objective = [&](double X) {
    const int i = grid.cell_index(X);
    const double a = grid.interface(i);
    const double wl = X - a;
    const double wr = dx - wl;
    return pre_minus[i] * dx + std::abs(values[i] - u_minus) * wl +
           std::abs(values[i] - u_plus) * wr + (pre_plus[n] - pre_plus[i + 1]) * dx;
  };
  double lo = std::max(grid.x_left, grid.interface(best_i) - dx);
  double hi = std::min(grid.x_right, grid.interface(best_i) + dx);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double xm = 0.5 * (lo + hi);
  const double fm = objective(xm);
  if (fm <= best) return {xm, fm};
  return {grid.interface(best_i), best};
}

EmergenceReport detect_emergence(const FieldHistory& history, const FluxModel& flux,
                                 double tolerance) {
  EmergenceReport report;
  report.tolerance = tolerance;
  report.sigma_rh = rh_speed(flux, 0.0, flux.u_minus(), flux.u_plus());

  // Degenerate data: no jump anywhere in the initial snapshot.
  {
    const std::vector<double>& v0 = history.values(0);
    const double spread = *std::max_element(v0.begin(), v0.end()) -
                          *std::min_element(v0.begin(), v0.end());
    if (spread <= 1e-3 * (flux.u_minus() - flux.u_plus())) {
      report.note = "degenerate: no jump in the initial data";
      return report;
    }
  }

  const std::size_t n_snap = history.size();
  std::vector<ShiftFit> fits(n_snap);
  for (std::size_t k = 0; k < n_snap; ++k) {
    fits[k] = best_shift_l1(history.grid(), history.values(k), flux.u_minus(), flux.u_plus());
  }

  // Earliest snapshot from which the residual stays within tolerance.
  std::size_t first_ok = n_snap;
  for (std::size_t k = n_snap; k-- > 0;) {
    if (fits[k].l1 <= tolerance) {
      first_ok = k;
    } else {
      break;
    }
  }
  if (first_ok == n_snap || first_ok + 1 >= n_snap) {
    report.note = "not emerged within the simulated horizon";
    return report;
  }

  report.emerged = true;
  report.T_detected = history.times()[first_ok];
  report.X_detected = fits[first_ok].shift;
  double worst = 0.0;
  for (std::size_t k = first_ok; k < n_snap; ++k) {
    worst = std::max(worst, fits[k].l1);
  }
  report.post_emergence_error = worst;

  // Measured speed: least-squares slope of the fitted shift over the
  // post-emergence window.
  {
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    const double m = static_cast<double>(n_snap - first_ok);
    for (std::size_t k = first_ok; k < n_snap; ++k) {
      const double t = history.times()[k];
      st += t;
      sx += fits[k].shift;
      stt += t * t;
      stx += t * fits[k].shift;
    }
    const double denom = m * stt - st * st;
    report.sigma_measured = denom > 0.0 ? (m * stx - st * sx) / denom : report.sigma_rh;
  }
  return report;
}

EmergenceBound emergence_bound(const FluxModel& flux, const InitialData& data) {
  if (data.kind != InitialData::Kind::piecewise4) {
    throw ConfigError("emergence_bound: requires piecewise4 initial data");
  }
  const double du = flux.u_minus() - flux.u_plus();
  const double denom = flux.alpha() * du * du;
  EmergenceBound bound;
  bound.T_right = 2.0 * (data.u_M - flux.u_plus()) * (data.x_plus - data.x0) / denom;
  bound.T_left = 2.0 * (flux.u_minus() - data.u_m) * (data.x0 - data.x_minus) / denom;
  bound.T_max = std::max(bound.T_right, bound.T_left);
  return bound;
}

}  // namespace hetclaw
