// Acceptance suite: one check per criterion, each printed as a PASS/FAIL line
// with the measured value, its threshold, and the runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <string>
#include <vector>

#include "hetclaw/characteristics.hpp"
#include "hetclaw/hj.hpp"
#include "hetclaw/shock.hpp"
#include "hetclaw/solver.hpp"
#include "hetclaw/stability.hpp"

using namespace hetclaw;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(const std::string& id, bool pass, double runtime, double budget,
            const std::string& detail) {
  const bool ok = pass && runtime < budget;
  if (!ok) ++g_failures;
  std::printf("[%s] %s  %s  (runtime %.2fs < %.0fs)\n", ok ? "PASS" : "FAIL", id.c_str(),
              detail.c_str(), runtime, budget);
  std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

// --------------------------------------------------------------------------
// A01: stationary simple shock is exact per cell.
// --------------------------------------------------------------------------
void a01_stationary_shock() {
  Timer timer;
  const FluxModel flux = build_flux(FluxFamily::lwr(1.0, 0.0));
  const Grid1D grid{-2.0, 2.0, 1000};
  const SolutionField initial =
      make_field(grid, InitialData::riemann(), flux.u_minus(), flux.u_plus());
  const SolutionField out = advance(initial, flux, 1.0);
  double worst = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double expect = grid.center(i) < 0.0 ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(out.values[i] - expect));
  }
  report("A01 stationary_simple_shock", worst <= 1e-12, timer.seconds(), 1.0,
         fmt("per-cell error %.3e <= %.0e", worst, 1e-12));
}

// --------------------------------------------------------------------------
// A02: constant reference states preserved by every built-in family.
// --------------------------------------------------------------------------
void a02_constant_states() {
  Timer timer;
  double worst = 0.0;
  for (const FluxFamily& fam :
       {FluxFamily::lwr(1.0, 0.5), FluxFamily::convex_combination(),
        FluxFamily::gaussian_lwr(), FluxFamily::negative_heterogeneity(),
        FluxFamily::homogeneous_quadratic()}) {
    const FluxModel flux = build_flux(fam);
    const Grid1D grid{-4.0, 4.0, 256};
    for (double state : {flux.u_plus(), flux.u_minus()}) {
      const SolutionField initial = make_field(grid, InitialData::constant(state),
                                               flux.u_minus(), flux.u_plus());
      const SolutionField out = advance(initial, flux, 1.0);
      for (double v : out.values) worst = std::max(worst, std::abs(v - state));
    }
  }
  report("A02 constant_state_preservation", worst <= 1e-12, timer.seconds(), 1.0,
         fmt("max deviation %.3e <= %.0e", worst, 1e-12));
}

// --------------------------------------------------------------------------
// A03 + A04 share one emergence run.
// --------------------------------------------------------------------------
struct EmergenceRun {
  FluxModel flux;
  Grid1D grid;
  FieldHistory history;
  ShockCurve s_minus;
  ShockCurve s_plus;
};

EmergenceRun make_emergence_run() {
  EmergenceRun run;
  run.flux = build_flux(FluxFamily::convex_combination());
  run.grid = Grid1D{-3.0, 13.0, 4000};
  const SolutionField initial =
      make_field(run.grid, InitialData::piecewise4(-1.0, 0.0, 1.0, 0.0, 1.0),
                 run.flux.u_minus(), run.flux.u_plus());
  run.history = simulate(initial, run.flux, 12.0, {0.45, 10});
  run.s_minus = track_shock(run.history, run.flux, -1.0, 0.0);
  run.s_plus = track_shock(run.history, run.flux, 1.0, 0.0);
  return run;
}

void a03_emergence(const EmergenceRun& run, double setup_seconds) {
  Timer timer;
  const double dx = run.grid.dx();
  const EmergenceReport rep = detect_emergence(run.history, run.flux, 10.0 * dx);
  const double sigma_err = std::abs(rep.sigma_measured - rep.sigma_rh);
  const bool pass = rep.emerged && rep.post_emergence_error <= 10.0 * dx &&
                    sigma_err <= 0.05 * std::abs(rep.sigma_rh);
  report("A03 finite_time_emergence", pass, setup_seconds + timer.seconds(), 60.0,
         fmt("post-merge L1 %.3e <= %.3e", rep.post_emergence_error, 10.0 * dx) +
             fmt(", sigma err %.3e <= %.3e", sigma_err, 0.05 * rep.sigma_rh));
}

void a04_wedge(const EmergenceRun& run) {
  Timer timer;
  const double sigma = rh_speed(run.flux, 0.0, run.flux.u_minus(), run.flux.u_plus());
  const double du = run.flux.u_minus() - run.flux.u_plus();
  int samples = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 20;
       k < run.s_plus.samples.size() && k < run.s_minus.samples.size(); ++k) {
    const ShockSample& sp = run.s_plus.samples[k];
    const ShockSample& sm = run.s_minus.samples[k];
    if (std::abs(sp.s - sm.s) <= 6.0 * run.grid.dx()) break;  // merged
    const bool plus_active = run.flux.u_minus() - sp.u_l > 0.02 * du;
    const bool minus_active = sm.u_r - run.flux.u_plus() > 0.02 * du;
    if (plus_active && minus_active) {
      ++samples;
      min_margin = std::min(min_margin, std::min(sigma - sp.speed, sm.speed - sigma));
    }
  }
  const bool pass = samples > 10 && min_margin > 0.0;
  report("A04 wedge_speed_ordering", pass, timer.seconds(), 60.0,
         fmt("min margin %.3e > 0 over %g interacting samples", min_margin,
             static_cast<double>(samples)));
}

// --------------------------------------------------------------------------
// A05: merge-time finiteness across a 3x3 (alpha, width) sweep.
// --------------------------------------------------------------------------
void a05_emergence_sweep() {
  Timer timer;
  struct Point {
    double scale = 0.0, width = 0.0, t_merge = 0.0, t_bound = 0.0, horizon = 0.0;
    bool finite = false;
  };
  std::vector<std::future<Point>> futures;
  for (double scale : {0.75, 1.5, 3.0}) {
    for (double width : {1.0, 2.0, 4.0}) {
      futures.push_back(std::async(std::launch::async, [scale, width]() {
        Point p;
        p.scale = scale;
        p.width = width;
        const FluxModel flux = build_flux(FluxFamily::convex_combination(0.1, scale));
        const double t_self_similar = 4.0 * width / scale;  // Burgers-exact merge time
        p.horizon = 1.5 * t_self_similar + 1.0;
        const Grid1D grid{-0.5 * width - 2.0, 3.0 * width + 4.0, 1600};
        const InitialData data =
            InitialData::piecewise4(-0.5 * width, 0.0, 0.5 * width, 0.0, 1.0);
        const SolutionField initial = make_field(grid, data, flux.u_minus(), flux.u_plus());
        const FieldHistory history = simulate(initial, flux, p.horizon, {0.45, 10});
        const ShockCurve a = track_shock(history, flux, -0.5 * width, 0.0);
        const ShockCurve b = track_shock(history, flux, 0.5 * width, 0.0);
        const ShockCurve merged = merge_shocks(history, flux, a, b);
        p.t_merge = merged.t_origin;
        p.finite = std::isfinite(p.t_merge) && p.t_merge < p.horizon;
        p.t_bound = emergence_bound(flux, data).T_max;
        return p;
      }));
    }
  }
  bool all_finite = true;
  for (auto& f : futures) {
    const Point p = f.get();
    all_finite = all_finite && p.finite;
    std::printf(
        "    alpha=%.3g width=%.3g: merge T=%.3f (horizon %.1f, partial bound %.3f)\n",
        (2.0 / 3.0) * p.scale, p.width, p.t_merge, p.horizon, p.t_bound);
  }
  report("A05 merge_time_sweep", all_finite, timer.seconds(), 300.0,
         "all 9 sweep points merged in finite time");
}

// --------------------------------------------------------------------------
// A06: gaussian counterexample develops a shock from constant data.
// --------------------------------------------------------------------------
void a06_gaussian_counterexample() {
  Timer timer;
  const FluxModel flux = build_flux(FluxFamily::gaussian_lwr());

  // Characteristic rate at (x, z) = (1, 1/2) via a 4th-order stencil.
  const double h = 1e-4;
  const CharTrajectory traj = integrate_char(flux, {1.0, 0.5, 0.0}, 8.0 * h, h);
  const std::vector<CharState>& s = traj.samples;
  const double zdot0 =
      (-25.0 * s[0].z + 48.0 * s[1].z - 36.0 * s[2].z + 16.0 * s[3].z - 3.0 * s[4].z) /
      (12.0 * h);
  const double zdot_err = std::abs(zdot0 - (-0.5 * std::exp(-1.0)));

  const Grid1D grid{-6.0, 6.0, 1600};
  const SolutionField initial =
      make_field(grid, InitialData::constant(0.5), flux.u_minus(), flux.u_plus());
  const FieldHistory history = simulate(initial, flux, 8.0, {0.45, 20});
  double max_jump = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const std::vector<double>& v = history.values(k);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      max_jump = std::max(max_jump, v[i] - v[i + 1]);
    }
  }
  const bool pass = max_jump > 0.1 && zdot_err <= 1e-10;
  report("A06 gaussian_counterexample", pass, timer.seconds(), 30.0,
         fmt("trace jump %.3f > 0.1, char-rate err %.1e <= 1e-10", max_jump, zdot_err));
}

// --------------------------------------------------------------------------
// A07: lower bounds on the normalised entropy flux derivatives.
// --------------------------------------------------------------------------
void a07_q_bounds() {
  Timer timer;
  bool pass = true;
  double worst_u = std::numeric_limits<double>::infinity();
  double worst_c = std::numeric_limits<double>::infinity();
  const double h = 1e-5;
  for (const FluxFamily& fam :
       {FluxFamily::convex_combination(), FluxFamily::homogeneous_quadratic()}) {
    const FluxModel flux = build_flux(fam);
    const double alpha = flux.alpha();
    for (int ix = 0; ix < 32; ++ix) {
      const double x = -2.0 + 4.0 * ix / 31.0;
      for (int iu = 0; iu < 32; ++iu) {
        const double u = -1.0 + 3.0 * iu / 31.0;
        for (int ic = 0; ic < 32; ++ic) {
          const double c = flux.u_plus() + (flux.u_minus() - flux.u_plus()) * ic / 31.0;
          const double qu =
              (eval_q(flux, x, u + h, c) - eval_q(flux, x, u - h, c)) / (2.0 * h);
          const double qc =
              (eval_q(flux, x, u, c + h) - eval_q(flux, x, u, c - h)) / (2.0 * h);
          worst_u = std::min(worst_u, qu - (2.0 * alpha / 3.0 - 1e-6));
          worst_c = std::min(worst_c, qc - (alpha / 3.0 - 1e-6));
          pass = pass && qu >= 2.0 * alpha / 3.0 - 1e-6 && qc >= alpha / 3.0 - 1e-6;
        }
      }
    }
  }
  report("A07 q_growth_bounds", pass, timer.seconds(), 10.0,
         fmt("min margins: dq/du %.2e, dq/dc %.2e (>= 0)", worst_u, worst_c));
}

// --------------------------------------------------------------------------
// A08 + A09: L2 contraction with shift curves, ordering and magnitude.
// --------------------------------------------------------------------------
struct ContractionOutcome {
  double excess_coarse = 0.0;
  double excess_fine = 0.0;
  bool contraction = true;
  bool ordering = true;
  bool magnitude = true;
};

ContractionOutcome contraction_run(double amplitude) {
  ContractionOutcome outcome;
  const FluxModel flux = build_flux(FluxFamily::convex_combination());
  for (int pass_i = 0; pass_i < 2; ++pass_i) {
    const int n = pass_i == 0 ? 4000 : 8000;
    const Grid1D grid{-6.0, 6.0, n};
    const double dx = grid.dx();
    const SolutionField initial = make_field(
        grid, InitialData::perturbed(amplitude, -2.0, 0.8), flux.u_minus(), flux.u_plus());
    double u0_max = 0.0;
    for (double v : initial.values) u0_max = std::max(u0_max, std::abs(v));
    const FieldHistory history = simulate(initial, flux, 2.0, {0.45, 10});
    const StabilityReport rep = certify_stability(history, flux);

    const double tol = 5.0 * std::sqrt(dx) * u0_max;
    double excess = 0.0;
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
      excess = std::max(excess, rep.relative_l2[k] - rep.initial_l2);
      if (rep.relative_l2[k] > rep.initial_l2 + tol) outcome.contraction = false;
      if (rep.xi_plus[k] - rep.xi_minus[k] > 2.0 * dx) outcome.ordering = false;
      if (std::abs(rep.xi_bar[k]) >
          rep.bound.K * std::sqrt(std::max(rep.times[k], 0.0)) + 2.0 * dx) {
        outcome.magnitude = false;
      }
    }
    (pass_i == 0 ? outcome.excess_coarse : outcome.excess_fine) = std::max(excess, 0.0);
  }
  return outcome;
}

void a08_a09_contraction() {
  Timer timer;
  bool contraction = true, ordering = true, magnitude = true, shrink = true;
  for (double amplitude : {0.1, 0.3, 0.6}) {
    const ContractionOutcome outcome = contraction_run(amplitude);
    contraction = contraction && outcome.contraction;
    ordering = ordering && outcome.ordering;
    magnitude = magnitude && outcome.magnitude;
    shrink = shrink && outcome.excess_fine <= std::max(outcome.excess_coarse, 1e-12);
    std::printf("    amplitude %.1f: excess %.3e -> %.3e under refinement\n", amplitude,
                outcome.excess_coarse, outcome.excess_fine);
  }
  const double runtime = timer.seconds();
  report("A08 l2_contraction", contraction && shrink, runtime, 360.0,
         "norms within initial + 5 sqrt(dx) ||u0||_inf; excess shrinks");
  report("A09 shift_ordering_and_magnitude", ordering && magnitude, 0.0, 1.0,
         "xi_+ <= xi_- + 2dx and |xi_bar| <= K sqrt(t) + 2dx at every sample");
}

// --------------------------------------------------------------------------
// A10: strict L2 growth under negative heterogeneity, against the twin control.
// --------------------------------------------------------------------------
void a10_negative_heterogeneity() {
  Timer timer;
  const FluxModel neg = build_flux(FluxFamily::negative_heterogeneity());
  const FluxModel control = build_flux(FluxFamily::convex_combination());
  const double reference = neg.u_minus();
  InitialData data = InitialData::constant(reference);
  data.bump_amplitude = 0.5;
  data.bump_center = 0.0;
  data.bump_width = 1.0;
  const Grid1D grid{-4.0, 4.0, 4000};
  GrowthOptions options;
  options.snapshot_every = 20;
  const GrowthReport growth = reference_growth(neg, data, grid, 0.2, reference, options);
  const GrowthReport tame = reference_growth(control, data, grid, 0.2, reference, options);

  const double eps_floor =
      10.0 * std::numeric_limits<double>::epsilon() * growth.l2_to_reference.front();
  const double control_drift =
      std::max(0.0, tame.l2_to_reference.back() - tame.l2_to_reference.front());
  const bool pass = growth.strictly_increasing && growth.total_increase >= eps_floor &&
                    growth.total_increase >= 5.0 * control_drift;
  report("A10 negative_heterogeneity_growth", pass, timer.seconds(), 30.0,
         fmt("increase %.3e (control drift %.3e)", growth.total_increase, control_drift));
}

// --------------------------------------------------------------------------
// A11: Hamilton-Jacobi correspondence with first-order decay.
// --------------------------------------------------------------------------
void a11_hj_correspondence() {
  Timer timer;
  bool pass = true;
  std::vector<double> perturbed_errors;
  for (int n : {1000, 2000, 4000}) {
    for (int which : {0, 1}) {
      const FluxModel flux = which == 0 ? build_flux(FluxFamily::lwr(1.0, 0.0))
                                        : build_flux(FluxFamily::lwr(1.0, 0.5));
      const Grid1D grid{-3.0, 3.0, n};
      const InitialData data =
          which == 0 ? InitialData::riemann() : InitialData::perturbed(0.25, 1.0, 0.7);
      const SolutionField initial = make_field(grid, data, flux.u_minus(), flux.u_plus());
      const double t = 0.4;
      const double dt = 0.8 * grid.dx() / flux.max_speed(-0.1, 1.3);
      DpOptions dp;
      dp.slope_lo = -0.1;
      dp.slope_hi = 1.3;
      const ValueField v = dp_value(flux, antiderivative(initial), t, dt, dp);
      const SolutionField u = advance(initial, flux, t);
      const double l1 = correspondence_check(v, u).l1;
      pass = pass && l1 <= 10.0 * grid.dx();
      if (which == 1) perturbed_errors.push_back(l1);
    }
  }
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < perturbed_errors.size(); ++i) {
    worst_ratio = std::min(worst_ratio, perturbed_errors[i] / perturbed_errors[i + 1]);
  }
  pass = pass && worst_ratio >= 1.4;
  report("A11 hj_correspondence", pass, timer.seconds(), 180.0,
         fmt("L1 <= 10 dx at {1000,2000,4000}; decay ratio %.2f >= 1.4 (finest %.2e)",
             worst_ratio, perturbed_errors.back()));
}

// --------------------------------------------------------------------------
// A12: flux constancy along integrated characteristics.
// --------------------------------------------------------------------------
void a12_char_flux_constancy() {
  Timer timer;
  const FluxModel flux = build_flux(FluxFamily::convex_combination());
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double y0 = -2.0 + 4.0 * i / 9.0;
      const double z0 = -1.5 + 4.0 * j / 9.0;
      const CharTrajectory traj = integrate_char(flux, {y0, z0, 0.0}, 2.0, 1e-3);
      worst = std::max(worst, traj.flux_residual);
    }
  }
  report("A12 characteristic_flux_constancy", worst <= 1e-8, timer.seconds(), 5.0,
         fmt("max |f - f0| %.3e <= %.0e over 100 characteristics", worst, 1e-8));
}

// --------------------------------------------------------------------------
// A13: discrete L1 contraction between two perturbed runs.
// --------------------------------------------------------------------------
void a13_l1_contraction() {
  Timer timer;
  const FluxModel flux = build_flux(FluxFamily::convex_combination());
  const Grid1D grid{-5.0, 5.0, 2000};
  SolutionField a = make_field(grid, InitialData::perturbed(0.3, -1.5, 0.7),
                               flux.u_minus(), flux.u_plus());
  SolutionField b = make_field(grid, InitialData::perturbed(-0.25, 0.8, 0.5),
                               flux.u_minus(), flux.u_plus());
  const double bound = flux.max_speed(-0.5, 1.5);
  const double dt = 0.45 * grid.dx() / bound;
  auto l1 = [&](const SolutionField& u, const SolutionField& v) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) acc += std::abs(u.values[i] - v.values[i]);
    return acc * grid.dx();
  };
  double prev = l1(a, b);
  double worst_growth = 0.0;
  const int steps = static_cast<int>(std::ceil(1.0 / dt));
  for (int k = 0; k < steps; ++k) {
    a = step(a, flux, dt);
    b = step(b, flux, dt);
    const double cur = l1(a, b);
    worst_growth = std::max(worst_growth, cur - prev);
    prev = cur;
  }
  report("A13 discrete_l1_contraction", worst_growth <= 1e-10, timer.seconds(), 60.0,
         fmt("max per-step growth %.3e <= %.0e", worst_growth, 1e-10));
}

}  // namespace

int main() {
  std::printf("acceptance suite: heterogeneous conservation-law laboratory\n");
  Timer total;

  a01_stationary_shock();
  a02_constant_states();
  {
    Timer shared;
    const EmergenceRun run = make_emergence_run();
    a03_emergence(run, shared.seconds());
    a04_wedge(run);
  }
  a05_emergence_sweep();
  a06_gaussian_counterexample();
  a07_q_bounds();
  a08_a09_contraction();
  a10_negative_heterogeneity();
  a11_hj_correspondence();
  a12_char_flux_constancy();
  a13_l1_contraction();

  std::printf("total runtime %.1fs; %d criterion(s) failed\n", total.seconds(), g_failures);
  return g_failures == 0 ? 0 : 1;
}
