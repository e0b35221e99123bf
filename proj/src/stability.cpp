#include "hetclaw/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetclaw/errors.hpp"
#include "hetclaw/quadrature.hpp"
#include "hetclaw/solver.hpp"

namespace hetclaw {

double entropy_eta(double u, double c) {
  const double d = u - c;
  return d * d;
}

double entropy_flux_Q(const FluxModel& flux, double x, double u, double c, int quad_order) {
  return gauss_integrate([&](double y) { return 2.0 * (y - c) * flux.du(x, y); }, c, u,
                         quad_order);
}

double eval_q(const FluxModel& flux, double x, double u, double c, int quad_order) {
  return gauss_integrate([&](double z) { return 2.0 * z * flux.du(x, c + z * (u - c)); },
                         0.0, 1.0, quad_order);
}

ShiftPair integrate_shift_curves(const FieldHistory& history, const FluxModel& flux,
                                 const ShiftOptions& options) {
  const Grid1D& grid = history.grid();
  const double dx = grid.dx();
  const double jump_floor = options.jump_floor_rel * (flux.u_minus() - flux.u_plus());
  const double ordering_tol = options.ordering_tol_cells * dx;
  const double sigma = rh_speed(flux, 0.0, flux.u_minus(), flux.u_plus());

  ShiftPair pair;
  pair.sigma = sigma;

  auto xi_dot = [&](double xi, double t, double c) {
    const auto traces = history.traces_offset(xi, t, options.layer_offset_cells);
    if (traces.first - traces.second > jump_floor) {
      // Determinate Filippov value at a genuine jump: the RH speed.
      return (flux.eval(xi, traces.first) - flux.eval(xi, traces.second)) /
             (traces.first - traces.second);
    }
    return eval_q(flux, xi, history.value(xi, t), c);
  };

  double xp = 0.0;  // xi_plus, driven by c = u_+
  double xm = 0.0;  // xi_minus, driven by c = u_-
  const std::vector<double>& times = history.times();
  pair.times.push_back(times[0]);
  pair.xi_plus.push_back(xp);
  pair.xi_minus.push_back(xm);
  pair.xi_bar.push_back(0.0);

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t_a = times[k];
    const double t_b = times[k + 1];
    const double solver_dt = history.solver_dt(k + 1);
    const int n_sub =
        std::max(1, static_cast<int>(std::llround((t_b - t_a) / std::max(solver_dt, 1e-300))));
    const double h = (t_b - t_a) / n_sub;
    for (int j = 0; j < n_sub; ++j) {
      const double tau = t_a + j * h;
      const double vp = xi_dot(xp, tau, flux.u_plus());
      const double vm = xi_dot(xm, tau, flux.u_minus());
      xp += h * vp;
      xm += h * vm;
      pair.lipschitz = std::max({pair.lipschitz, std::abs(vp), std::abs(vm)});
    }
    if (xp - xm > ordering_tol) {
      throw OrderingViolation("integrate_shift_curves: xi_+ exceeded xi_- beyond tolerance");
    }
    pair.times.push_back(t_b);
    pair.xi_plus.push_back(xp);
    pair.xi_minus.push_back(xm);
    // selector = 0.5 gives the midpoint choice (xi_+ + xi_-)/2 - sigma t.
    pair.xi_bar.push_back(options.selector * xp + (1.0 - options.selector) * xm -
                          sigma * t_b);
  }
  return pair;
}

double relative_l2(const SolutionField& field, double u_minus, double u_plus, double shift,
                   double sigma_t_offset) {
  const Grid1D& grid = field.grid;
  const double dx = grid.dx();
  const double zeta = shift + sigma_t_offset;  // jump location of the shifted profile
  double acc = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double a = grid.interface(i);
    const double b = grid.interface(i + 1);
    const double u = field.values[i];
    if (zeta > a && zeta < b) {
      const double dl = u - u_minus;
      const double dr = u - u_plus;
      acc += dl * dl * (zeta - a) + dr * dr * (b - zeta);
    } else {
      const double d = u - (b <= zeta ? u_minus : u_plus);
      acc += d * d * dx;
    }
  }
  return std::sqrt(acc);
}

ShiftBound shift_bound_K(const FluxModel& flux, double l2_initial, double lipschitz_L,
                         double u_abs_max) {
  ShiftBound bound;
  bound.sigma = rh_speed(flux, 0.0, flux.u_minus(), flux.u_plus());
  bound.V = flux.theta(u_abs_max);
  const double ls = lipschitz_L + std::abs(bound.sigma);
  bound.K = (std::sqrt(ls) + std::sqrt(ls + bound.V)) * l2_initial /
            (flux.u_minus() - flux.u_plus());
  bound.linear_rate = ls;
  return bound;
}

StabilityReport certify_stability(const FieldHistory& history, const FluxModel& flux,
                                  const ShiftOptions& options) {
  StabilityReport report;
  const Grid1D& grid = history.grid();
  const double dx = grid.dx();
  const double sigma = rh_speed(flux, 0.0, flux.u_minus(), flux.u_plus());

  ShiftPair pair = integrate_shift_curves(history, flux, options);

  const SolutionField field0 = history.at_time(history.t_begin());
  report.initial_l2 = relative_l2(field0, flux.u_minus(), flux.u_plus(), 0.0, 0.0);

  double u_abs_max = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    for (double v : history.values(k)) u_abs_max = std::max(u_abs_max, std::abs(v));
  }
  report.bound = shift_bound_K(flux, report.initial_l2, pair.lipschitz, u_abs_max);
  report.num_tol = 5.0 * std::sqrt(dx) * u_abs_max;

  report.contraction_pass = true;
  report.ordering_pass = true;
  report.shift_bound_pass = true;
  for (std::size_t k = 0; k < pair.size(); ++k) {
    const double t = pair.times[k];
    SolutionField field = history.at_time(t);
    const double norm = relative_l2(field, flux.u_minus(), flux.u_plus(), pair.xi_bar[k],
                                    sigma * t);
    report.times.push_back(t);
    report.relative_l2.push_back(norm);
    report.xi_plus.push_back(pair.xi_plus[k]);
    report.xi_minus.push_back(pair.xi_minus[k]);
    report.xi_bar.push_back(pair.xi_bar[k]);
    const double env = report.bound.K * std::sqrt(std::max(t, 0.0)) + 2.0 * dx;
    report.envelope.push_back(env);

    if (norm > report.initial_l2 + report.num_tol) report.contraction_pass = false;
    if (pair.xi_plus[k] - pair.xi_minus[k] > options.ordering_tol_cells * dx) {
      report.ordering_pass = false;
    }
    if (std::abs(pair.xi_bar[k]) > env) report.shift_bound_pass = false;
  }

  // Mixed-derivative hypothesis on the measured solution range, a posteriori.
  {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < history.size(); ++k) {
      for (double v : history.values(k)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    lo = std::min(lo, flux.u_plus());
    hi = std::max(hi, flux.u_minus());
    const auto check = validate_assumptions(flux, {grid.x_left, grid.x_right}, {lo, hi}, 64)
                           .positive_mixed_derivative;
    report.p_validated = check.pass;
    report.p_worst = check.worst;
  }
  return report;
}

GrowthReport reference_growth(const FluxModel& flux, const InitialData& psi_data,
                              const Grid1D& grid, double horizon, double reference,
                              const GrowthOptions& options) {
  if (psi_data.bump_amplitude < 0.0) {
    throw ConfigError("reference_growth: psi must be non-negative");
  }

  SolutionField field = make_field(grid, psi_data, flux.u_minus(), flux.u_plus(),
                                   BoundaryMode::far_field);
  SimulateOptions sim;
  sim.cfl = options.cfl;
  sim.snapshot_every = options.snapshot_every;
  FieldHistory history = simulate(field, flux, horizon, sim);

  auto max_slope = [&](const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      m = std::max(m, std::abs(v[i] - v[i - 1]));
    }
    return m / grid.dx();
  };

  GrowthReport report;
  report.reference = reference;
  const double slope0 = std::max(max_slope(history.values(0)), 1e-12);

  auto l2_to_ref = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (double u : v) {
      const double d = u - reference;
      acc += d * d;
    }
    return std::sqrt(acc * grid.dx());
  };

  // eta_t + Q_x = -2 int_c^u f_x(x, y) dy for classical solutions; record its
  // spatial integral as the entropy-production diagnostic.
  auto production = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
      const double x = grid.center(i);
      acc += -2.0 * gauss_integrate([&](double y) { return flux.dx(x, y); }, reference,
                                    v[i], 16);
    }
    return acc * grid.dx();
  };

  report.t_classical = history.t_end();
  bool tripped = false;
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (max_slope(history.values(k)) > options.gradient_factor * slope0) {
      report.t_classical = history.times()[k];
      tripped = true;
      break;
    }
    report.times.push_back(history.times()[k]);
    report.l2_to_reference.push_back(l2_to_ref(history.values(k)));
    report.entropy_production.push_back(production(history.values(k)));
  }
  if (tripped && report.times.size() < 4) {
    throw ShockFormedEarly(
        "reference_growth: gradient blowup before a meaningful window was recorded");
  }
  report.strictly_increasing = true;
  for (std::size_t k = 1; k < report.times.size(); ++k) {
    if (!(report.l2_to_reference[k] > report.l2_to_reference[k - 1])) {
      report.strictly_increasing = false;
    }
  }
  report.total_increase = report.l2_to_reference.back() - report.l2_to_reference.front();
  return report;
}

EntropyResidual entropy_residual(const FieldHistory& history, const FluxModel& flux,
                                 double c, int quad_order) {
  if (!(c >= flux.u_plus() && c <= flux.u_minus())) {
    throw ConfigError("entropy_residual: c must lie in [u_plus, u_minus]");
  }
  const Grid1D& grid = history.grid();
  const int n = grid.n_cells;
  const double dx = grid.dx();
  const auto far = history.far_fields();

  EntropyResidual res;
  res.cell_max.assign(n, -std::numeric_limits<double>::infinity());

  std::vector<double> q_if(n + 1);
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const std::vector<double>& ua = history.values(k);
    const std::vector<double>& ub = history.values(k + 1);
    const double dt = history.times()[k + 1] - history.times()[k];

    auto cell = [&](int i) -> double {
      if (i >= 0 && i < n) return ua[i];
      return i < 0 ? far.first : far.second;
    };
    for (int i = 0; i <= n; ++i) {
      const double x = grid.interface(i);
      const double w = godunov_state(flux, x, cell(i - 1), cell(i));
      q_if[i] = entropy_flux_Q(flux, x, w, c, quad_order);
    }
    for (int i = 0; i < n; ++i) {
      const double r = (entropy_eta(ub[i], c) - entropy_eta(ua[i], c)) / dt +
                       (q_if[i + 1] - q_if[i]) / dx;
      res.cell_max[i] = std::max(res.cell_max[i], r);
      res.max_abs = std::max(res.max_abs, std::abs(r));
      if (r > res.max_positive) {
        res.max_positive = r;
        res.witness_x = grid.center(i);
        res.witness_t = history.times()[k];
      }
    }
  }
  return res;
}

}  // namespace hetclaw
