#include "hetclaw/hj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetclaw/errors.hpp"

namespace hetclaw {

double ValueField::at(double x) const {
  const double dx = grid.dx();
  if (x <= grid.x_left) return v.front() + far_slope_left * (x - grid.x_left);
  if (x >= grid.x_right) return v.back() + far_slope_right * (x - grid.x_right);
  const double s = (x - grid.x_left) / dx;
  const int i = std::min(static_cast<int>(s), grid.n_cells - 1);
  const double w = s - i;
  return (1.0 - w) * v[i] + w * v[i + 1];
}

LegendreResult legendre(const FluxModel& flux, double x, double p) {
  // Bracket the root of f_u(x, .) = p by doubling, then Newton with bisection
  // safeguard; f_u is strictly increasing by uniform convexity.
  double lo = -1.0, hi = 1.0;
  int it = 0;
  while (flux.du(x, lo) > p) {
    lo = 2.0 * lo - 1.0;
    if (++it > 60) throw NewtonDivergence("legendre: bracket expansion failed (low side)");
  }
  it = 0;
  while (flux.du(x, hi) < p) {
    hi = 2.0 * hi + 1.0;
    if (++it > 60) throw NewtonDivergence("legendre: bracket expansion failed (high side)");
  }
  double u = 0.5 * (lo + hi);
  for (it = 0; it < 50; ++it) {
    const double g = flux.du(x, u) - p;
    if (g > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double dg = flux.duu(x, u);
    double next = dg > 0.0 ? u - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) < 1e-14 * std::max(1.0, std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  LegendreResult result;
  result.argmax = u;
  result.value = u * p - flux.eval(x, u);
  return result;
}

ValueField antiderivative(const SolutionField& field) {
  ValueField vf;
  vf.grid = field.grid;
  vf.time = field.time;
  vf.v.resize(field.grid.n_cells + 1);
  vf.v[0] = 0.0;
  const double dx = field.grid.dx();
  for (int i = 0; i < field.grid.n_cells; ++i) {
    vf.v[i + 1] = vf.v[i] + dx * field.values[i];
  }
  vf.far_slope_left = field.far_left;
  vf.far_slope_right = field.far_right;
  return vf;
}

namespace {

template <typename Fn>
double golden_min(Fn&& fn, double lo, double hi, double tol, double* arg) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = fn(x1), f2 = fn(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = fn(x2);
    }
  }
  *arg = 0.5 * (lo + hi);
  return fn(*arg);
}

}  // namespace

ValueField dp_value(const FluxModel& flux, const ValueField& v0, double t_end, double dt,
                    const DpOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("dp_value: dt must be positive");
  if (!(t_end > v0.time)) throw ConfigError("dp_value: t_end must exceed the start time");
  const Grid1D& grid = v0.grid;
  const double dx = grid.dx();

  double slope_lo = options.slope_lo;
  double slope_hi = options.slope_hi;
  if (slope_lo == 0.0 && slope_hi == 0.0) {
    slope_lo = std::min(v0.far_slope_left, v0.far_slope_right);
    slope_hi = std::max(v0.far_slope_left, v0.far_slope_right);
    for (int i = 0; i + 1 < static_cast<int>(v0.v.size()); ++i) {
      const double s = (v0.v[i + 1] - v0.v[i]) / dx;
      slope_lo = std::min(slope_lo, s);
      slope_hi = std::max(slope_hi, s);
    }
    const double margin = 0.1 + 0.1 * std::max(std::abs(slope_lo), std::abs(slope_hi));
    slope_lo -= margin;
    slope_hi += margin;
  }
  const double speed = flux.max_speed(slope_lo, slope_hi);
  if (speed > 0.0 && dt > dx / speed) {
    throw ConfigError("dp_value: dt must satisfy dt <= dx / theta(slope bound)");
  }
  const double radius =
      std::max(options.cone_safety * speed * dt, 1e-3 * dx);  // floor avoids degeneracy

  ValueField cur = v0;
  const int n_steps = static_cast<int>(std::ceil((t_end - v0.time) / dt - 1e-12));
  for (int step_i = 0; step_i < n_steps; ++step_i) {
    const double h = std::min(dt, t_end - cur.time);
    ValueField next = cur;
    next.time = cur.time + h;
    for (int j = 0; j < grid.n_cells + 1; ++j) {
      const double x = grid.interface(j);
      auto candidate = [&](double y) {
        return cur.at(y) + h * legendre(flux, 0.5 * (x + y), (x - y) / h).value;
      };
      // Coarse scan seeds the golden-section polish: v may carry downward kinks
      // (semiconcavity), so the objective need not be unimodal across cells.
      const double lo = x - radius;
      const double hi = x + radius;
      int best = 0;
      double best_val = std::numeric_limits<double>::infinity();
      const int m = std::max(3, options.scan_points);
      for (int si = 0; si < m; ++si) {
        const double y = lo + (hi - lo) * si / (m - 1.0);
        const double val = candidate(y);
        if (val < best_val) {
          best_val = val;
          best = si;
        }
      }
      if (best == 0 || best == m - 1) {
        // Re-check against the interior before declaring the cone too narrow:
        // flat objectives can tie at the edge.
        const double edge = best == 0 ? lo : hi;
        const double inner = best == 0 ? lo + (hi - lo) / (m - 1.0) : hi - (hi - lo) / (m - 1.0);
        if (candidate(edge) < candidate(inner) - 1e-12 * std::max(1.0, std::abs(best_val))) {
          throw ConeTooNarrow("dp_value: minimiser on the bracket edge at x=" +
                              std::to_string(x));
        }
      }
      const double blo = lo + (hi - lo) * std::max(0, best - 1) / (m - 1.0);
      const double bhi = lo + (hi - lo) * std::min(m - 1, best + 1) / (m - 1.0);
      double arg = 0.0;
      next.v[j] = golden_min(candidate, blo, bhi, 1e-3 * dx, &arg);
    }
    cur = std::move(next);
  }
  cur.time = t_end;
  return cur;
}

CorrespondenceReport correspondence_check(const ValueField& value, const SolutionField& field) {
  if (!(value.grid == field.grid)) {
    throw GridMismatch("correspondence_check: grids differ");
  }
  if (std::abs(value.time - field.time) > 1e-10 * std::max(1.0, std::abs(field.time))) {
    throw GridMismatch("correspondence_check: times differ");
  }
  const double dx = field.grid.dx();
  CorrespondenceReport report;
  for (int i = 0; i < field.grid.n_cells; ++i) {
    const double u_fd = (value.v[i + 1] - value.v[i]) / dx;
    const double err = std::abs(u_fd - field.values[i]);
    report.l1 += err * dx;
    if (err > report.linf) {
      report.linf = err;
      report.worst_cell = i;
    }
  }
  return report;
}

}  // namespace hetclaw
