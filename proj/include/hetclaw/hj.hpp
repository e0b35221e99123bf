#ifndef HETCLAW_HJ_HPP_
#define HETCLAW_HJ_HPP_

#include <utility>
#include <vector>

#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"

namespace hetclaw {

/// Value function samples at the n_cells+1 grid interfaces, so that the
/// difference quotient across one cell matches the cell average of u = v_x.
struct ValueField {
  Grid1D grid;
  double time = 0.0;
  std::vector<double> v;       // size n_cells + 1
  double far_slope_left = 0.0;   // linear extension slopes beyond the grid
  double far_slope_right = 0.0;

  double at(double x) const;  // linear interpolation, linear extension outside
};

struct LegendreResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// Convex conjugate f*(x, p) = sup_u { u p - f(x, u) }; the sup is attained at
/// the unique root of f_u(x, .) = p (uniform convexity). Safeguarded Newton.
LegendreResult legendre(const FluxModel& flux, double x, double p);

/// Antiderivative of the cell averages, anchored at zero on the left edge.
ValueField antiderivative(const SolutionField& field);

struct DpOptions {
  double cone_safety = 1.5;  // bracket half-width = safety * speed * dt
  // Signed slope range of the value function; both zero = derive from v0 with a
  // margin. The speed envelope is read over [slope_lo, slope_hi].
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  int scan_points = 7;  // coarse seed scan before the golden-section polish
};

/// One-step dynamic programming for v_t + f(x, v_x) = 0:
///   v(x, t+dt) = min_y { v(y, t) + dt f*(mid(x,y), (x - y)/dt) }
/// over |y - x| <= R dt. Requires dt <= dx / theta(slope_bound); throws
/// ConeTooNarrow if a minimiser sits on the bracket edge.
ValueField dp_value(const FluxModel& flux, const ValueField& v0, double t_end, double dt,
                    const DpOptions& options = {});

struct CorrespondenceReport {
  double l1 = 0.0;
  double linf = 0.0;
  int worst_cell = 0;
};

/// Compares difference quotients of v against the cell averages of u in L1.
CorrespondenceReport correspondence_check(const ValueField& value, const SolutionField& field);

}  // namespace hetclaw

#endif  // HETCLAW_HJ_HPP_
