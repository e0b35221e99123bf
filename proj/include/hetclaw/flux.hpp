#ifndef HETCLAW_FLUX_HPP_
#define HETCLAW_FLUX_HPP_

#include <memory>
#include <string>
#include <utility>

namespace hetclaw {

enum class FluxTag {
  lwr_heterogeneous,
  convex_combination,
  gaussian_lwr,
  negative_heterogeneity,
  homogeneous_quadratic,
};

std::string flux_tag_name(FluxTag tag);
FluxTag flux_tag_from_name(const std::string& name);

/// Family selector plus parameters. Unused fields are ignored by each family.
struct FluxFamily {
  FluxTag tag = FluxTag::homogeneous_quadratic;

  // convex_combination / negative_heterogeneity
  double eps = 0.1;         // mollifier half-width, must lie in (0, 1/4)
  double phi_center = 0.0;  // centre of the heterogeneity transition
  double phi_width = 0.5;   // transition half-width (full transition width = 2*phi_width)
  double scale = 1.0;       // overall multiplier; the convexity constant scales with it

  // lwr_heterogeneous: V(x) = v0 + v1 * exp(-x^2), requires v0 > 0, v1 >= 0
  double v0 = 1.0;
  double v1 = 0.0;

  // homogeneous_quadratic: f(u) = scale * u^2 / 2 with configurable reference states
  double u_plus = 0.0;
  double u_minus = 1.0;

  static FluxFamily lwr(double v0 = 1.0, double v1 = 0.0);
  static FluxFamily convex_combination(double eps = 0.1, double scale = 1.0,
                                       double phi_center = 0.0, double phi_width = 0.5);
  static FluxFamily gaussian_lwr();
  static FluxFamily negative_heterogeneity(double eps = 0.1, double scale = 1.0,
                                           double phi_center = 0.0, double phi_width = 0.5);
  static FluxFamily homogeneous_quadratic(double scale = 1.0, double u_plus = 0.0,
                                          double u_minus = 1.0);
};

namespace detail {
class FluxImpl;
}

/// Immutable heterogeneous flux f(x, u) with closed-form partial derivatives,
/// its pair of stationary states u_+ < u_-, the uniform-convexity constant, and
/// the speed envelope theta(v) = sup_x |f_u(x, v)|. Safe for concurrent reads.
class FluxModel {
 public:
  FluxModel() = default;

  double eval(double x, double u) const;
  double du(double x, double u) const;
  double dx(double x, double u) const;
  double duu(double x, double u) const;
  double dxu(double x, double u) const;
  double theta(double v) const;

  // Upper bound for |f_u| over x in R and u in [u_lo, u_hi]; convexity in u
  // puts the extremes at the interval endpoints.
  double max_speed(double u_lo, double u_hi) const;

  double u_plus() const;
  double u_minus() const;
  double alpha() const;
  const FluxFamily& family() const;

  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  friend FluxModel build_flux(const FluxFamily&);
  std::shared_ptr<const detail::FluxImpl> impl_;
};

FluxModel build_flux(const FluxFamily& family);

/// Rankine-Hugoniot speed (f(x,u_l) - f(x,u_r)) / (u_l - u_r).
/// Throws DegenerateJump when |u_l - u_r| <= jump_floor.
double rh_speed(const FluxModel& flux, double x, double u_left, double u_right,
                double jump_floor = 1e-10);

struct AssumptionCheck {
  bool pass = true;
  double worst = 0.0;  // worst violation magnitude (0 when clean)
  double witness_x = 0.0;
  double witness_u = 0.0;
  bool heuristic = false;
  std::string note;
};

/// Sampled verdicts for the structural flux assumptions. superlinear_growth is a
/// heuristic: growth conditions are not decidable from compact samples.
struct AssumptionReport {
  AssumptionCheck stationarity;                // f_x(., u_+-) == 0
  AssumptionCheck uniform_convexity;           // f_uu >= alpha
  AssumptionCheck derivative_consistency;      // finite differences match du, dx
  AssumptionCheck superlinear_growth;          // |f| dominates a superlinear minorant
  AssumptionCheck speed_envelope;              // theta finite and continuous on samples
  AssumptionCheck positive_mixed_derivative;   // f_xu >= 0

  bool core_pass() const {
    return stationarity.pass && uniform_convexity.pass && derivative_consistency.pass &&
           speed_envelope.pass;
  }
};

AssumptionReport validate_assumptions(const FluxModel& flux,
                                      std::pair<double, double> x_range,
                                      std::pair<double, double> u_range,
                                      int grid_density = 64);

}  // namespace hetclaw

#endif  // HETCLAW_FLUX_HPP_
