#include "hetclaw/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetclaw/errors.hpp"

namespace hetclaw {
namespace {

// ---------------------------------------------------------------------------
// Polynomial bump kernel machinery. The kernel is
//   eta_eps(s) = (15 / (16 eps)) (1 - (s/eps)^2)^2  on [-eps, eps],
// so every convolution below has an exact piecewise-polynomial closed form.
// ---------------------------------------------------------------------------

// Unit kernel on [-1, 1].
double kernel(double tau) {
  if (std::abs(tau) >= 1.0) return 0.0;
  const double q = 1.0 - tau * tau;
  return (15.0 / 16.0) * q * q;
}

// Primitive of the unit kernel: S(tau) = int_{-1}^{tau} kernel, clamped to [0, 1].
double smoothstep(double tau) {
  if (tau <= -1.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  const double t3 = tau * tau * tau;
  const double t5 = t3 * tau * tau;
  return 0.5 + (15.0 * tau - 10.0 * t3 + 3.0 * t5) / 16.0;
}

// Smoothed positive ramp P = eta_eps * max(., 0). Exactly 0 below -eps and
// exactly the identity above +eps, which keeps the flux families exact at the
// stationary states.
double ramp(double t, double eps) {
  if (t <= -eps) return 0.0;
  if (t >= eps) return t;
  const double tau = t / eps;
  const double q = 1.0 - tau * tau;
  return t * smoothstep(tau) + (5.0 * eps / 32.0) * q * q * q;
}

double ramp_derivative(double t, double eps) {
  return smoothstep(t / eps);
}

// Primitive of the ramp: RR(t) = int_{-eps}^{t} P(s) ds.
double ramp_integral(double t, double eps) {
  if (t <= -eps) return 0.0;
  if (t >= eps) return (4.0 / 7.0) * eps * eps + 0.5 * (t * t - eps * eps);
  const double tau = t / eps;
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t5 = t3 * t2;
  const double t7 = t5 * t2;
  const double f1 = (5.0 * t3 - 2.0 * t5 + (3.0 / 7.0) * t7) / 16.0 + 0.25 * t2;
  const double f2 = tau - t3 + 0.6 * t5 - t7 / 7.0;
  return eps * eps * (f1 + (5.0 / 32.0) * f2 + 1.0 / 28.0);
}

// ---------------------------------------------------------------------------
// Piecewise-linear profile b~ with slopes 3/2, 1, 2/3 and kinks at -1/2, 3/2,
// mollified into b = eta_eps * b~. a(u) = u. Then h' = a, g' = b and
//   D(u) = h(u) - g(u),  D'(u) = a(u) - b(u) >= 0.
// ---------------------------------------------------------------------------

double b_profile(double u, double eps) {
  // b(u) = u + 1/2 N(u + 1/2) - 1/3 P(u - 3/2) with N(t) = -P(-t).
  return u - 0.5 * ramp(-(u + 0.5), eps) - (1.0 / 3.0) * ramp(u - 1.5, eps);
}

double b_profile_derivative(double u, double eps) {
  return 1.0 + 0.5 * ramp_derivative(-(u + 0.5), eps) -
         (1.0 / 3.0) * ramp_derivative(u - 1.5, eps);
}

double d_gap(double u, double eps) {  // h - g
  return -0.5 * ramp_integral(-(u + 0.5), eps) + (1.0 / 3.0) * ramp_integral(u - 1.5, eps);
}

double d_gap_derivative(double u, double eps) {  // a - b
  return 0.5 * ramp(-(u + 0.5), eps) + (1.0 / 3.0) * ramp(u - 1.5, eps);
}

}  // namespace

namespace detail {

class FluxImpl {
 public:
  explicit FluxImpl(const FluxFamily& family) : family_(family) {}
  virtual ~FluxImpl() = default;

  virtual double f(double x, double u) const = 0;
  virtual double fu(double x, double u) const = 0;
  virtual double fx(double x, double u) const = 0;
  virtual double fuu(double x, double u) const = 0;
  virtual double fxu(double x, double u) const = 0;
  virtual double theta(double v) const = 0;

  double u_plus = 0.0;
  double u_minus = 1.0;
  double alpha = 1.0;
  const FluxFamily& family() const { return family_; }

 private:
  FluxFamily family_;
};

namespace {

class LwrFlux final : public FluxImpl {
 public:
  explicit LwrFlux(const FluxFamily& fam) : FluxImpl(fam), v0_(fam.v0), v1_(fam.v1) {
    u_plus = 0.0;
    u_minus = 1.0;
    alpha = 2.0 * v0_;
  }

  double velocity(double x) const { return v0_ + v1_ * std::exp(-x * x); }
  double velocity_derivative(double x) const { return -2.0 * x * v1_ * std::exp(-x * x); }

  double f(double x, double u) const override { return velocity(x) * (u * u - u); }
  double fu(double x, double u) const override { return velocity(x) * (2.0 * u - 1.0); }
  double fx(double x, double u) const override {
    return velocity_derivative(x) * (u * u - u);
  }
  double fuu(double x, double u) const override {
    (void)u;
    return 2.0 * velocity(x);
  }
  double fxu(double x, double u) const override {
    return velocity_derivative(x) * (2.0 * u - 1.0);
  }
  double theta(double v) const override { return (v0_ + v1_) * std::abs(2.0 * v - 1.0); }

 private:
  double v0_, v1_;
};

class ConvexCombinationFlux final : public FluxImpl {
 public:
  ConvexCombinationFlux(const FluxFamily& fam, bool decreasing)
      : FluxImpl(fam),
        eps_(fam.eps),
        center_(fam.phi_center),
        width_(fam.phi_width),
        scale_(fam.scale),
        sign_(decreasing ? -1.0 : 1.0) {
    if (decreasing) {
      // The relevant stationary pair is the full plateau of h == g.
      u_plus = -0.5 + eps_;
      u_minus = 1.5 - eps_;
    } else {
      u_plus = 0.0;
      u_minus = 1.0;
    }
    alpha = (2.0 / 3.0) * scale_;
  }

  double phi(double x) const { return smoothstep(sign_ * (x - center_) / width_); }
  double phi_derivative(double x) const {
    return sign_ * kernel(sign_ * (x - center_) / width_) / width_;
  }

  double f(double x, double u) const override {
    // g(u) + phi(x) (h(u) - g(u)); the gap vanishes identically on the plateau,
    // so f(., u_+-) is exactly x-independent in floating point.
    const double g = 0.5 * u * u - d_gap(u, eps_);
    return scale_ * (g + phi(x) * d_gap(u, eps_));
  }
  double fu(double x, double u) const override {
    const double b = b_profile(u, eps_);
    return scale_ * (b + phi(x) * d_gap_derivative(u, eps_));
  }
  double fx(double x, double u) const override {
    return scale_ * phi_derivative(x) * d_gap(u, eps_);
  }
  double fuu(double x, double u) const override {
    const double bp = b_profile_derivative(u, eps_);
    return scale_ * (bp + phi(x) * (1.0 - bp));
  }
  double fxu(double x, double u) const override {
    return scale_ * phi_derivative(x) * d_gap_derivative(u, eps_);
  }
  double theta(double v) const override {
    return scale_ * std::max(std::abs(v), std::abs(b_profile(v, eps_)));
  }

 private:
  double eps_, center_, width_, scale_, sign_;
};

class HomogeneousQuadraticFlux final : public FluxImpl {
 public:
  explicit HomogeneousQuadraticFlux(const FluxFamily& fam) : FluxImpl(fam), scale_(fam.scale) {
    u_plus = fam.u_plus;
    u_minus = fam.u_minus;
    alpha = scale_;
  }

  double f(double x, double u) const override {
    (void)x;
    return 0.5 * scale_ * u * u;
  }
  double fu(double x, double u) const override {
    (void)x;
    return scale_ * u;
  }
  double fx(double, double) const override { return 0.0; }
  double fuu(double, double) const override { return scale_; }
  double fxu(double, double) const override { return 0.0; }
  double theta(double v) const override { return scale_ * std::abs(v); }

 private:
  double scale_;
};

}  // namespace
}  // namespace detail

FluxFamily FluxFamily::lwr(double v0, double v1) {
  FluxFamily fam;
  fam.tag = FluxTag::lwr_heterogeneous;
  fam.v0 = v0;
  fam.v1 = v1;
  return fam;
}

FluxFamily FluxFamily::convex_combination(double eps, double scale, double phi_center,
                                          double phi_width) {
  FluxFamily fam;
  fam.tag = FluxTag::convex_combination;
  fam.eps = eps;
  fam.scale = scale;
  fam.phi_center = phi_center;
  fam.phi_width = phi_width;
  return fam;
}

FluxFamily FluxFamily::gaussian_lwr() {
  FluxFamily fam;
  fam.tag = FluxTag::gaussian_lwr;
  fam.v0 = 1.0;
  fam.v1 = 1.0;
  return fam;
}

FluxFamily FluxFamily::negative_heterogeneity(double eps, double scale, double phi_center,
                                              double phi_width) {
  FluxFamily fam = convex_combination(eps, scale, phi_center, phi_width);
  fam.tag = FluxTag::negative_heterogeneity;
  return fam;
}

FluxFamily FluxFamily::homogeneous_quadratic(double scale, double u_plus, double u_minus) {
  FluxFamily fam;
  fam.tag = FluxTag::homogeneous_quadratic;
  fam.scale = scale;
  fam.u_plus = u_plus;
  fam.u_minus = u_minus;
  return fam;
}

std::string flux_tag_name(FluxTag tag) {
  switch (tag) {
    case FluxTag::lwr_heterogeneous: return "lwr_heterogeneous";
    case FluxTag::convex_combination: return "convex_combination";
    case FluxTag::gaussian_lwr: return "gaussian_lwr";
    case FluxTag::negative_heterogeneity: return "negative_heterogeneity";
    case FluxTag::homogeneous_quadratic: return "homogeneous_quadratic";
  }
  throw ConfigError("unknown flux tag");
}

FluxTag flux_tag_from_name(const std::string& name) {
  if (name == "lwr_heterogeneous") return FluxTag::lwr_heterogeneous;
  if (name == "convex_combination") return FluxTag::convex_combination;
  if (name == "gaussian_lwr") return FluxTag::gaussian_lwr;
  if (name == "negative_heterogeneity") return FluxTag::negative_heterogeneity;
  if (name == "homogeneous_quadratic") return FluxTag::homogeneous_quadratic;
  throw ConfigError("unknown flux family: " + name);
}

FluxModel build_flux(const FluxFamily& family) {
  if (!(family.scale > 0.0)) {
    throw ConfigError("flux.scale must be positive (convexity constant alpha > 0)");
  }
  std::shared_ptr<const detail::FluxImpl> impl;
  switch (family.tag) {
    case FluxTag::lwr_heterogeneous: {
      if (!(family.v0 > 0.0)) throw ConfigError("flux.v0 must be positive (V >= alpha_V > 0)");
      if (family.v1 < 0.0) throw ConfigError("flux.v1 must be non-negative");
      impl = std::make_shared<detail::LwrFlux>(family);
      break;
    }
    case FluxTag::gaussian_lwr: {
      FluxFamily fam = family;
      fam.v0 = 1.0;
      fam.v1 = 1.0;
      impl = std::make_shared<detail::LwrFlux>(fam);
      break;
    }
    case FluxTag::convex_combination:
    case FluxTag::negative_heterogeneity: {
      if (!(family.eps > 0.0 && family.eps < 0.25)) {
        throw ConfigError("flux.eps must lie in (0, 1/4)");
      }
      if (!(family.phi_width > 0.0)) {
        throw ConfigError("flux.phi_width must be positive (monotone transition)");
      }
      impl = std::make_shared<detail::ConvexCombinationFlux>(
          family, family.tag == FluxTag::negative_heterogeneity);
      break;
    }
    case FluxTag::homogeneous_quadratic: {
      if (!(family.u_plus < family.u_minus)) {
        throw ConfigError("flux requires u_plus < u_minus");
      }
      impl = std::make_shared<detail::HomogeneousQuadraticFlux>(family);
      break;
    }
  }
  FluxModel model;
  model.impl_ = std::move(impl);
  return model;
}

double FluxModel::eval(double x, double u) const { return impl_->f(x, u); }
double FluxModel::du(double x, double u) const { return impl_->fu(x, u); }
double FluxModel::dx(double x, double u) const { return impl_->fx(x, u); }
double FluxModel::duu(double x, double u) const { return impl_->fuu(x, u); }
double FluxModel::dxu(double x, double u) const { return impl_->fxu(x, u); }
double FluxModel::theta(double v) const { return impl_->theta(v); }

double FluxModel::max_speed(double u_lo, double u_hi) const {
  return std::max(theta(u_lo), theta(u_hi));
}

double FluxModel::u_plus() const { return impl_->u_plus; }
double FluxModel::u_minus() const { return impl_->u_minus; }
double FluxModel::alpha() const { return impl_->alpha; }
const FluxFamily& FluxModel::family() const { return impl_->family(); }

double rh_speed(const FluxModel& flux, double x, double u_left, double u_right,
                double jump_floor) {
  const double jump = u_left - u_right;
  if (std::abs(jump) <= jump_floor) {
    throw DegenerateJump("rh_speed: |u_left - u_right| <= jump_floor");
  }
  return (flux.eval(x, u_left) - flux.eval(x, u_right)) / jump;
}

namespace {

void record_min(AssumptionCheck& check, double value, double x, double u, double threshold) {
  // Tracks the most negative margin (value - threshold).
  const double margin = value - threshold;
  if (-margin > check.worst) {
    check.worst = -margin;
    check.witness_x = x;
    check.witness_u = u;
  }
}

}  // namespace

AssumptionReport validate_assumptions(const FluxModel& flux,
                                      std::pair<double, double> x_range,
                                      std::pair<double, double> u_range,
                                      int grid_density) {
  if (!(x_range.second > x_range.first) || !(u_range.second > u_range.first)) {
    throw ConfigError("validate_assumptions: degenerate sampling range");
  }
  if (grid_density < 16) {
    throw ConfigError("validate_assumptions: grid_density must be >= 16");
  }

  AssumptionReport report;
  const int n = grid_density;
  auto x_at = [&](int i) {
    return x_range.first + (x_range.second - x_range.first) * i / (n - 1.0);
  };
  auto u_at = [&](int j) {
    return u_range.first + (u_range.second - u_range.first) * j / (n - 1.0);
  };

  // Stationarity of the reference states along the sampled x-grid.
  for (int i = 0; i < n; ++i) {
    const double x = x_at(i);
    for (double us : {flux.u_plus(), flux.u_minus()}) {
      const double v = std::abs(flux.dx(x, us));
      if (v > report.stationarity.worst) {
        report.stationarity.worst = v;
        report.stationarity.witness_x = x;
        report.stationarity.witness_u = us;
      }
    }
  }
  report.stationarity.pass = report.stationarity.worst <= 1e-10;

  // Uniform convexity, mixed derivative sign, and consistency of the
  // derivative evaluators against centred differences.
  double worst_c2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = x_at(i);
    for (int j = 0; j < n; ++j) {
      const double u = u_at(j);
      record_min(report.uniform_convexity, flux.duu(x, u), x, u, flux.alpha());
      record_min(report.positive_mixed_derivative, flux.dxu(x, u), x, u, 0.0);

      const double hu = 1e-6 * std::max(1.0, std::abs(u));
      const double hx = 1e-6 * std::max(1.0, std::abs(x));
      const double fd_u = (flux.eval(x, u + hu) - flux.eval(x, u - hu)) / (2.0 * hu);
      const double fd_x = (flux.eval(x + hx, u) - flux.eval(x - hx, u)) / (2.0 * hx);
      const double err = std::max(std::abs(fd_u - flux.du(x, u)), std::abs(fd_x - flux.dx(x, u)));
      if (err > worst_c2) {
        worst_c2 = err;
        report.derivative_consistency.witness_x = x;
        report.derivative_consistency.witness_u = u;
      }
    }
  }
  report.uniform_convexity.pass = report.uniform_convexity.worst <= 1e-9;
  report.positive_mixed_derivative.pass = report.positive_mixed_derivative.worst <= 1e-12;
  report.derivative_consistency.worst = worst_c2;
  report.derivative_consistency.pass = worst_c2 <= 1e-6;

  // Growth heuristic: probe |f| at twice the sampled |u| extreme; superlinear
  // growth means the ratio |f(2U)| / (2 |f(U)|) stays above one. Not decidable
  // from compact samples, hence flagged heuristic.
  {
    report.superlinear_growth.heuristic = true;
    report.superlinear_growth.note =
        "growth probed at 2x the sampled u-extreme; compact samples cannot decide "
        "a growth condition";
    const double U = std::max({2.0, std::abs(u_range.first), std::abs(u_range.second)});
    double r_at = std::numeric_limits<double>::infinity();
    double r_2at = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double x = x_at(i);
      r_at = std::min(r_at, std::abs(flux.eval(x, U)) + std::abs(flux.eval(x, -U)));
      r_2at = std::min(r_2at, std::abs(flux.eval(x, 2.0 * U)) + std::abs(flux.eval(x, -2.0 * U)));
    }
    const double ratio = r_2at / std::max(2.0 * r_at, 1e-300);
    report.superlinear_growth.pass = ratio >= 1.2;
    report.superlinear_growth.worst = report.superlinear_growth.pass ? 0.0 : 1.2 - ratio;
    report.superlinear_growth.witness_u = U;
  }

  // Speed envelope: finite on the sampled range with a bounded modulus.
  {
    double prev = flux.theta(u_at(0));
    bool ok = std::isfinite(prev);
    double worst_jump = 0.0;
    for (int j = 1; j < n; ++j) {
      const double cur = flux.theta(u_at(j));
      ok = ok && std::isfinite(cur);
      worst_jump = std::max(worst_jump, std::abs(cur - prev));
      prev = cur;
    }
    const double du_step = (u_range.second - u_range.first) / (n - 1.0);
    report.speed_envelope.pass = ok && worst_jump <= 1e3 * std::max(du_step, 1e-12);
    report.speed_envelope.worst = ok ? 0.0 : std::numeric_limits<double>::infinity();
  }

  return report;
}

}  // namespace hetclaw
