#include "hetclaw/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hetclaw/errors.hpp"
#include "hetclaw/quadrature.hpp"

namespace hetclaw {

int Grid1D::cell_index(double x) const {
  const int i = static_cast<int>(std::floor((x - x_left) / dx()));
  return std::clamp(i, 0, n_cells - 1);
}

void Grid1D::validate() const {
  if (n_cells < 8) throw ConfigError("grid.n_cells must be >= 8");
  if (!(dx() > 0.0)) throw ConfigError("grid requires x_right > x_left");
}

bool Grid1D::operator==(const Grid1D& other) const {
  return x_left == other.x_left && x_right == other.x_right && n_cells == other.n_cells;
}

InitialData InitialData::riemann() {
  InitialData d;
  d.kind = Kind::riemann_phi;
  return d;
}

InitialData InitialData::piecewise4(double x_minus, double x0, double x_plus, double u_m,
                                    double u_M) {
  InitialData d;
  d.kind = Kind::piecewise4;
  d.x_minus = x_minus;
  d.x0 = x0;
  d.x_plus = x_plus;
  d.u_m = u_m;
  d.u_M = u_M;
  return d;
}

InitialData InitialData::perturbed(double amplitude, double center, double width) {
  InitialData d;
  d.kind = Kind::perturbed_phi;
  d.bump_amplitude = amplitude;
  d.bump_center = center;
  d.bump_width = width;
  return d;
}

InitialData InitialData::constant(double value) {
  InitialData d;
  d.kind = Kind::constant;
  d.value = value;
  return d;
}

namespace {

double bump(double x, double amplitude, double center, double width) {
  const double t = (x - center) / width;
  if (std::abs(t) >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  return amplitude * q * q;
}

}  // namespace

double InitialData::at(double x, double u_minus, double u_plus) const {
  switch (kind) {
    case Kind::riemann_phi:
      return x < 0.0 ? u_minus : u_plus;
    case Kind::piecewise4:
      if (x < x_minus) return u_minus;
      if (x < x0) return u_m;
      if (x < x_plus) return u_M;
      return u_plus;
    case Kind::perturbed_phi:
      return (x < 0.0 ? u_minus : u_plus) + bump(x, bump_amplitude, bump_center, bump_width);
    case Kind::constant:
      return value + bump(x, bump_amplitude, bump_center, bump_width);
    case Kind::custom_samples: {
      if (samples.empty()) throw ConfigError("custom_samples: no samples given");
      if (x <= samples.front().first) return samples.front().second;
      if (x >= samples.back().first) return samples.back().second;
      auto it = std::upper_bound(samples.begin(), samples.end(), x,
                                 [](double v, const auto& s) { return v < s.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (x - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  throw ConfigError("unknown initial data kind");
}

std::pair<double, double> InitialData::far_fields(double u_minus, double u_plus) const {
  switch (kind) {
    case Kind::riemann_phi:
    case Kind::piecewise4:
    case Kind::perturbed_phi:
      return {u_minus, u_plus};
    case Kind::constant:
      return {value, value};
    case Kind::custom_samples:
      return {samples.front().second, samples.back().second};
  }
  throw ConfigError("unknown initial data kind");
}

void InitialData::validate(double u_minus, double u_plus) const {
  if (kind == Kind::piecewise4) {
    if (!(x_minus <= x0 && x0 <= x_plus)) {
      throw ConfigError("piecewise4 requires x_minus <= x0 <= x_plus");
    }
    if (!(u_m <= u_plus && u_plus < u_minus && u_minus <= u_M)) {
      throw ConfigError("piecewise4 requires u_m <= u_plus < u_minus <= u_M");
    }
  }
  if ((kind == Kind::perturbed_phi || kind == Kind::constant) && bump_amplitude != 0.0) {
    if (!(bump_width > 0.0)) throw ConfigError("bump_width must be positive");
  }
  if (kind == Kind::custom_samples) {
    if (samples.size() < 2) throw ConfigError("custom_samples needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (!(samples[i].first > samples[i - 1].first)) {
        throw ConfigError("custom_samples must have strictly increasing x");
      }
    }
  }
}

std::pair<double, double> InitialData::feature_extent() const {
  switch (kind) {
    case Kind::riemann_phi:
      return {0.0, 0.0};
    case Kind::piecewise4:
      return {x_minus, x_plus};
    case Kind::perturbed_phi:
      return {std::min(0.0, bump_center - bump_width), std::max(0.0, bump_center + bump_width)};
    case Kind::constant:
      return {bump_center - bump_width, bump_center + bump_width};
    case Kind::custom_samples:
      return {samples.front().first, samples.back().first};
  }
  throw ConfigError("unknown initial data kind");
}

double SolutionField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dx();
}

double SolutionField::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double SolutionField::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

std::pair<double, double> SolutionField::traces_at(double x) const {
  const double dx = grid.dx();
  if (!(x > grid.x_left + 0.5 * dx && x < grid.x_right - 0.5 * dx)) {
    throw OutOfDomain("traces_at: x outside the grid interior");
  }
  const int il = grid.cell_index(x - 0.5 * dx);
  const int ir = grid.cell_index(x + 0.5 * dx);
  return {values[il], values[ir]};
}

std::pair<double, double> SolutionField::traces_offset(double x, int offset_cells) const {
  const int i = grid.cell_index(x);
  const int il = std::clamp(i - offset_cells, 0, grid.n_cells - 1);
  const int ir = std::clamp(i + offset_cells, 0, grid.n_cells - 1);
  return {values[il], values[ir]};
}

SolutionField make_field(const Grid1D& grid, const InitialData& data, double u_minus,
                         double u_plus, BoundaryMode boundary) {
  grid.validate();
  data.validate(u_minus, u_plus);

  SolutionField field;
  field.grid = grid;
  field.boundary = boundary;
  field.values.resize(grid.n_cells);
  const auto far = data.far_fields(u_minus, u_plus);
  field.far_left = far.first;
  field.far_right = far.second;

  // Jump positions of the piecewise-constant part, for exact sub-cell averaging.
  std::vector<double> breaks;
  switch (data.kind) {
    case InitialData::Kind::riemann_phi:
    case InitialData::Kind::perturbed_phi:
      breaks = {0.0};
      break;
    case InitialData::Kind::piecewise4:
      breaks = {data.x_minus, data.x0, data.x_plus};
      break;
    default:
      break;
  }

  const double dx = grid.dx();
  for (int i = 0; i < grid.n_cells; ++i) {
    const double a = grid.interface(i);
    const double b = grid.interface(i + 1);
    bool straddles = false;
    for (double brk : breaks) {
      if (brk > a && brk < b) straddles = true;
    }
    double avg;
    if (straddles || data.kind == InitialData::Kind::custom_samples) {
      // Exact averaging of the piecewise-constant part: split at interior breaks.
      std::vector<double> pts = {a};
      for (double brk : breaks) {
        if (brk > a && brk < b) pts.push_back(brk);
      }
      pts.push_back(b);
      std::sort(pts.begin(), pts.end());
      double acc = 0.0;
      for (std::size_t k = 1; k < pts.size(); ++k) {
        const double mid = 0.5 * (pts[k - 1] + pts[k]);
        acc += data.at(mid, u_minus, u_plus) * (pts[k] - pts[k - 1]);
      }
      avg = acc / dx;
    } else {
      avg = data.at(0.5 * (a + b), u_minus, u_plus);
    }
    // Smooth bump part averaged with a 4-point Gauss rule (midpoint otherwise
    // under-resolves steep bumps on coarse grids).
    if ((data.kind == InitialData::Kind::perturbed_phi ||
         data.kind == InitialData::Kind::constant) &&
        data.bump_amplitude != 0.0) {
      const double base = avg - bump(0.5 * (a + b), data.bump_amplitude, data.bump_center,
                                     data.bump_width);
      const double bump_avg =
          gauss_integrate(
              [&](double x) {
                return bump(x, data.bump_amplitude, data.bump_center, data.bump_width);
              },
              a, b, 4) /
          dx;
      avg = base + bump_avg;
    }
    field.values[i] = avg;
  }
  return field;
}

void FieldHistory::push(const SolutionField& field, double solver_dt) {
  if (times_.empty()) {
    grid_ = field.grid;
    boundary_ = field.boundary;
    far_left_ = field.far_left;
    far_right_ = field.far_right;
  } else if (!(field.grid == grid_)) {
    throw GridMismatch("FieldHistory: snapshot grid changed");
  } else if (!(field.time > times_.back())) {
    throw ConfigError("FieldHistory: snapshot times must strictly increase");
  }
  times_.push_back(field.time);
  snapshots_.push_back(field.values);
  solver_dts_.push_back(solver_dt);
}

std::size_t FieldHistory::index_at(double t) const {
  if (times_.empty()) throw OutOfDomain("FieldHistory: empty");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return 0;
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

SolutionField FieldHistory::at_time(double t) const {
  if (times_.empty()) throw OutOfDomain("FieldHistory: empty");
  SolutionField field;
  field.grid = grid_;
  field.boundary = boundary_;
  field.far_left = far_left_;
  field.far_right = far_right_;
  const std::size_t k = index_at(t);
  if (k + 1 >= times_.size() || t <= times_[k]) {
    field.time = times_[k];
    field.values = snapshots_[k];
    return field;
  }
  const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
  field.time = t;
  field.values.resize(grid_.n_cells);
  for (int i = 0; i < grid_.n_cells; ++i) {
    field.values[i] = (1.0 - w) * snapshots_[k][i] + w * snapshots_[k + 1][i];
  }
  return field;
}

double FieldHistory::value(double x, double t) const {
  const int i = grid_.cell_index(x);
  const std::size_t k = index_at(t);
  if (k + 1 >= times_.size() || t <= times_[k]) return snapshots_[k][i];
  const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
  return (1.0 - w) * snapshots_[k][i] + w * snapshots_[k + 1][i];
}

std::pair<double, double> FieldHistory::traces(double x, double t) const {
  const double dx = grid_.dx();
  return {value(x - 0.5 * dx, t), value(x + 0.5 * dx, t)};
}

std::pair<double, double> FieldHistory::traces_offset(double x, double t,
                                                      int offset_cells) const {
  const double dx = grid_.dx();
  return {value(x - offset_cells * dx, t), value(x + offset_cells * dx, t)};
}

}  // namespace hetclaw
