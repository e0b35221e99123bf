#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hetclaw/characteristics.hpp"
#include "hetclaw/errors.hpp"
#include "hetclaw/flux.hpp"
#include "hetclaw/grid.hpp"
#include "hetclaw/hj.hpp"
#include "hetclaw/shock.hpp"
#include "hetclaw/solver.hpp"
#include "hetclaw/stability.hpp"

namespace py = pybind11;
using namespace hetclaw;

namespace {

FluxModel flux_from_kwargs(const std::string& family, double eps, double scale,
                           double phi_center, double phi_width, double v0, double v1,
                           double u_plus, double u_minus) {
  FluxFamily fam;
  fam.tag = flux_tag_from_name(family);
  fam.eps = eps;
  fam.scale = scale;
  fam.phi_center = phi_center;
  fam.phi_width = phi_width;
  fam.v0 = v0;
  fam.v1 = v1;
  fam.u_plus = u_plus;
  fam.u_minus = u_minus;
  return build_flux(fam);
}

py::dict assumption_dict(const AssumptionCheck& check) {
  py::dict d;
  d["pass"] = check.pass;
  d["worst"] = check.worst;
  d["witness_x"] = check.witness_x;
  d["witness_u"] = check.witness_u;
  d["heuristic"] = check.heuristic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "1-D heterogeneous scalar conservation laws: solver, characteristics, "
            "shock tracking and L2 shock stability";

  py::register_exception<DegenerateJump>(m, "DegenerateJump", PyExc_ValueError);
  py::register_exception<NewtonDivergence>(m, "NewtonDivergence", PyExc_RuntimeError);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);
  py::register_exception<OrderingViolation>(m, "OrderingViolation", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<FluxModel>(m, "Flux")
      .def(py::init(&flux_from_kwargs), py::arg("family"), py::arg("eps") = 0.1,
           py::arg("scale") = 1.0, py::arg("phi_center") = 0.0, py::arg("phi_width") = 0.5,
           py::arg("v0") = 1.0, py::arg("v1") = 0.0, py::arg("u_plus") = 0.0,
           py::arg("u_minus") = 1.0)
      .def("__call__", &FluxModel::eval, py::arg("x"), py::arg("u"))
      .def("du", &FluxModel::du)
      .def("dx", &FluxModel::dx)
      .def("duu", &FluxModel::duu)
      .def("dxu", &FluxModel::dxu)
      .def("theta", &FluxModel::theta)
      .def_property_readonly("u_plus", &FluxModel::u_plus)
      .def_property_readonly("u_minus", &FluxModel::u_minus)
      .def_property_readonly("alpha", &FluxModel::alpha)
      .def("validate",
           [](const FluxModel& flux, double x_lo, double x_hi, double u_lo, double u_hi,
              int density) {
             const AssumptionReport r =
                 validate_assumptions(flux, {x_lo, x_hi}, {u_lo, u_hi}, density);
             py::dict d;
             d["stationarity"] = assumption_dict(r.stationarity);
             d["uniform_convexity"] = assumption_dict(r.uniform_convexity);
             d["derivative_consistency"] = assumption_dict(r.derivative_consistency);
             d["superlinear_growth"] = assumption_dict(r.superlinear_growth);
             d["speed_envelope"] = assumption_dict(r.speed_envelope);
             d["positive_mixed_derivative"] = assumption_dict(r.positive_mixed_derivative);
             return d;
           },
           py::arg("x_lo") = -3.0, py::arg("x_hi") = 3.0, py::arg("u_lo") = -1.0,
           py::arg("u_hi") = 2.0, py::arg("density") = 64);

  m.def("rh_speed", &rh_speed, py::arg("flux"), py::arg("x"), py::arg("u_left"),
        py::arg("u_right"), py::arg("jump_floor") = 1e-10);

  py::class_<Grid1D>(m, "Grid")
      .def(py::init([](double x_left, double x_right, int n_cells) {
             Grid1D g{x_left, x_right, n_cells};
             g.validate();
             return g;
           }),
           py::arg("x_left"), py::arg("x_right"), py::arg("n_cells"))
      .def_readonly("x_left", &Grid1D::x_left)
      .def_readonly("x_right", &Grid1D::x_right)
      .def_readonly("n_cells", &Grid1D::n_cells)
      .def_property_readonly("dx", &Grid1D::dx)
      .def("centers", [](const Grid1D& g) {
        std::vector<double> xs(g.n_cells);
        for (int i = 0; i < g.n_cells; ++i) xs[i] = g.center(i);
        return xs;
      });

  py::class_<InitialData>(m, "InitialData")
      .def_static("riemann", &InitialData::riemann)
      .def_static("piecewise4", &InitialData::piecewise4, py::arg("x_minus"), py::arg("x0"),
                  py::arg("x_plus"), py::arg("u_m"), py::arg("u_M"))
      .def_static("perturbed", &InitialData::perturbed, py::arg("amplitude"),
                  py::arg("center"), py::arg("width"))
      .def_static("constant", &InitialData::constant, py::arg("value"))
      .def_readwrite("bump_amplitude", &InitialData::bump_amplitude)
      .def_readwrite("bump_center", &InitialData::bump_center)
      .def_readwrite("bump_width", &InitialData::bump_width);

  py::class_<SolutionField>(m, "Field")
      .def_property_readonly("time", [](const SolutionField& f) { return f.time; })
      .def_property_readonly("values", [](const SolutionField& f) { return f.values; })
      .def_property_readonly("grid", [](const SolutionField& f) { return f.grid; })
      .def("mass", &SolutionField::mass)
      .def("traces_at", &SolutionField::traces_at, py::arg("x"));

  m.def(
      "make_field",
      [](const Grid1D& grid, const InitialData& data, double u_minus, double u_plus,
         bool periodic) {
        return make_field(grid, data, u_minus, u_plus,
                          periodic ? BoundaryMode::periodic : BoundaryMode::far_field);
      },
      py::arg("grid"), py::arg("data"), py::arg("u_minus"), py::arg("u_plus"),
      py::arg("periodic") = false);

  py::class_<FieldHistory>(m, "History")
      .def_property_readonly("times", &FieldHistory::times)
      .def_property_readonly("grid", &FieldHistory::grid)
      .def("values", [](const FieldHistory& h, std::size_t k) { return h.values(k); })
      .def("at_time", &FieldHistory::at_time, py::arg("t"))
      .def("__len__", &FieldHistory::size);

  m.def("advance", &advance, py::arg("field"), py::arg("flux"), py::arg("t_target"),
        py::arg("cfl") = 0.45);
  m.def("godunov_flux", &godunov_flux, py::arg("flux"), py::arg("x_interface"),
        py::arg("u_left"), py::arg("u_right"));
  m.def(
      "simulate",
      [](const SolutionField& initial, const FluxModel& flux, double horizon, double cfl,
         int snapshot_every) {
        SimulateOptions options;
        options.cfl = cfl;
        options.snapshot_every = snapshot_every;
        return simulate(initial, flux, horizon, options);
      },
      py::arg("initial"), py::arg("flux"), py::arg("horizon"), py::arg("cfl") = 0.45,
      py::arg("snapshot_every") = 10);

  py::class_<CharTrajectory>(m, "CharTrajectory")
      .def_property_readonly("t", [](const CharTrajectory& tr) {
        std::vector<double> out;
        for (const auto& s : tr.samples) out.push_back(s.t);
        return out;
      })
      .def_property_readonly("y", [](const CharTrajectory& tr) {
        std::vector<double> out;
        for (const auto& s : tr.samples) out.push_back(s.y);
        return out;
      })
      .def_property_readonly("z", [](const CharTrajectory& tr) {
        std::vector<double> out;
        for (const auto& s : tr.samples) out.push_back(s.z);
        return out;
      })
      .def_readonly("flux_residual", &CharTrajectory::flux_residual);

  m.def(
      "integrate_char",
      [](const FluxModel& flux, double y, double z, double t0, double t_end, double dt) {
        return integrate_char(flux, CharState{y, z, t0}, t_end, dt);
      },
      py::arg("flux"), py::arg("y"), py::arg("z"), py::arg("t0"), py::arg("t_end"),
      py::arg("dt") = 1e-3);
  m.def(
      "crossing_time",
      [](const FluxModel& flux, double ya, double za, double yb, double zb, double t_max,
         double dt) {
        const auto hit = crossing_time(flux, CharState{ya, za, 0.0}, CharState{yb, zb, 0.0},
                                       t_max, dt);
        return hit ? py::cast(*hit) : py::none().cast<py::object>();
      },
      py::arg("flux"), py::arg("y_a"), py::arg("z_a"), py::arg("y_b"), py::arg("z_b"),
      py::arg("t_max"), py::arg("dt") = 1e-3);

  py::class_<ShockCurve>(m, "ShockCurve")
      .def_property_readonly("t", [](const ShockCurve& c) {
        std::vector<double> out;
        for (const auto& s : c.samples) out.push_back(s.t);
        return out;
      })
      .def_property_readonly("s", [](const ShockCurve& c) {
        std::vector<double> out;
        for (const auto& s : c.samples) out.push_back(s.s);
        return out;
      })
      .def_property_readonly("speed", [](const ShockCurve& c) {
        std::vector<double> out;
        for (const auto& s : c.samples) out.push_back(s.speed);
        return out;
      })
      .def("position_at", &ShockCurve::position_at, py::arg("t"));

  m.def(
      "track_shock",
      [](const FieldHistory& history, const FluxModel& flux, double seed_x, double seed_t) {
        return track_shock(history, flux, seed_x, seed_t);
      },
      py::arg("history"), py::arg("flux"), py::arg("seed_x"), py::arg("seed_t") = 0.0);

  m.def(
      "detect_emergence",
      [](const FieldHistory& history, const FluxModel& flux, double tolerance) {
        const EmergenceReport r = detect_emergence(history, flux, tolerance);
        py::dict d;
        d["emerged"] = r.emerged;
        d["T_detected"] = r.T_detected;
        d["X_detected"] = r.X_detected;
        d["sigma_measured"] = r.sigma_measured;
        d["sigma_rh"] = r.sigma_rh;
        d["post_emergence_error"] = r.post_emergence_error;
        d["note"] = r.note;
        return d;
      },
      py::arg("history"), py::arg("flux"), py::arg("tolerance"));

  m.def(
      "emergence_bound",
      [](const FluxModel& flux, const InitialData& data) {
        const EmergenceBound b = emergence_bound(flux, data);
        py::dict d;
        d["T_right"] = b.T_right;
        d["T_left"] = b.T_left;
        d["T_max"] = b.T_max;
        return d;
      },
      py::arg("flux"), py::arg("data"));

  m.def("eval_q", &eval_q, py::arg("flux"), py::arg("x"), py::arg("u"), py::arg("c"),
        py::arg("quad_order") = 32);
  m.def("entropy_flux_Q", &entropy_flux_Q, py::arg("flux"), py::arg("x"), py::arg("u"),
        py::arg("c"), py::arg("quad_order") = 32);
  m.def("relative_l2", &relative_l2, py::arg("field"), py::arg("u_minus"),
        py::arg("u_plus"), py::arg("shift"), py::arg("sigma_t_offset") = 0.0);

  m.def(
      "integrate_shift_curves",
      [](const FieldHistory& history, const FluxModel& flux) {
        const ShiftPair pair = integrate_shift_curves(history, flux);
        py::dict d;
        d["times"] = pair.times;
        d["xi_plus"] = pair.xi_plus;
        d["xi_minus"] = pair.xi_minus;
        d["xi_bar"] = pair.xi_bar;
        d["sigma"] = pair.sigma;
        d["lipschitz"] = pair.lipschitz;
        return d;
      },
      py::arg("history"), py::arg("flux"));

  m.def(
      "certify_stability",
      [](const FieldHistory& history, const FluxModel& flux) {
        const StabilityReport r = certify_stability(history, flux);
        py::dict d;
        d["times"] = r.times;
        d["relative_l2"] = r.relative_l2;
        d["xi_bar"] = r.xi_bar;
        d["initial_l2"] = r.initial_l2;
        d["num_tol"] = r.num_tol;
        d["contraction_pass"] = r.contraction_pass;
        d["ordering_pass"] = r.ordering_pass;
        d["shift_bound_pass"] = r.shift_bound_pass;
        d["K"] = r.bound.K;
        return d;
      },
      py::arg("history"), py::arg("flux"));

  m.def(
      "legendre",
      [](const FluxModel& flux, double x, double p) {
        const LegendreResult r = legendre(flux, x, p);
        return py::make_tuple(r.value, r.argmax);
      },
      py::arg("flux"), py::arg("x"), py::arg("p"));

  py::class_<ValueField>(m, "ValueField")
      .def_property_readonly("v", [](const ValueField& v) { return v.v; })
      .def_property_readonly("time", [](const ValueField& v) { return v.time; })
      .def("at", &ValueField::at, py::arg("x"));

  m.def("antiderivative", &antiderivative, py::arg("field"));
  m.def(
      "dp_value",
      [](const FluxModel& flux, const ValueField& v0, double t_end, double dt) {
        return dp_value(flux, v0, t_end, dt);
      },
      py::arg("flux"), py::arg("v0"), py::arg("t_end"), py::arg("dt"));
  m.def(
      "correspondence_check",
      [](const ValueField& value, const SolutionField& field) {
        const CorrespondenceReport r = correspondence_check(value, field);
        py::dict d;
        d["l1"] = r.l1;
        d["linf"] = r.linf;
        d["worst_cell"] = r.worst_cell;
        return d;
      },
      py::arg("value"), py::arg("field"));
}
