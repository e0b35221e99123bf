#include <cmath>
#include <vector>

#include <doctest.h>

#include "hetclaw/characteristics.hpp"
#include "hetclaw/errors.hpp"
#include "hetclaw/solver.hpp"

using namespace hetclaw;

TEST_CASE("characteristics: homogeneous flux gives straight lines") {
  const FluxModel flux = build_flux(FluxFamily::homogeneous_quadratic());
  const CharTrajectory traj = integrate_char(flux, {0.0, 1.0, 0.0}, 2.0, 1e-3);
  CHECK(traj.end().y == doctest::Approx(2.0).epsilon(1e-13));  // speed f_u = 1
  CHECK(traj.end().z == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(traj.flux_residual <= 1e-14);
}

TEST_CASE("characteristics: gaussian fixed point stays put") {
  const FluxModel flux = build_flux(FluxFamily::gaussian_lwr());
  const CharTrajectory traj = integrate_char(flux, {0.0, 0.5, 0.0}, 5.0, 1e-3);
  for (const CharState& s : traj.samples) {
    CHECK(s.y == 0.0);
    CHECK(s.z == 0.5);
  }
}

TEST_CASE("characteristics: gaussian rate at (1, 1/2) matches -e^{-1}/2") {
  const FluxModel flux = build_flux(FluxFamily::gaussian_lwr());
  // 4th-order one-sided stencil on the integrated z-samples reproduces z'(0).
  const double h = 1e-4;
  const CharTrajectory traj = integrate_char(flux, {1.0, 0.5, 0.0}, 8.0 * h, h);
  const std::vector<CharState>& s = traj.samples;
  const double zdot0 =
      (-25.0 * s[0].z + 48.0 * s[1].z - 36.0 * s[2].z + 16.0 * s[3].z - 3.0 * s[4].z) /
      (12.0 * h);
  CHECK(std::abs(zdot0 - (-0.5 * std::exp(-1.0))) <= 1e-10);
}

TEST_CASE("characteristics: backward integration retraces the forward run") {
  const FluxModel flux = build_flux(FluxFamily::convex_combination());
  const CharState start{-0.7, 1.8, 0.0};
  const CharTrajectory fwd = integrate_char(flux, start, 1.5, 1e-4);
  const CharTrajectory bwd = integrate_char(flux, fwd.end(), 0.0, 1e-4);
  CHECK(bwd.end().y == doctest::Approx(start.y).epsilon(1e-10));
  CHECK(bwd.end().z == doctest::Approx(start.z).epsilon(1e-10));
  CHECK_FALSE(bwd.forward);
}

TEST_CASE("characteristics: flux constancy residual scales like dt^4") {
  const FluxModel flux = build_flux(FluxFamily::gaussian_lwr());
  const CharState start{0.8, 0.35, 0.0};
  const double r1 = integrate_char(flux, start, 2.0, 2e-3).flux_residual;
  const double r2 = integrate_char(flux, start, 2.0, 1e-3).flux_residual;
  CHECK(r1 <= 1e-10);
  if (r2 > 1e-15) {  // above roundoff the ratio should be ~2^4
    CHECK(r1 / r2 >= 6.0);
  }
}

TEST_CASE("characteristics: crossing times") {
  SUBCASE("homogeneous Burgers with unit speed gap crosses at t = 1") {
    const FluxModel flux = build_flux(FluxFamily::homogeneous_quadratic());
    const auto hit = crossing_time(flux, {0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, 3.0);
    REQUIRE(hit.has_value());
    CHECK(*hit == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("parallel characteristics never meet") {
    const FluxModel flux = build_flux(FluxFamily::homogeneous_quadratic());
    const auto hit = crossing_time(flux, {0.0, 0.7, 0.0}, {1.0, 0.7, 0.0}, 5.0);
    CHECK_FALSE(hit.has_value());
  }
  SUBCASE("gaussian counterexample: outer characteristic meets the middle one") {
    const FluxModel flux = build_flux(FluxFamily::gaussian_lwr());
    // The characteristic from x = 1 develops a uniformly negative speed and
    // cannot avoid the stationary one at the origin.
    const auto hit = crossing_time(flux, {0.0, 0.5, 0.0}, {1.0, 0.5, 0.0}, 50.0, 1e-3);
    REQUIRE(hit.has_value());
    CHECK(*hit > 0.0);
    // Speed along the outer characteristic is eventually negative.
    const CharTrajectory traj = integrate_char(flux, {1.0, 0.5, 0.0}, 2.0, 1e-3);
    const CharState& late = traj.samples[traj.samples.size() / 2];
    CHECK(flux.du(late.y, late.z) < 0.0);
  }
}

TEST_CASE("characteristics: genuine characteristics of a smooth solution do not cross") {
  // Increasing data rarefies, so the solution stays smooth and characteristics
  // seeded from it keep their spatial order.
  const FluxModel flux = build_flux(FluxFamily::convex_combination());
  auto u0 = [](double x) { return 0.5 + 0.45 * std::tanh(x); };
  std::vector<CharTrajectory> trajectories;
  for (double x0 : {-2.0, -1.0, -0.3, 0.4, 1.2, 2.3}) {
    trajectories.push_back(integrate_char(flux, {x0, u0(x0), 0.0}, 3.0, 1e-3));
  }
  for (std::size_t k = 0; k + 1 < trajectories.size(); ++k) {
    const auto& a = trajectories[k].samples;
    const auto& b = trajectories[k + 1].samples;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      CHECK(a[i].y < b[i].y);
    }
  }
}

TEST_CASE("characteristics: fixed points of the system are stationary") {
  // f_x(y, z) = 0 and f_u(y, z) = 0 at (0, 1/2) for the gaussian family, and
  // everywhere on the equality band for the mollified family at phi' = 0.
  const FluxModel cc = build_flux(FluxFamily::convex_combination());
  const CharTrajectory traj = integrate_char(cc, {5.0, 0.0, 0.0}, 2.0, 1e-3);
  for (const CharState& s : traj.samples) {
    CHECK(s.y == 5.0);  // f_u(x, 0) = 0 at phi = 1: b(0) = 0, a(0) = 0
    CHECK(s.z == 0.0);
  }
}

TEST_CASE("characteristics: backward characteristic from a constant region") {
  const FluxModel flux = build_flux(FluxFamily::lwr(1.0, 0.0));
  const Grid1D grid{-6.0, 6.0, 400};
  const SolutionField initial =
      make_field(grid, InitialData::riemann(), flux.u_minus(), flux.u_plus());
  const FieldHistory history = simulate(initial, flux, 1.0, {0.45, 5});

  SUBCASE("left of the shock carries u_minus with the advected foot") {
    const CharTrajectory traj =
        backward_char_from(history, flux, -1.0, 1.0, TraceSide::left, 1e-3);
    for (const CharState& s : traj.samples) {
      CHECK(s.z == doctest::Approx(1.0).epsilon(1e-12));
    }
    // foot y(0) = -1 - f_u(., 1) * t = -2 for V = 1
    CHECK(traj.end().y == doctest::Approx(-2.0).epsilon(1e-10));
  }
  SUBCASE("the two sides of the shock give the two states") {
    const CharTrajectory left =
        backward_char_from(history, flux, 0.0, 1.0, TraceSide::left, 1e-3);
    const CharTrajectory right =
        backward_char_from(history, flux, 0.0, 1.0, TraceSide::right, 1e-3);
    CHECK(left.start().z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(right.start().z == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(left.end().y < 0.0);
    CHECK(right.end().y > 0.0);
  }
}

TEST_CASE("characteristics: rarefaction interior foot lands at the fan origin") {
  const FluxModel flux = build_flux(FluxFamily::homogeneous_quadratic());
  const Grid1D grid{-4.0, 4.0, 800};
  // Reversed Riemann data: u = 0 left, 1 right -> rarefaction fan from x = 0.
  InitialData data;
  data.kind = InitialData::Kind::custom_samples;
  data.samples = {{-4.0, 0.0}, {-1e-9, 0.0}, {1e-9, 1.0}, {4.0, 1.0}};
  const SolutionField initial = make_field(grid, data, flux.u_minus(), flux.u_plus());
  const FieldHistory history = simulate(initial, flux, 1.0, {0.45, 5});
  // Interior fan point (x, t) = (0.5, 1): exact value x/t = 0.5; its backward
  // characteristic is the ray through the origin.
  const CharTrajectory traj =
      backward_char_from(history, flux, 0.5, 1.0, TraceSide::left, 1e-3);
  CHECK(traj.start().z == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::abs(traj.end().y) <= 0.05);
}

TEST_CASE("characteristics: rejections") {
  const FluxModel flux = build_flux(FluxFamily::homogeneous_quadratic());
  CHECK_THROWS_AS(integrate_char(flux, {0.0, 1.0, 0.0}, 0.0, 1e-3), ConfigError);
  CHECK_THROWS_AS(integrate_char(flux, {0.0, 1.0, 0.0}, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(crossing_time(flux, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 1.0), ConfigError);

  const Grid1D grid{-1.0, 1.0, 64};
  const SolutionField initial =
      make_field(grid, InitialData::riemann(), flux.u_minus(), flux.u_plus());
  const FieldHistory history = simulate(initial, flux, 0.2, {0.45, 5});
  // Trajectory from the u_- side near the boundary exits the narrow grid.
  CHECK_THROWS_AS(backward_char_from(history, flux, -0.9, 0.2, TraceSide::left, 1e-3),
                  OutOfDomain);
}
