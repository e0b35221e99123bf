#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hetclaw/errors.hpp"
#include "hetclaw/run.hpp"

using namespace hetclaw;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// manifest.json with the wall_clock field blanked, for byte comparisons.
std::string normalized_manifest(const fs::path& path) {
  std::string text = slurp(path);
  const auto pos = text.find("wall_clock_seconds");
  if (pos != std::string::npos) {
    const auto end = text.find('\n', pos);
    text.erase(pos, end - pos);
  }
  return text;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config: parse and validate") {
  const std::string text = R"(
# comment
experiment = simulate
flux.family = lwr_heterogeneous
flux.v0 = 1.0
grid.x_left = -2
grid.x_right = 2
grid.n_cells = 64
run.horizon = 0.5
out.dir = /tmp/hetclaw_cfg_test
)";
  const RunConfig config = RunConfig::from_string(text);
  CHECK(config.experiment == "simulate");
  CHECK(config.flux.tag == FluxTag::lwr_heterogeneous);
  CHECK(config.grid.n_cells == 64);
  CHECK(config.horizon == 0.5);
  config.validate();
}

TEST_CASE("config: diagnostics carry the offending key") {
  CHECK_THROWS_WITH_AS(RunConfig::from_string("bogus.key = 1\n"),
                       "unknown config key: bogus.key", ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("run.horizon = fast\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("flux.family = cubic\n"), ConfigError);
  RunConfig config = RunConfig::from_string("run.horizon = -1\n");
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("run: simulate writes snapshots, sidecars and a manifest") {
  TempDir dir("hetclaw_run_simulate");
  RunConfig config = RunConfig::from_string(
      "experiment = simulate\n"
      "flux.family = lwr_heterogeneous\n"
      "grid.x_left = -2\ngrid.x_right = 2\ngrid.n_cells = 64\n"
      "run.horizon = 0.25\n"
      "run.snapshot_times = 0, 0.25\n");
  config.out_dir = (dir.path / "out").string();
  const RunManifest manifest = run(config);
  REQUIRE(manifest.error.empty());
  CHECK(manifest.all_pass());
  CHECK(fs::exists(fs::path(config.out_dir) / "snapshot_0000.csv"));
  CHECK(fs::exists(fs::path(config.out_dir) / "snapshot_0001.json"));
  CHECK(fs::exists(fs::path(config.out_dir) / "manifest.json"));
  const std::string csv = slurp(fs::path(config.out_dir) / "snapshot_0000.csv");
  CHECK(csv.rfind("x_center,u\n", 0) == 0);
}

TEST_CASE("run: identical configs produce byte-identical artifacts") {
  TempDir dir("hetclaw_run_determinism");
  auto make_config = [&](const std::string& out) {
    RunConfig config = RunConfig::from_string(
        "experiment = stability\n"
        "flux.family = convex_combination\n"
        "init.kind = perturbed_phi\n"
        "init.bump_amplitude = 0.2\ninit.bump_center = -1\ninit.bump_width = 0.6\n"
        "grid.x_left = -4\ngrid.x_right = 4\ngrid.n_cells = 200\n"
        "run.horizon = 0.5\n");
    config.out_dir = (dir.path / out).string();
    return config;
  };
  const RunManifest m1 = run(make_config("a"));
  const RunManifest m2 = run(make_config("b"));
  REQUIRE(m1.error.empty());
  REQUIRE(m2.error.empty());
  CHECK(slurp(dir.path / "a" / "stability_series.csv") ==
        slurp(dir.path / "b" / "stability_series.csv"));
  CHECK(slurp(dir.path / "a" / "stability.json") == slurp(dir.path / "b" / "stability.json"));
  CHECK(normalized_manifest(dir.path / "a" / "manifest.json") ==
        normalized_manifest(dir.path / "b" / "manifest.json"));
  CHECK(m1.content_hash == m2.content_hash);
}

TEST_CASE("run: non-empty output directory is rejected unless overwrite") {
  TempDir dir("hetclaw_run_collision");
  fs::create_directories(dir.path / "out");
  std::ofstream(dir.path / "out" / "stale.txt") << "x";
  RunConfig config = RunConfig::from_string(
      "experiment = validate-flux\nflux.family = homogeneous_quadratic\n");
  config.out_dir = (dir.path / "out").string();
  RunManifest manifest = run(config);
  CHECK_FALSE(manifest.error.empty());
  config.overwrite = true;
  manifest = run(config);
  CHECK(manifest.error.empty());
}

TEST_CASE("run: validate-flux criteria match family expectations") {
  TempDir dir("hetclaw_run_validate");
  RunConfig config = RunConfig::from_string(
      "experiment = validate-flux\n"
      "flux.family = gaussian_lwr\n"
      "validate.u_lo = 0\nvalidate.u_hi = 1\n");
  config.out_dir = (dir.path / "out").string();
  const RunManifest manifest = run(config);
  REQUIRE(manifest.error.empty());
  CHECK(manifest.all_pass());  // expectation: gaussian violates the sign condition
  CHECK(fs::exists(fs::path(config.out_dir) / "assumptions.json"));
}

TEST_CASE("run: sweep isolates per-run errors") {
  TempDir dir("hetclaw_run_sweep");
  std::vector<RunConfig> configs;
  for (int i = 0; i < 3; ++i) {
    RunConfig config = RunConfig::from_string(
        "experiment = simulate\n"
        "flux.family = homogeneous_quadratic\n"
        "grid.x_left = -2\ngrid.x_right = 2\ngrid.n_cells = 64\n"
        "run.horizon = 0.1\n");
    config.out_dir = (dir.path / ("run_" + std::to_string(i))).string();
    if (i == 1) config.horizon = -1.0;  // invalid on purpose
    configs.push_back(config);
  }
  const std::vector<RunManifest> manifests = sweep(configs);
  REQUIRE(manifests.size() == 3);
  CHECK(manifests[0].error.empty());
  CHECK_FALSE(manifests[1].error.empty());
  CHECK(manifests[2].error.empty());
}

TEST_CASE("run: emergence experiment end to end (small)") {
  TempDir dir("hetclaw_run_emergence");
  RunConfig config = RunConfig::from_string(
      "experiment = emergence\n"
      "flux.family = convex_combination\n"
      "init.kind = piecewise4\n"
      "init.x_minus = -1\ninit.x0 = 0\ninit.x_plus = 1\n"
      "init.u_m = 0\ninit.u_M = 1\n"
      "grid.x_left = -3\ngrid.x_right = 13\ngrid.n_cells = 800\n"
      "run.horizon = 10.5\n");
  config.out_dir = (dir.path / "out").string();
  const RunManifest manifest = run(config);
  REQUIRE(manifest.error.empty());
  CHECK(manifest.all_pass());
  CHECK(fs::exists(fs::path(config.out_dir) / "emergence.json"));
  CHECK(fs::exists(fs::path(config.out_dir) / "shock_0.csv"));
  CHECK(fs::exists(fs::path(config.out_dir) / "shock_1.csv"));
}

TEST_CASE("fmt17 prints round-trippable values") {
  CHECK(fmt17(0.5) == "0.5");
  CHECK(fmt17(1.0 / 3.0) == "0.33333333333333331");
}
