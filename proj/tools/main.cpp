#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hetclaw/errors.hpp"
#include "hetclaw/run.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int n_cells = 0;
  double horizon = 0.0;
  bool overwrite = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "run configuration file")->required();
  cmd->add_option("--out", flags.out_dir, "output directory (overrides out.dir)");
  cmd->add_option("--n-cells", flags.n_cells, "grid resolution override");
  cmd->add_option("--horizon", flags.horizon, "time horizon override");
  cmd->add_flag("--overwrite", flags.overwrite, "allow writing into a non-empty directory");
}

hetclaw::RunConfig load_config(const CommonFlags& flags, const std::string& experiment) {
  hetclaw::RunConfig config = hetclaw::RunConfig::from_file(flags.config_path);
  config.experiment = experiment;
  config.raw["experiment"] = experiment;
  if (!flags.out_dir.empty()) {
    config.out_dir = flags.out_dir;
    config.raw["out.dir"] = flags.out_dir;
  }
  if (flags.n_cells > 0) {
    config.grid.n_cells = flags.n_cells;
    config.raw["grid.n_cells"] = std::to_string(flags.n_cells);
  }
  if (flags.horizon > 0.0) {
    config.horizon = flags.horizon;
    config.raw["run.horizon"] = hetclaw::fmt17(flags.horizon);
  }
  if (flags.overwrite) {
    config.overwrite = true;
    config.raw["out.overwrite"] = "true";
  }
  return config;
}

int report_manifest(const hetclaw::RunManifest& manifest) {
  if (!manifest.error.empty()) {
    std::cerr << "error: " << manifest.error << "\n";
    return 2;
  }
  bool all_pass = true;
  for (const auto& c : manifest.criteria) {
    std::printf("[%s] %s value=%s threshold=%s%s%s\n", c.pass ? "PASS" : "FAIL",
                c.id.c_str(), hetclaw::fmt17(c.value).c_str(),
                hetclaw::fmt17(c.threshold).c_str(), c.note.empty() ? "" : "  # ",
                c.note.c_str());
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 1;
}

int run_single(const CommonFlags& flags, const std::string& experiment) {
  try {
    const hetclaw::RunConfig config = load_config(flags, experiment);
    return report_manifest(hetclaw::run(config));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_sweep(const CommonFlags& flags, const std::string& param,
              const std::string& values_csv) {
  try {
    std::vector<std::string> values;
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) values.push_back(item);
    }
    if (values.empty()) throw hetclaw::ConfigError("sweep: --values is empty");

    std::ifstream in(flags.config_path);
    if (!in) throw hetclaw::ConfigError("cannot open config file: " + flags.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string base_text = buf.str();

    const std::string out_root = flags.out_dir.empty() ? "sweep_out" : flags.out_dir;
    std::vector<hetclaw::RunConfig> configs;
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::string text = base_text;
      text += "\n" + param + " = " + values[i] + "\n";
      char sub[32];
      std::snprintf(sub, sizeof(sub), "run_%03zu", i);
      text += "out.dir = " + (fs::path(out_root) / sub).string() + "\n";
      if (flags.overwrite) text += "out.overwrite = true\n";
      hetclaw::RunConfig config = hetclaw::RunConfig::from_string(text);
      if (flags.n_cells > 0) config.grid.n_cells = flags.n_cells;
      if (flags.horizon > 0.0) config.horizon = flags.horizon;
      configs.push_back(config);
    }

    const std::vector<hetclaw::RunManifest> manifests = hetclaw::sweep(configs);

    fs::create_directories(out_root);
    std::ofstream summary(fs::path(out_root) / "summary.csv");
    summary << "index," << param << ",status";
    // Union of criterion ids, in first-seen order, as summary columns.
    std::vector<std::string> ids;
    for (const auto& m : manifests) {
      for (const auto& c : m.criteria) {
        if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
      }
    }
    for (const auto& id : ids) summary << "," << id;
    summary << "\n";
    bool all_pass = true;
    for (std::size_t i = 0; i < manifests.size(); ++i) {
      const auto& m = manifests[i];
      summary << i << "," << values[i] << ","
              << (m.error.empty() ? (m.all_pass() ? "pass" : "fail") : "error");
      for (const auto& id : ids) {
        double value = std::numeric_limits<double>::quiet_NaN();
        for (const auto& c : m.criteria) {
          if (c.id == id) value = c.value;
        }
        summary << "," << hetclaw::fmt17(value);
      }
      summary << "\n";
      if (!m.error.empty()) {
        std::fprintf(stderr, "run %zu (%s = %s) error: %s\n", i, param.c_str(),
                     values[i].c_str(), m.error.c_str());
      }
      all_pass = all_pass && m.all_pass();
    }
    std::printf("sweep complete: %zu runs, summary at %s\n", manifests.size(),
                (fs::path(out_root) / "summary.csv").c_str());
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hetclaw: entropy solutions, characteristics, shock tracking and L2 shock "
      "stability for 1-D conservation laws with heterogeneous convex flux"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "simulate", "characteristics", "emergence", "stability",
      "negcheck", "hj-check",        "validate-flux"};
  std::vector<CommonFlags> flag_sets(experiments.size() + 1);
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    CLI::App* cmd = app.add_subcommand(experiments[i]);
    add_common(cmd, flag_sets[i]);
  }

  CommonFlags& sweep_flags = flag_sets.back();
  std::string sweep_param;
  std::string sweep_values;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run one experiment across a parameter axis");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--param", sweep_param, "config key to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < experiments.size(); ++i) {
    if (app.got_subcommand(experiments[i])) {
      return run_single(flag_sets[i], experiments[i]);
    }
  }
  if (app.got_subcommand("sweep")) {
    return run_sweep(sweep_flags, sweep_param, sweep_values);
  }
  return 2;
}
