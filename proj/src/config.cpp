#include "hetclaw/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hetclaw/errors.hpp"

namespace hetclaw {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  return out;
}

InitialData::Kind init_kind_from_name(const std::string& name) {
  if (name == "riemann_phi") return InitialData::Kind::riemann_phi;
  if (name == "piecewise4") return InitialData::Kind::piecewise4;
  if (name == "perturbed_phi") return InitialData::Kind::perturbed_phi;
  if (name == "constant") return InitialData::Kind::constant;
  if (name == "custom_samples") return InitialData::Kind::custom_samples;
  throw ConfigError("unknown init.kind: " + name);
}

}  // namespace

std::vector<std::string> valid_experiments() {
  return {"simulate",  "characteristics", "emergence",    "stability",
          "negcheck",  "hj-check",        "validate-flux"};
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    cfg.raw[key] = value;

    if (key == "experiment") {
      cfg.experiment = value;
    } else if (key == "flux.family") {
      cfg.flux.tag = flux_tag_from_name(value);
    } else if (key == "flux.eps") {
      cfg.flux.eps = parse_double(key, value);
    } else if (key == "flux.phi_center") {
      cfg.flux.phi_center = parse_double(key, value);
    } else if (key == "flux.phi_width") {
      cfg.flux.phi_width = parse_double(key, value);
    } else if (key == "flux.scale") {
      cfg.flux.scale = parse_double(key, value);
    } else if (key == "flux.v0") {
      cfg.flux.v0 = parse_double(key, value);
    } else if (key == "flux.v1") {
      cfg.flux.v1 = parse_double(key, value);
    } else if (key == "flux.u_plus") {
      cfg.flux.u_plus = parse_double(key, value);
    } else if (key == "flux.u_minus") {
      cfg.flux.u_minus = parse_double(key, value);
    } else if (key == "init.kind") {
      cfg.init.kind = init_kind_from_name(value);
    } else if (key == "init.x_minus") {
      cfg.init.x_minus = parse_double(key, value);
    } else if (key == "init.x0") {
      cfg.init.x0 = parse_double(key, value);
    } else if (key == "init.x_plus") {
      cfg.init.x_plus = parse_double(key, value);
    } else if (key == "init.u_m") {
      cfg.init.u_m = parse_double(key, value);
    } else if (key == "init.u_M") {
      cfg.init.u_M = parse_double(key, value);
    } else if (key == "init.value") {
      cfg.init.value = parse_double(key, value);
    } else if (key == "init.bump_amplitude") {
      cfg.init.bump_amplitude = parse_double(key, value);
    } else if (key == "init.bump_center") {
      cfg.init.bump_center = parse_double(key, value);
    } else if (key == "init.bump_width") {
      cfg.init.bump_width = parse_double(key, value);
    } else if (key == "init.samples") {
      // "x:u;x:u;..." pairs
      std::stringstream ss(value);
      std::string pair;
      while (std::getline(ss, pair, ';')) {
        pair = trim(pair);
        if (pair.empty()) continue;
        const auto colon = pair.find(':');
        if (colon == std::string::npos) {
          throw ConfigError("init.samples: expected x:u pairs separated by ';'");
        }
        cfg.init.samples.emplace_back(parse_double(key, trim(pair.substr(0, colon))),
                                      parse_double(key, trim(pair.substr(colon + 1))));
      }
    } else if (key == "grid.x_left") {
      cfg.grid.x_left = parse_double(key, value);
    } else if (key == "grid.x_right") {
      cfg.grid.x_right = parse_double(key, value);
    } else if (key == "grid.n_cells") {
      cfg.grid.n_cells = parse_int(key, value);
    } else if (key == "grid.auto_size") {
      cfg.grid_auto = parse_bool(key, value);
    } else if (key == "grid.margin") {
      cfg.grid_margin = parse_double(key, value);
    } else if (key == "run.horizon") {
      cfg.horizon = parse_double(key, value);
    } else if (key == "run.cfl") {
      cfg.cfl = parse_double(key, value);
    } else if (key == "run.snapshot_every") {
      cfg.snapshot_every = parse_int(key, value);
    } else if (key == "run.snapshot_times") {
      cfg.snapshot_times = parse_list(key, value);
    } else if (key == "run.boundary") {
      if (value == "far_field") {
        cfg.boundary = BoundaryMode::far_field;
      } else if (value == "periodic") {
        cfg.boundary = BoundaryMode::periodic;
      } else {
        throw ConfigError("run.boundary: expected far_field or periodic");
      }
    } else if (key == "out.dir") {
      cfg.out_dir = value;
    } else if (key == "out.overwrite") {
      cfg.overwrite = parse_bool(key, value);
    } else if (key == "tol.jump_floor_rel") {
      cfg.jump_floor_rel = parse_double(key, value);
    } else if (key == "tol.ordering_cells") {
      cfg.ordering_tol_cells = parse_double(key, value);
    } else if (key == "tol.emergence_cells") {
      cfg.emergence_tol_cells = parse_double(key, value);
    } else if (key == "tol.num_tol") {
      cfg.num_tol_override = parse_double(key, value);
    } else if (key == "char.seeds") {
      std::stringstream ss(value);
      std::string seed;
      while (std::getline(ss, seed, ';')) {
        seed = trim(seed);
        if (seed.empty()) continue;
        std::vector<double> parts;
        std::stringstream ps(seed);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(parse_double(key, trim(part)));
        if (parts.size() < 2 || parts.size() > 3) {
          throw ConfigError("char.seeds: expected y:z or y:z:t entries");
        }
        if (parts.size() == 2) parts.push_back(0.0);
        cfg.char_seeds.push_back(parts);
      }
    } else if (key == "char.dt") {
      cfg.char_dt = parse_double(key, value);
    } else if (key == "validate.x_lo") {
      cfg.validate_x_lo = parse_double(key, value);
    } else if (key == "validate.x_hi") {
      cfg.validate_x_hi = parse_double(key, value);
    } else if (key == "validate.u_lo") {
      cfg.validate_u_lo = parse_double(key, value);
    } else if (key == "validate.u_hi") {
      cfg.validate_u_hi = parse_double(key, value);
    } else if (key == "validate.density") {
      cfg.validate_density = parse_int(key, value);
    } else if (key == "hj.t_end") {
      cfg.hj_t_end = parse_double(key, value);
    } else if (key == "hj.dt_factor") {
      cfg.hj_dt_factor = parse_double(key, value);
    } else if (key == "neg.reference") {
      cfg.neg_reference = parse_double(key, value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

void RunConfig::validate() const {
  const auto experiments = valid_experiments();
  if (std::find(experiments.begin(), experiments.end(), experiment) == experiments.end()) {
    throw ConfigError("experiment: unknown selector '" + experiment + "'");
  }
  if (!(horizon > 0.0)) throw ConfigError("run.horizon must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("run.cfl must lie in (0, 1]");
  if (snapshot_every < 1) throw ConfigError("run.snapshot_every must be >= 1");
  if (!(jump_floor_rel > 0.0)) throw ConfigError("tol.jump_floor_rel must be positive");
  if (!(ordering_tol_cells > 0.0)) throw ConfigError("tol.ordering_cells must be positive");
  if (!(emergence_tol_cells > 0.0)) throw ConfigError("tol.emergence_cells must be positive");
  if (!grid_auto) grid.validate();
  if (experiment == "characteristics" && char_seeds.empty()) {
    throw ConfigError("characteristics experiment requires char.seeds");
  }
  if (!(char_dt > 0.0)) throw ConfigError("char.dt must be positive");
  if (out_dir.empty()) throw ConfigError("out.dir must not be empty");
}

}  // namespace hetclaw
