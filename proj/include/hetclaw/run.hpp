#ifndef HETCLAW_RUN_HPP_
#define HETCLAW_RUN_HPP_

#include <map>
#include <string>
#include <vector>

#include "hetclaw/config.hpp"

namespace hetclaw {

struct CriterionResult {
  std::string id;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct RunManifest {
  std::map<std::string, std::string> config_echo;
  std::string content_hash;  // FNV-1a 64 over the canonical config text
  double wall_clock_seconds = 0.0;
  std::vector<CriterionResult> criteria;
  std::vector<std::string> artifacts;
  std::string error;  // non-empty when the run failed

  bool all_pass() const;
};

/// Executes the configured experiment, writes its artifacts and manifest.json
/// into config.out_dir. Deterministic given the config (the wall_clock field in
/// the manifest is the only non-reproducible output).
RunManifest run(const RunConfig& config);

/// Independent runs (parallel); per-run errors are isolated into the manifest
/// error field and do not abort the sweep.
std::vector<RunManifest> sweep(const std::vector<RunConfig>& configs);

/// Canonical 17-significant-digit formatting used for all CSV output.
std::string fmt17(double v);

}  // namespace hetclaw

#endif  // HETCLAW_RUN_HPP_
