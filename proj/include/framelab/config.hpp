#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace framelab::cli {

// One experiment run: the experiment name, its flat key=value parameters,
// the RNG seed echoed into every artifact, and the output directory.
struct RunConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string output;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
};

// Experiment names accepted in configs, with the parameter keys each allows
// (seed/output/experiment are always allowed).
const std::map<std::string, std::vector<std::string>>& experiment_registry();

// Parses `key = value` lines with `#` comments.  Strict: unknown keys,
// duplicate keys, or a missing/unknown experiment name raise errors naming
// the offending line.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Applies one `key=value` override (the --set form); validates the key
// against the experiment's registry entry.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace framelab::cli
