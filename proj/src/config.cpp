#include "framelab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "framelab/errors.hpp"

namespace framelab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool key_allowed(const std::string& experiment, const std::string& key) {
  if (key == "experiment" || key == "seed" || key == "output") return true;
  const auto& registry = experiment_registry();
  const auto it = registry.find(experiment);
  if (it == registry.end()) return false;
  return std::find(it->second.begin(), it->second.end(), key) != it->second.end();
}

std::string known_experiments() {
  std::string names;
  for (const auto& [name, keys] : experiment_registry()) {
    if (!names.empty()) names += ", ";
    names += name;
  }
  return names;
}

std::uint64_t parse_seed(const std::string& value) {
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("seed expects a nonnegative integer, got '" + value + "'");
  return parsed;
}

}  // namespace

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  char* end = nullptr;
  const double parsed = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "' expects a number, got '" + it->second + "'");
  return parsed;
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  char* end = nullptr;
  const long long parsed = std::strtoll(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigError("key '" + key + "' expects an integer, got '" + it->second + "'");
  return parsed;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

const std::map<std::string, std::vector<std::string>>& experiment_registry() {
  static const std::map<std::string, std::vector<std::string>> registry = {
      {"dispersion", {"mode", "hops", "mass", "spacing", "samples"}},
      {"harmonics", {"hop", "sites", "impulse", "ticks_per_unit"}},
      {"phased-array", {"c_mult", "n_sites", "max_tick"}},
      {"frames", {"mode", "c_s", "epsilon", "vA", "vB", "n_events"}},
      {"causal-check",
       {"mode", "map", "relation", "c_s", "v", "scale", "shift_t", "shift_x", "amp_t", "amp_x",
        "factor", "n_events", "n_trials"}},
      {"bell",
       {"mode", "theta_a", "theta_b", "theta_b2", "a", "a_prime", "b", "b_prime", "n", "bits",
        "max_k"}},
      {"clock", {"ticks"}},
      {"ca", {"mode", "n", "radius", "rule", "ticks", "trials"}},
      {"perm-dist", {"mode", "metric", "p", "q"}},
  };
  return registry;
}

RunConfig parse_config_text(const std::string& text) {
  struct Pending {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Pending> entries;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" +
                        stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    for (const Pending& seen : entries)
      if (seen.key == key)
        throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    entries.push_back({key, value, line});
  }

  RunConfig config;
  int experiment_line = 0;
  for (const Pending& entry : entries) {
    if (entry.key != "experiment") continue;
    config.experiment = entry.value;
    experiment_line = entry.line;
  }
  if (config.experiment.empty())
    throw ConfigError("missing required key 'experiment' (one of: " + known_experiments() + ")");
  if (experiment_registry().count(config.experiment) == 0)
    throw ConfigError("line " + std::to_string(experiment_line) + ": unknown experiment '" +
                      config.experiment + "' (one of: " + known_experiments() + ")");

  for (const Pending& entry : entries) {
    if (!key_allowed(config.experiment, entry.key))
      throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" + entry.key +
                        "' for experiment '" + config.experiment + "'");
    if (entry.key == "experiment") continue;
    if (entry.key == "seed")
      config.seed = parse_seed(entry.value);
    else if (entry.key == "output")
      config.output = entry.value;
    else
      config.params[entry.key] = entry.value;
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (config.experiment.empty()) throw ConfigError("set the experiment before overrides");
  if (!key_allowed(config.experiment, key))
    throw ConfigError("unknown key '" + key + "' for experiment '" + config.experiment + "'");
  if (key == "experiment")
    config.experiment = value;
  else if (key == "seed")
    config.seed = parse_seed(value);
  else if (key == "output")
    config.output = value;
  else
    config.params[key] = value;
}

}  // namespace framelab::cli
