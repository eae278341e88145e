#pragma once

#include <string>
#include <vector>

#include "framelab/config.hpp"

namespace framelab::cli {

// Runs the configured experiment, writing its CSV artifacts into the output
// directory (FRAMELAB_OUTPUT_DIR env var > config output > working
// directory).  Artifacts are written before built-in checks are judged, so a
// failing run still leaves its evidence on disk.  Throws ExperimentError
// when a built-in check fails and ConfigError for bad parameters.  Returns
// the artifact paths written.
std::vector<std::string> run_experiment(const RunConfig& config);

}  // namespace framelab::cli
