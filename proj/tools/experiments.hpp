#pragma once

#include "config.hpp"

#include "finsler/report.hpp"

#include <string>
#include <vector>

namespace finsler::cli {

const std::vector<std::string>& experiment_names();

nlohmann::ordered_json functional_json(const FunctionalReport& r);

/// Runs one named experiment; unknown names throw InvalidArgument listing the valid ones.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace finsler::cli
