#pragma once

#include "config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace finsler::cli {

const std::vector<std::string>& eval_command_names();

/// Evaluates one quantity and prints a single JSON object.
void run_eval(const std::string& command, const ParamMap& params, std::ostream& out);

}  // namespace finsler::cli
