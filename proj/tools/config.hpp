#pragma once

#include "finsler/core.hpp"
#include "finsler/functionals.hpp"
#include "finsler/measures.hpp"
#include "finsler/metrics.hpp"
#include "finsler/navigation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finsler::cli {

using ParamMap = std::map<std::string, std::string>;

struct ExperimentConfig {
  std::string name;
  ParamMap params;
  NumericConfig numeric;
  std::string out_dir = ".";

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double get(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  std::string get_str(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
};

/// Reads [numeric] and [<experiment>] sections of an INI file.
ExperimentConfig load_config(const std::string& path, const std::string& experiment);

/// "key=value"; numeric keys go to NumericConfig, the rest to params.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Copies fd_step_rel, fd_step_nested, indicatrix_samples, quad_tol, ode_step, root_tol.
NumericConfig numeric_from(const ParamMap& params, NumericConfig base = {});

double parse_double(const std::string& s);
Vec parse_vec(const std::string& s);

/// family = euclidean | minkowski-randers | funk | randers | navigation | fish-tank.
MetricSpec build_metric(const ParamMap& params);
/// measure = bh | ht | lebesgue.
MeasureSpec build_measure(const ParamMap& params);
/// test = gaussian | ckn | ckn-shape | funk-power | hardy-cutoff.
TestFunction build_test_function(const ParamMap& params, double p, double q, int n);
/// Navigation data for family = navigation or fish-tank.
NavigationData build_navigation(const ParamMap& params);

}  // namespace finsler::cli
