#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <set>

namespace finsler::cli {

namespace {

const std::set<std::string> kNumericKeys = {"fd_step_rel", "fd_step_nested", "indicatrix_samples",
                                            "quad_tol",    "ode_step",       "root_tol"};

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    fail(ErrorCode::Parse, "not a number: '" + s + "'");
  return v;
}

Vec parse_vec(const std::string& s) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    vals.push_back(parse_double(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

double ExperimentConfig::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_double(it->second);
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = parse_double(it->second);
  if (v != std::floor(v)) fail(ErrorCode::Parse, key + " must be an integer");
  return static_cast<int>(v);
}

std::uint64_t ExperimentConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::uint64_t v = 0;
  const std::string t = trim(it->second);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) fail(ErrorCode::Parse, key + " must be an unsigned integer");
  return v;
}

std::string ExperimentConfig::get_str(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const Vec v = parse_vec(it->second);
  return {v.data(), v.data() + v.size()};
}

NumericConfig numeric_from(const ParamMap& params, NumericConfig c) {
  auto take = [&](const char* key, double& dst) {
    if (auto it = params.find(key); it != params.end()) dst = parse_double(it->second);
  };
  take("fd_step_rel", c.fd_step_rel);
  take("fd_step_nested", c.fd_step_nested);
  take("quad_tol", c.quad_tol);
  take("ode_step", c.ode_step);
  take("root_tol", c.root_tol);
  if (auto it = params.find("indicatrix_samples"); it != params.end())
    c.indicatrix_samples = static_cast<int>(parse_double(it->second));
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.name = experiment;
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorCode::Parse, std::string("config: ") + e.what());
  }
  ParamMap numeric;
  if (auto sec = tree.get_child_optional("numeric"))
    for (const auto& [k, v] : *sec) numeric[k] = trim(v.data());
  if (auto sec = tree.get_child_optional(experiment)) {
    for (const auto& [k, v] : *sec) {
      if (kNumericKeys.count(k)) numeric[k] = trim(v.data());
      else cfg.params[k] = trim(v.data());
    }
  }
  cfg.numeric = numeric_from(numeric);
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::Parse, "override must look like key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (kNumericKeys.count(key)) cfg.numeric = numeric_from({{key, value}}, cfg.numeric);
  else cfg.params[key] = value;
}

namespace {

std::string get_or(const ParamMap& p, const std::string& key, const std::string& fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double num_or(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : parse_double(it->second);
}

Mat square(const Vec& v, int n, const std::string& what) {
  if (v.size() != n * n) fail(ErrorCode::InvalidArgument, what + " needs " + std::to_string(n * n) + " entries");
  Mat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = v(i * n + j);
  return M;
}

MetricSpec simple_metric(const std::string& family, const ParamMap& p, int n) {
  if (family == "euclidean") return MetricSpec::euclidean(n);
  if (family == "minkowski-randers") return MetricSpec::minkowski_randers(num_or(p, "t", 0.0));
  if (family == "funk") return MetricSpec::funk(n);
  if (family == "randers") {
    const Vec b = p.count("b") ? parse_vec(p.at("b")) : Vec::Zero(n);
    const Mat A = p.count("A") ? square(parse_vec(p.at("A")), static_cast<int>(b.size()), "A")
                               : Mat::Identity(b.size(), b.size());
    return MetricSpec::randers(A, b);
  }
  fail(ErrorCode::Parse, "unknown metric family '" + family +
                             "' (expected euclidean, minkowski-randers, funk, randers, navigation, fish-tank)");
}

}  // namespace

NavigationData build_navigation(const ParamMap& p) {
  const std::string family = get_or(p, "family", "fish-tank");
  const int n = static_cast<int>(num_or(p, "n", 3));
  if (family == "fish-tank") return fish_tank(n);
  if (family != "navigation") fail(ErrorCode::InvalidArgument, "family '" + family + "' is not a navigation metric");
  const std::string base_family = get_or(p, "base", "euclidean");
  const MetricSpec base = simple_metric(base_family, p, base_family == "minkowski-randers" ? 2 : n);
  const int m = base.dim();
  const std::string wind = get_or(p, "wind", "rotation");
  WindField V = WindField::zero(m);
  if (wind == "rotation") {
    if (p.count("Q")) {
      V = WindField::rotation(square(parse_vec(p.at("Q")), m, "Q"));
    } else {
      Mat Q = Mat::Zero(m, m);
      const double w = num_or(p, "omega", 1.0);
      Q(0, 1) = w;
      Q(1, 0) = -w;
      V = WindField::rotation(Q);
    }
  } else if (wind == "translation") {
    V = WindField::translation(parse_vec(get_or(p, "c", "0")));
  } else if (wind == "radial") {
    V = WindField::radial(m, num_or(p, "scale", 1.0));
  } else if (wind == "matrix") {
    V = WindField::matrix(square(parse_vec(get_or(p, "Q", "")), m, "Q"),
                          p.count("c") ? parse_vec(p.at("c")) : Vec::Zero(m));
  } else if (wind != "zero") {
    fail(ErrorCode::Parse, "unknown wind '" + wind + "' (expected zero, rotation, translation, radial, matrix)");
  }
  return NavigationData{base, V};
}

MetricSpec build_metric(const ParamMap& p) {
  const std::string family = get_or(p, "family", "euclidean");
  const int n = static_cast<int>(num_or(p, "n", family == "minkowski-randers" ? 2 : 3));
  if (family == "navigation" || family == "fish-tank") return build_navigation(p).derived();
  return simple_metric(family, p, n);
}

MeasureSpec build_measure(const ParamMap& p) {
  const std::string m = get_or(p, "measure", "bh");
  if (m == "bh" || m == "busemann-hausdorff") return MeasureSpec::busemann_hausdorff();
  if (m == "ht" || m == "holmes-thompson") return MeasureSpec::holmes_thompson();
  if (m == "lebesgue") return MeasureSpec::lebesgue();
  fail(ErrorCode::Parse, "unknown measure '" + m + "' (expected bh, ht, lebesgue)");
}

TestFunction build_test_function(const ParamMap& p, double pp, double q, int n) {
  const std::string t = get_or(p, "test", "gaussian");
  if (t == "gaussian") return TestFunction::gaussian(num_or(p, "C", 1.0));
  if (t == "ckn") return TestFunction::ckn_power(num_or(p, "C", 1.0), pp, q);
  if (t == "ckn-shape")
    return TestFunction::ckn_shape(num_or(p, "C", 1.0), num_or(p, "a", 2.0 - q), num_or(p, "b", 1.0 / (2.0 - pp)));
  if (t == "funk-power") return TestFunction::funk_power(num_or(p, "alpha", 1.0));
  if (t == "hardy-cutoff")
    return TestFunction::hardy_cutoff(num_or(p, "eps", 0.1), num_or(p, "rin", 0.5), num_or(p, "rout", 1.0),
                                      num_or(p, "gamma", 0.5 * (n - 2)));
  fail(ErrorCode::Parse, "unknown test function '" + t + "' (expected gaussian, ckn, ckn-shape, funk-power, hardy-cutoff)");
}

}  // namespace finsler::cli
