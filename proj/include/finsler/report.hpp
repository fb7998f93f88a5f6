#pragma once

// Named pass/fail checks plus JSON and CSV emission for experiment reports.

#include <json.hpp>

#include <string>
#include <vector>

namespace finsler {

/// printf("%.17g").
std::string format_double(double v);

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs", "rel", "<", ">", "true"
  bool passed = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::string to_string() const;
};

class Report {
 public:
  explicit Report(std::string experiment);

  /// |value - expected| <= tol.
  const Check& near(const std::string& name, double value, double expected, double tol);
  /// |value - expected| <= tol * |expected|.
  const Check& near_rel(const std::string& name, double value, double expected, double tol);
  const Check& less(const std::string& name, double value, double bound);
  const Check& greater(const std::string& name, double value, double bound);
  const Check& holds(const std::string& name, bool ok);

  nlohmann::ordered_json& data() { return data_; }
  const std::string& experiment() const { return experiment_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::vector<const Check*> failures() const;

  nlohmann::ordered_json to_json() const;
  std::string dump() const;

  CsvTable& curves() { return curves_; }
  const CsvTable& curves() const { return curves_; }

 private:
  const Check& push(Check c);
  std::string experiment_;
  std::vector<Check> checks_;
  nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
  CsvTable curves_;
};

}  // namespace finsler
