#include "finsler/report.hpp"

#include "finsler/core.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace finsler {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add(std::vector<double> row) {
  if (!header.empty() && row.size() != header.size()) fail(ErrorCode::InvalidArgument, "CSV row width differs from header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << "\n";
  }
  return os.str();
}

Report::Report(std::string experiment) : experiment_(std::move(experiment)) {}

const Check& Report::push(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

const Check& Report::near(const std::string& name, double value, double expected, double tol) {
  return push({name, value, expected, tol, "abs", std::abs(value - expected) <= tol});
}

const Check& Report::near_rel(const std::string& name, double value, double expected, double tol) {
  return push({name, value, expected, tol, "rel", std::abs(value - expected) <= tol * std::abs(expected)});
}

const Check& Report::less(const std::string& name, double value, double bound) {
  return push({name, value, bound, 0.0, "<", value < bound});
}

const Check& Report::greater(const std::string& name, double value, double bound) {
  return push({name, value, bound, 0.0, ">", value > bound});
}

const Check& Report::holds(const std::string& name, bool ok) {
  return push({name, ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok});
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks_)
    if (!c.passed) out.push_back(&c);
  return out;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_;
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance},
                   {"relation", c.relation},
                   {"passed", c.passed}});
  }
  j["data"] = data_;
  return j;
}

std::string Report::dump() const { return to_json().dump(2); }

}  // namespace finsler
