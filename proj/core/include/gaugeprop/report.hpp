#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaugeprop/harness.hpp"

namespace gaugeprop::report {

inline constexpr const char* kSchema = "gauge-prop-report/1";

struct PropagationReport {
  std::string schema = kSchema;
  std::string run_id;
  nlohmann::json config = nlohmann::json::object();
  std::vector<harness::SuiteResult> suites;
  std::map<std::string, std::vector<double>> series;
  std::map<std::string, double> metrics;
  /// Wall-clock seconds per suite; serialized only when non-empty.
  std::map<std::string, double> timings;
};

/// Decimal string with 17 significant digits; parses back to the same binary64.
std::string format_number(double v);
/// Inverse of format_number; accepts "inf", "-inf" and "nan".
double parse_number(const std::string& s);

/// Deterministic identifier derived from the configuration echo.
std::string make_run_id(const nlohmann::json& config);

nlohmann::json to_json(const PropagationReport& r);
/// Throws ConfigError for documents that do not follow the schema.
PropagationReport from_json(const nlohmann::json& j);

/// Field-by-field equality, comparing numbers bitwise.
bool identical(const PropagationReport& a, const PropagationReport& b);

}  // namespace gaugeprop::report
