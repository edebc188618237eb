#include "gaugeprop/report.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "gaugeprop/error.hpp"

namespace gaugeprop::report {
namespace {

using nlohmann::json;

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(format_number(x));
  return a;
}

json number_map(const std::map<std::string, double>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[k] = format_number(v);
  return o;
}

json series_map(const std::map<std::string, std::vector<double>>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[k] = numbers(v);
  return o;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ConfigError, std::string("report is missing field '") + key + "'");
  }
  return j.at(key);
}

double read_number(const json& j) {
  if (!j.is_string()) throw Error(ErrorCode::ConfigError, "report numbers must be decimal strings");
  return parse_number(j.get<std::string>());
}

std::vector<double> read_numbers(const json& j) {
  std::vector<double> out;
  for (const json& x : j) out.push_back(read_number(x));
  return out;
}

std::map<std::string, double> read_number_map(const json& j) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = read_number(v);
  return out;
}

std::map<std::string, std::vector<double>> read_series_map(const json& j) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& [k, v] : j.items()) out[k] = read_numbers(v);
  return out;
}

bool same(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same(a[i], b[i])) return false;
  }
  return true;
}

template <class V>
bool same_map(const std::map<std::string, V>& a, const std::map<std::string, V>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !same(ia->second, ib->second)) return false;
  }
  return true;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::ConfigError, "not a decimal number: '" + s + "'");
  }
  return v;
}

std::string make_run_id(const json& config) {
  // 64-bit FNV-1a over the canonical dump.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "run-" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

json to_json(const PropagationReport& r) {
  json suites = json::array();
  for (const harness::SuiteResult& s : r.suites) {
    json rows = json::array();
    for (const harness::Row& row : s.rows) {
      rows.push_back({{"label", row.label},
                      {"value", format_number(row.value)},
                      {"threshold", format_number(row.threshold)},
                      {"passed", row.passed}});
    }
    suites.push_back({{"name", s.name},
                      {"criterion", s.criterion},
                      {"title", s.title},
                      {"passed", s.passed},
                      {"rows", rows},
                      {"metrics", number_map(s.metrics)},
                      {"series", series_map(s.series)},
                      {"diagnostic", s.diagnostic}});
  }
  json j = {{"schema", r.schema},
            {"run_id", r.run_id},
            {"config", r.config},
            {"suites", suites},
            {"series", series_map(r.series)},
            {"metrics", number_map(r.metrics)}};
  if (!r.timings.empty()) j["metadata"] = {{"timings_seconds", number_map(r.timings)}};
  return j;
}

namespace {

PropagationReport from_json_unchecked(const json& j) {
  PropagationReport r;
  r.schema = field(j, "schema").get<std::string>();
  if (r.schema != kSchema) throw Error(ErrorCode::ConfigError, "unsupported report schema '" + r.schema + "'");
  r.run_id = field(j, "run_id").get<std::string>();
  r.config = field(j, "config");
  for (const json& s : field(j, "suites")) {
    harness::SuiteResult sr;
    sr.name = field(s, "name").get<std::string>();
    sr.criterion = field(s, "criterion").get<int>();
    sr.title = field(s, "title").get<std::string>();
    sr.passed = field(s, "passed").get<bool>();
    for (const json& row : field(s, "rows")) {
      sr.rows.push_back({field(row, "label").get<std::string>(), read_number(field(row, "value")),
                         read_number(field(row, "threshold")), field(row, "passed").get<bool>()});
    }
    sr.metrics = read_number_map(field(s, "metrics"));
    sr.series = read_series_map(field(s, "series"));
    sr.diagnostic = field(s, "diagnostic").get<std::string>();
    r.suites.push_back(std::move(sr));
  }
  r.series = read_series_map(field(j, "series"));
  r.metrics = read_number_map(field(j, "metrics"));
  if (j.contains("metadata")) r.timings = read_number_map(field(j.at("metadata"), "timings_seconds"));
  return r;
}

}  // namespace

PropagationReport from_json(const json& j) {
  try {
    return from_json_unchecked(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed report: ") + e.what());
  }
}

bool identical(const PropagationReport& a, const PropagationReport& b) {
  if (a.schema != b.schema || a.run_id != b.run_id || a.config != b.config) return false;
  if (a.suites.size() != b.suites.size()) return false;
  for (std::size_t i = 0; i < a.suites.size(); ++i) {
    const auto& x = a.suites[i];
    const auto& y = b.suites[i];
    if (x.name != y.name || x.criterion != y.criterion || x.title != y.title || x.passed != y.passed ||
        x.diagnostic != y.diagnostic || x.rows.size() != y.rows.size()) {
      return false;
    }
    for (std::size_t k = 0; k < x.rows.size(); ++k) {
      const auto& p = x.rows[k];
      const auto& q = y.rows[k];
      if (p.label != q.label || !same(p.value, q.value) || !same(p.threshold, q.threshold) ||
          p.passed != q.passed) {
        return false;
      }
    }
    if (!same_map(x.metrics, y.metrics) || !same_map(x.series, y.series)) return false;
  }
  return same_map(a.series, b.series) && same_map(a.metrics, b.metrics) && same_map(a.timings, b.timings);
}

}  // namespace gaugeprop::report
