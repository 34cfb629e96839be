#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace nematic {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "nematic 0.2.0";

struct CheckResult {
  std::string name;
  std::string ref;     // which identity/inequality this certifies
  json values;
  double tolerance = 0;
  bool pass = false;
};

class Report {
 public:
  Report(std::string command, json config_echo);

  void set_tolerance(const std::string& key, double value);
  double tolerance(const std::string& key, double fallback) const;
  void add(CheckResult r);

  bool all_pass() const;
  int n_failed() const;

  /// {config, version, checks: [{name, paper_ref, values, tolerance, pass}],
  /// summary}; timestamps live in a separate header object so the payload is
  /// byte-stable across reruns.
  json payload() const;
  json full() const;  // header + payload

  std::string csv() const;  // one line per check: name,pass,tolerance

 private:
  std::string command_;
  json config_;
  std::map<std::string, double> tolerances_;
  std::vector<CheckResult> checks_;
};

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// "key=value" tolerance override strings -> map; throws on malformed input.
std::map<std::string, double> parse_tolerance_overrides(const std::vector<std::string>& kvs);

}  // namespace nematic
