#include "nematic/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nematic {

Report::Report(std::string command, json config_echo)
    : command_(std::move(command)), config_(std::move(config_echo)) {}

void Report::set_tolerance(const std::string& key, double value) { tolerances_[key] = value; }

double Report::tolerance(const std::string& key, double fallback) const {
  auto it = tolerances_.find(key);
  return it == tolerances_.end() ? fallback : it->second;
}

void Report::add(CheckResult r) { checks_.push_back(std::move(r)); }

bool Report::all_pass() const { return n_failed() == 0; }

int Report::n_failed() const {
  int n = 0;
  for (const auto& c : checks_)
    if (!c.pass) ++n;
  return n;
}

json Report::payload() const {
  json out;
  out["config"] = config_;
  out["config"]["command"] = command_;
  out["version"] = kVersion;
  json tol = json::object();
  for (const auto& [k, v] : tolerances_) tol[k] = v;
  out["tolerances"] = tol;
  out["checks"] = json::array();
  for (const auto& c : checks_) {
    json jc;
    jc["name"] = c.name;
    jc["paper_ref"] = c.ref;
    jc["values"] = c.values;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    out["checks"].push_back(std::move(jc));
  }
  out["summary"] = {{"total", checks_.size()},
                    {"failed", n_failed()},
                    {"pass", all_pass()}};
  return out;
}

json Report::full() const {
  json out;
  auto now = std::chrono::system_clock::now();
  out["header"] = {{"generated_at_unix_ms",
                    std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch())
                        .count()}};
  out["payload"] = payload();
  return out;
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "name,paper_ref,pass,tolerance\n";
  for (const auto& c : checks_)
    os << c.name << ',' << c.ref << ',' << (c.pass ? 1 : 0) << ',' << c.tolerance << '\n';
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp);
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::map<std::string, double> parse_tolerance_overrides(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    auto pos = kv.find('=');
    if (pos == std::string::npos || pos == 0)
      throw std::invalid_argument("tolerance override must be key=value: " + kv);
    out[kv.substr(0, pos)] = std::stod(kv.substr(pos + 1));
  }
  return out;
}

}  // namespace nematic
