#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "nematic/report.hpp"

using namespace nematic;

namespace {
Report sample_report() {
  Report rep("demo", json{{"d", 1}, {"L", 4}, {"seed", 7}});
  rep.set_tolerance("identity", 1e-10);
  rep.add({"alpha", "first identity", {{"residual", 1.25e-13}}, 1e-10, true});
  rep.add({"beta", "second identity", {{"residual", 0.5}, {"values", {1.0, 2.0}}}, 1e-10, false});
  return rep;
}
}  // namespace

TEST_CASE("payload is byte-stable and carries the schema") {
  Report a = sample_report();
  Report b = sample_report();
  CHECK(a.payload().dump() == b.payload().dump());

  json p = a.payload();
  CHECK(p.contains("config"));
  CHECK(p.contains("version"));
  CHECK(p.contains("checks"));
  CHECK(p.contains("summary"));
  CHECK(p["checks"][0].contains("paper_ref"));
  CHECK(p["checks"][0].contains("tolerance"));
  CHECK(p["summary"]["failed"] == 1);
  CHECK_FALSE(a.all_pass());

  // timestamps only in the header, never in the payload
  json f = a.full();
  CHECK(f.contains("header"));
  CHECK(f["payload"].dump() == p.dump());
}

TEST_CASE("csv rendering") {
  std::string csv = sample_report().csv();
  CHECK(csv.find("alpha,first identity,1,") != std::string::npos);
  CHECK(csv.find("beta,second identity,0,") != std::string::npos);
}

TEST_CASE("tolerance overrides") {
  auto m = parse_tolerance_overrides({"identity=1e-8", "margin=2.5e-9"});
  CHECK(m.at("identity") == 1e-8);
  CHECK(m.at("margin") == 2.5e-9);
  CHECK_THROWS_AS(parse_tolerance_overrides({"oops"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_tolerance_overrides({"=3"}), std::invalid_argument);

  Report rep("demo", json::object());
  rep.set_tolerance("identity", 1e-8);
  CHECK(rep.tolerance("identity", 1e-10) == 1e-8);
  CHECK(rep.tolerance("missing", 1e-10) == 1e-10);
}

TEST_CASE("atomic write lands complete files") {
  std::string path = "test_report_tmp.json";
  write_file_atomic(path, "{\"x\": 1}\n");
  std::ifstream is(path);
  std::string content((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(content == "{\"x\": 1}\n");
  std::remove(path.c_str());
}
