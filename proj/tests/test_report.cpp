#include <regex>
#include <sstream>

#include "doctest.h"
#include "fracyam/report.hpp"
#include "fracyam/suites.hpp"

using namespace fracyam;

namespace {

std::vector<VerificationReport> sample_reports() {
  VerificationReport a = VerificationReport::scalar("alpha.check", 1.0, 1.0, 1e-6);
  a.params["n"] = "3";
  a.params["gamma"] = "0.5";
  VerificationReport b;
  b.check_id = "beta.check";
  b.computed = {0.5, 0.25};
  b.tolerance = 0.1;
  b.status = CheckStatus::inconclusive;
  return {a, b};
}

std::string strip_runtime(std::string s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\": [0-9]+"),
                            "\"runtime_ms\": 0");
}

}  // namespace

TEST_CASE("json round trip") {
  const auto reports = sample_reports();
  std::ostringstream os;
  emit(reports, EmitFormat::json, os);
  const auto back = parse_json_reports(os.str());
  REQUIRE(back.size() == reports.size());
  CHECK(back[0].check_id == "alpha.check");
  CHECK(back[0].params.at("gamma") == "0.5");
  CHECK(back[0].computed == reports[0].computed);
  CHECK(back[1].reference.empty());
  CHECK(back[1].status == CheckStatus::inconclusive);
}

TEST_CASE("csv has a constant column count") {
  std::ostringstream os;
  emit(sample_reports(), EmitFormat::csv, os);
  std::istringstream is(os.str());
  std::string line;
  int expected = -1;
  while (std::getline(is, line)) {
    const long commas = std::count(line.begin(), line.end(), ',');
    if (expected < 0) expected = static_cast<int>(commas);
    CHECK(commas == expected);
  }
}

TEST_CASE("empty report list emits a valid empty array") {
  std::ostringstream os;
  emit({}, EmitFormat::json, os);
  CHECK(parse_json_reports(os.str()).empty());
}

TEST_CASE("constants suite passes and is deterministic") {
  RunConfig cfg;
  cfg.fast = true;
  auto r1 = run_suite("constants", cfg);
  auto r2 = run_suite("constants", cfg);
  std::ostringstream o1, o2;
  emit(r1, EmitFormat::json, o1);
  emit(r2, EmitFormat::json, o2);
  CHECK(strip_runtime(o1.str()) == strip_runtime(o2.str()));
  for (const auto& r : r1) CHECK(r.status == CheckStatus::pass);
  CHECK_THROWS_AS(run_suite("nope", cfg), std::invalid_argument);
}
