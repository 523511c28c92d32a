#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "mvrel/verify.hpp"

using namespace mvrel;
using namespace mvrel::verify;

namespace {

/// Key structure of a report: objects keep their keys, arrays keep one
/// schema per element, leaves become type names.
json schema(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = schema(v);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(schema(v));
    return out;
  }
  if (j.is_number()) return "number";
  if (j.is_boolean()) return "boolean";
  if (j.is_string()) return "string";
  return "null";
}

VerifyConfig small(int trials = 10) {
  VerifyConfig c;
  c.trials = trials;
  c.max_dim = 6;
  return c;
}

}  // namespace

TEST_CASE("registry") {
  const auto tags = suite_tags();
  CHECK(tags.size() == registry().size());
  for (const char* t : {"structure", "adjoint", "greville", "ptak", "greville_pinv", "inverse_system",
                        "decomposition", "compression", "gamma", "orthogonalize", "ando_split", "debranges", "wlss",
                        "pinv", "continuity"})
    CHECK(std::find(tags.begin(), tags.end(), t) != tags.end());
  CHECK_THROWS_AS(find_suite("no_such_suite"), io::ParseError);
  VerifyConfig c = small();
  c.suites = {"no_such_suite"};
  CHECK_THROWS_AS(run(c), io::ParseError);
}

TEST_CASE("serial and parallel runners agree") {
  for (ScalarKind k : {ScalarKind::real, ScalarKind::complex}) {
    VerifyConfig c = small(12);
    c.scalar = k;
    const json s = run(c, Runner::serial);
    const json p = run(c, Runner::parallel);
    CHECK(s.dump() == p.dump());
    // 12 trials cannot meet the compression coverage requirement, so count trials only
    for (const json& suite : s.at("suites")) CHECK_MESSAGE(suite.at("failed") == 0, suite.at("tag"));
  }
}

TEST_CASE("reports are a pure function of the config") {
  VerifyConfig c = small(8);
  CHECK(run(c).dump() == run(c).dump());
  VerifyConfig d = c;
  d.seed = 1;
  CHECK(run(c).dump() != run(d).dump());
  // a trial does not depend on which other suites are selected
  VerifyConfig one = c;
  one.suites = {"ptak"};
  const json a = run(one);
  const json all = run(c);
  json b;
  for (const json& s : all.at("suites"))
    if (s.at("tag") == "ptak") b = s;
  CHECK(a.at("suites").at(0) == b);
  CHECK(make_instance(find_suite("ptak"), c, 3) == make_instance(find_suite("ptak"), c, 3));
  CHECK(make_instance(find_suite("ptak"), c, 3) != make_instance(find_suite("ptak"), c, 4));
}

TEST_CASE("failure dumps replay exactly") {
  // an unattainable tolerance makes every residual check fail
  VerifyConfig c = small(6);
  c.tol = 1e-300;
  c.suites = {"structure", "wlss"};
  const json report = run(c, Runner::serial);
  CHECK_FALSE(report_passed(report));
  int replayed = 0;
  for (const json& s : report.at("suites")) {
    CHECK(s.at("status") == "fail");
    for (const json& dump : s.at("failures")) {
      // round trip through text, as a dump file would be
      const json again = replay(json::parse(dump.dump()), c);
      CHECK_FALSE(again.at("pass").get<bool>());
      CHECK(again.at("detail") == dump.at("detail"));
      CHECK(again.at("index") == dump.at("index"));
      ++replayed;
    }
  }
  CHECK(replayed > 0);
  // the same dump passes at the default tolerance
  const json dump = report.at("suites").at(0).at("failures").at(0);
  CHECK(replay(dump, small()).at("pass").get<bool>());
  CHECK_THROWS_AS(replay(json::object(), c), io::ParseError);
}

TEST_CASE("complex instances carry their scalar kind") {
  VerifyConfig c = small(2);
  c.scalar = ScalarKind::complex;
  const json inst = make_instance(find_suite("adjoint"), c, 0);
  CHECK(inst.at("scalar") == "complex");
  const json r = replay({{"suite", "adjoint"}, {"instance", inst}}, small());
  CHECK(r.at("pass").get<bool>());
}

TEST_CASE("suite requirements") {
  VerifyConfig c = small(5);
  c.suites = {"compression"};
  const json r = run(c);
  // 5 trials cannot reach 100 satisfying and 100 violating triples
  CHECK(r.at("suites").at(0).at("requirements_failed").size() > 0);
  CHECK(r.at("suites").at(0).at("failed") == 0);
  CHECK_FALSE(report_passed(r));
}

TEST_CASE("report schema matches the golden file") {
  VerifyConfig c;
  c.trials = 2;
  c.suites = {"structure", "compression"};
  const json report = run(c);
  std::ifstream in(std::string(MVREL_GOLDEN_DIR) + "/report_schema.json");
  REQUIRE(in);
  const json golden = json::parse(in);
  CHECK(schema(report) == golden);
}
