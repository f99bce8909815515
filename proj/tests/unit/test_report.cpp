#include <sstream>

#include "doctest.h"
#include "sunit/errors.hpp"
#include "sunit/report.hpp"

using namespace sunit;

namespace {

RunConfig rc_of(const std::string& sub, KeyValues params) {
  RunConfig rc;
  rc.subcommand = sub;
  rc.params = std::move(params);
  return rc;
}

}  // namespace

TEST_CASE("integer json encoding") {
  CHECK(int_to_json(42) == json(42));
  const Int big = static_cast<Int>(1) << 80;
  CHECK(int_to_json(big).is_string());
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_from_json(int_to_json(-7)) == -7);
}

TEST_CASE("key=value parsing") {
  std::istringstream in("# comment\nX = 1000\n\nalpha=0.1 # trailing\n");
  const auto kv = parse_key_values(in);
  CHECK(kv.at("X") == "1000");
  CHECK(kv.at("alpha") == "0.1");
  std::istringstream dup("X=1\nX=2\n");
  try {
    parse_key_values(dup);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "X");
  }
  std::istringstream bad("just words\n");
  CHECK_THROWS_AS(parse_key_values(bad), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("unknown keys and subcommands") {
  auto r = run(rc_of("prop1", {{"x", "30"}, {"T1", "2"}, {"T2", "3"}, {"T3", "5"}, {"bogus", "1"}}));
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.report["error"]["key"] == "bogus");
  r = run(rc_of("thm7", {}));
  CHECK(r.exit_code == kExitUsage);
  CHECK_THROWS_AS(allowed_keys("nope"), ConfigError);
}

TEST_CASE("harvest config derivation") {
  const auto cfg = harvest_config_from(rc_of(
      "thm1", {{"X", "1000000"}, {"alpha", "0.16666666666666666"}, {"delta", "0.75"}, {"primes_lo", "2"}, {"primes_hi", "113"}}));
  CHECK(cfg.Z == 100);
  CHECK(cfg.W == 4);
  CHECK(cfg.Q == 3);
  CHECK(cfg.R == 333333);
  CHECK(cfg.T1.disjoint(cfg.T2));
  auto r = run(rc_of("thm1", {{"X", "1000000"}, {"alpha", "0.3"}, {"primes_hi", "113"}}));
  CHECK(r.exit_code == kExitConstraint);
  CHECK(r.report["error"]["inequality"] == "alpha <= 1/6");
  r = run(rc_of("thm1", {{"X", "1000000"}, {"primes_hi", "113"}}));
  CHECK(r.exit_code == kExitUsage);
}

TEST_CASE("exit codes for resource limits and empty harvests") {
  RunConfig rc = rc_of("prop1", {{"x", "20000"}, {"primes_hi", "47"}});
  rc.cap = 5;
  CHECK(run(rc).exit_code == kExitResource);
  auto r = run(rc_of("thm1", {{"X", "1000000"}, {"alpha", "0.16666666666666666"}, {"delta", "0.6"},
                               {"primes_hi", "113"}}));
  CHECK(r.exit_code == kExitEmptyHarvest);
  CHECK(r.report["error"]["kind"] == "EmptyHarvest");
}

TEST_CASE("report round trip and csv re-verification") {
  RunConfig rc = rc_of("prop1", {{"x", "2000"}, {"primes_hi", "29"}});
  const auto r = run(rc);
  REQUIRE(r.exit_code == kExitOk);
  const auto& h = r.report["payload"]["harvest"];
  const auto rep = harvest_report_from_json(h);
  CHECK(to_json(rep) == h);
  std::istringstream csv(r.csv);
  const auto rows = read_solutions_csv(csv, Equation::prop1);
  CHECK(rows == rep.solutions);
  for (const auto& row : rows) CHECK(verify_sunit_solution(row.values, Equation::prop1, rep.S));
  std::istringstream wrong(r.csv);
  CHECK_THROWS_AS(read_solutions_csv(wrong, Equation::thm1), DomainError);
}

TEST_CASE("runs are reproducible across thread counts") {
  RunConfig rc = rc_of("prop1", {{"x", "3000"}, {"primes_hi", "31"}});
  const auto a = run(rc);
  rc.threads = 3;
  const auto b = run(rc);
  CHECK(a.report.contains("runtime"));
  CHECK_FALSE(comparable(a.report).contains("runtime"));
  CHECK(comparable(a.report) == comparable(b.report));
  CHECK(a.csv == b.csv);
}

TEST_CASE("non-harvest subcommands produce payloads") {
  CHECK(run(rc_of("exponents", {{"theorem", "thm2"}, {"variant", "conditional"}, {"alpha", "0.52"}})).exit_code == 0);
  CHECK(run(rc_of("smooth", {{"primes", "2,3,5"}, {"lo", "2"}, {"hi", "30"}})).exit_code == 0);
  CHECK(run(rc_of("siegel", {{"alpha", "3,5,7"}, {"B", "7"}})).exit_code == 0);
  CHECK(run(rc_of("oracle", {{"query", "sunit_pairs"}, {"primes", "2,3"}, {"bound", "100"}})).exit_code == 0);
  CHECK(run(rc_of("verify-charsums", {{"qmax", "30"}})).exit_code == 0);
  CHECK(run(rc_of("verify-sieve", {{"trials", "3"}})).exit_code == 0);
  CHECK(run(rc_of("verify-circle", {{"A", "7"}, {"C", "4"}, {"mu", "0.2857142857142857"}})).exit_code == 0);
}
