#include <algorithm>
#include <map>
#include <set>

#include "brute.hpp"
#include "doctest.h"
#include "sunit/errors.hpp"
#include "sunit/oracle.hpp"
#include "sunit/pipelines.hpp"

using namespace sunit;

namespace {

HarvestConfig micro(Int W) {
  HarvestConfig c;
  c.W = W;
  return c;
}

PrimeSet primes_of(const std::vector<Int>& v) {
  std::vector<u64> ps;
  for (Int x : v)
    for (const auto& pp : factorize(abs_int(x)).factors) ps.push_back(pp.prime);
  return PrimeSet::from_unsorted(ps);
}

}  // namespace

TEST_CASE("thm1 micro harvest") {
  const std::vector<Int> A{7}, C{4};
  const auto r = thm1_from_sets(A, C, primes_of({7, 4}), micro(5));
  CHECK(r.popular.key == std::vector<Int>{1, 2});
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].values == std::vector<Int>{7, 8});
  CHECK(r.solutions[0].source == std::vector<Int>{7, 4, 1, 2});
  CHECK(r.S == PrimeSet({2, 7}));
}

TEST_CASE("thm2 micro harvests") {
  std::vector<Int> A{5}, B{2}, C{3};
  CHECK_THROWS_AS(thm2_from_sets(A, B, C, PrimeSet({2, 3, 5}), micro(4)), EmptyHarvest);

  B = {4};
  auto cfg = micro(10);
  cfg.coprime_filter = false;
  const auto r = thm2_from_sets(A, B, C, PrimeSet({2, 3, 5}), cfg);
  CHECK(r.popular.key == std::vector<Int>{2, 5});
  CHECK(r.bucket_stats.bucket_count == 2);
  CHECK(r.bucket_stats.total_hits == 2);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].values == std::vector<Int>{10, 4, 15});
  // With the filter, gcd(b + 1, a) = 5 removes the only b.
  CHECK_THROWS_AS(thm2_from_sets(A, B, C, PrimeSet({2, 3, 5}), micro(10)), EmptyHarvest);
}

TEST_CASE("prop1 micro harvest") {
  const auto r = prop1_run(30, PrimeSet({2}), PrimeSet({3}), PrimeSet({5}));
  CHECK(r.popular.key == std::vector<Int>{1, 1, -1});
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].values == std::vector<Int>{2, 3, -5});
  CHECK(normalize_prop1(r.solutions[0].values) == std::vector<Int>{2, 3, 5});
  CHECK(r.S == PrimeSet({2, 3, 5}));
}

TEST_CASE("popular bucket selection") {
  std::vector<SolutionBucket> b{{{3, 1}, {}, 2}, {{1, 9}, {}, 2}, {{0, 0}, {}, 1}};
  CHECK(popular_bucket(b).key == std::vector<Int>{1, 9});
  b.push_back({{5, 5}, {}, 3});
  CHECK(popular_bucket(b).key == std::vector<Int>{5, 5});
  std::vector<SolutionBucket> empty{{{1, 1}, {}, 0}};
  CHECK_THROWS_AS(popular_bucket(empty), EmptyHarvest);
  CHECK_THROWS_AS(popular_bucket(std::vector<SolutionBucket>{}), EmptyHarvest);
}

TEST_CASE("verify_sunit_solution") {
  const PrimeSet S({2, 3});
  CHECK(verify_sunit_solution(std::vector<Int>{8, 9}, Equation::thm1, S));
  CHECK_FALSE(verify_sunit_solution(std::vector<Int>{9, 8}, Equation::thm1, S));
  CHECK_FALSE(verify_sunit_solution(std::vector<Int>{4, 5}, Equation::thm1, S));
  CHECK(verify_sunit_solution(std::vector<Int>{1, 2}, Equation::thm1, S));
  CHECK(verify_sunit_solution(std::vector<Int>{2, 6, 9}, Equation::thm2, S));
  CHECK_FALSE(verify_sunit_solution(std::vector<Int>{2, 6, 10}, Equation::thm2, S));
  CHECK(verify_sunit_solution(std::vector<Int>{1, 8, -9}, Equation::prop1, S));
  CHECK_FALSE(verify_sunit_solution(std::vector<Int>{2, 4, -6}, Equation::prop1, S));
  CHECK_FALSE(verify_sunit_solution(std::vector<Int>{0, 1, -1}, Equation::prop1, S));
  CHECK(normalize_prop1(std::vector<Int>{-3, 1, 2}) == std::vector<Int>{1, 2, 3});
  CHECK(normalize_prop1(std::vector<Int>{5, -8, 3}) == std::vector<Int>{3, 5, 8});
}

TEST_CASE("thm1 explicit sets agree with the oracle") {
  const auto A = make_smooth_set({6, 10, 14, 15, 21, 35}).values();
  const auto C = make_smooth_set({11, 13, 22, 26, 33, 39, 143}).values();
  auto cfg = micro(30);
  const auto r = thm1_from_sets(A, C, primes_of({2, 3, 5, 7, 11, 13}), cfg);
  // The bucket tally matches a direct count of (a, c, w) with u != 0.
  Int hits = 0;
  for (Int a : A)
    for (Int c : C)
      for (Int w = 1; w <= 30; ++w)
        if ((c * w - 1) % a == 0 && c * w - 1 != 0) ++hits;
  CHECK(static_cast<Int>(r.bucket_stats.total_hits) == hits);
  CHECK(r.bucket_stats.max_load >= r.bucket_stats.pigeonhole_floor);
  Int maxC = 0;
  for (const auto& s : r.solutions) maxC = std::max(maxC, s.values[1]);
  const auto oracle = brute_sunit_pairs(r.S, maxC);
  const std::set<std::vector<Int>> truth(oracle.solutions.begin(), oracle.solutions.end());
  for (const auto& s : r.solutions) CHECK(truth.count(s.values) == 1);
}

TEST_CASE("thread count does not change the harvest") {
  HarvestConfig cfg;
  cfg.equation = Equation::prop1;
  cfg.X = 2000;
  cfg.T1 = PrimeSet({2, 7, 17});
  cfg.T2 = PrimeSet({3, 11, 19});
  cfg.T3 = PrimeSet({5, 13, 23});
  const auto one = prop1_run(cfg);
  cfg.threads = 4;
  const auto four = prop1_run(cfg);
  CHECK(one.solutions == four.solutions);
  CHECK(one.popular.key == four.popular.key);
  CHECK(one.audit == four.audit);
  Int maxv = 0;
  for (const auto& s : one.solutions) maxv = std::max(maxv, normalize_prop1(s.values)[2]);
  const auto oracle = brute_prop1_triples(one.S, maxv);
  const std::set<std::vector<Int>> truth(oracle.solutions.begin(), oracle.solutions.end());
  for (const auto& s : one.solutions) {
    CHECK(verify_sunit_solution(s.values, Equation::prop1, one.S));
    CHECK(truth.count(normalize_prop1(s.values)) == 1);
  }
}

TEST_CASE("validation") {
  HarvestConfig cfg;
  cfg.equation = Equation::thm1;
  cfg.X = 1000;
  cfg.Z = 100;
  cfg.W = 200;
  cfg.Q = 10;
  cfg.R = 100;
  cfg.T1 = PrimeSet({2});
  cfg.T2 = PrimeSet({3});
  cfg.T3 = PrimeSet({5});
  try {
    validate(cfg);
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.inequality() == "W <= min(X, Z)");
  }
  cfg.W = 50;
  CHECK_NOTHROW(validate(cfg));
  cfg.R = 101;
  CHECK_THROWS_AS(validate(cfg), ConstraintViolation);
  cfg.R = 100;
  cfg.T2 = PrimeSet({2, 3});
  CHECK_THROWS_AS(validate(cfg), ConstraintViolation);
  cfg.T2 = PrimeSet({3});
  cfg.delta = 1.0;
  CHECK_THROWS_AS(validate(cfg), ConstraintViolation);
}

TEST_CASE("duplicate products are rejected") {
  HarvestConfig cfg;
  cfg.equation = Equation::thm1;
  cfg.X = 10000;
  cfg.Z = 100;
  cfg.W = 50;
  cfg.Q = 10;
  cfg.R = 100;
  cfg.delta = 0.9;
  // Overlapping sets are refused before any product is formed.
  cfg.T1 = PrimeSet({2, 3});
  cfg.T2 = PrimeSet({3, 5});
  cfg.T3 = PrimeSet({7});
  CHECK_THROWS_AS(thm1_run(cfg), ConstraintViolation);
}

TEST_CASE("pair collision statistics") {
  const std::vector<Int> C{2, 3, 5, 6};
  auto s = pair_collision_stats(C, CollisionMode::difference);
  CHECK(s.max_multiplicity == 2);
  CHECK(s.witness == 1);
  const std::vector<Int> D{1, 2, 3};
  s = pair_collision_stats(D, CollisionMode::product_difference);
  // Direct count over ordered quadruples.
  std::map<Int, std::uint64_t> cnt;
  for (Int a : D)
    for (Int b : D)
      for (Int c : D)
        for (Int d : D)
          if (a * b != c * d) ++cnt[a * b - c * d];
  std::uint64_t mx = 0;
  for (const auto& [k, v] : cnt) mx = std::max(mx, v);
  CHECK(s.max_multiplicity == mx);
  CHECK(cnt[s.witness] == mx);
}
