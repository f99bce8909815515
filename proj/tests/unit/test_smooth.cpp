#include <cmath>
#include <numbers>

#include "brute.hpp"
#include "doctest.h"
#include "sunit/errors.hpp"
#include "sunit/smooth.hpp"

using namespace sunit;

TEST_CASE("enumerate_squarefree_smooth examples") {
  CHECK(enumerate_squarefree_smooth(PrimeSet({2, 3, 5}), 2, 30).values() == std::vector<Int>{2, 3, 5, 6, 10, 15, 30});
  CHECK(enumerate_squarefree_smooth(PrimeSet({7}), 1, 6).values() == std::vector<Int>{1});
  CHECK(enumerate_squarefree_smooth(PrimeSet({2, 3}), 5, 6).values() == std::vector<Int>{6});
  CHECK_THROWS_AS(enumerate_squarefree_smooth(PrimeSet({2}), 5, 4), DomainError);
}

TEST_CASE("smooth enumeration matches a filter over the whole range") {
  const PrimeSet T({2, 5, 11, 13, 29});
  const std::vector<u64> Tv(T.begin(), T.end());
  const auto s = enumerate_squarefree_smooth(T, 7, 5000);
  std::vector<Int> expect;
  for (Int n = 7; n <= 5000; ++n)
    if (brute::squarefree(static_cast<u64>(n)) && brute::smooth_over(n, Tv)) expect.push_back(n);
  CHECK(s.values() == expect);
  for (const auto& m : s.members) {
    CHECK(m.squarefree());
    CHECK(m.support().size() == m.factors.size());
  }
}

TEST_CASE("all 2^#T subsets appear when the range covers the full product") {
  const auto all = primes_in_range(2, 40);
  for (std::size_t k = 1; k <= 12; ++k) {
    const PrimeSet T(std::vector<u64>(all.begin(), all.begin() + static_cast<long>(k)));
    Int prod = 1;
    for (u64 p : T) prod *= p;
    CHECK(enumerate_squarefree_smooth(T, 1, prod).size() == (std::size_t{1} << k));
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_squarefree_smooth(primes_in_range(2, 60), 1, 1'000'000'000, 100), EnumerationCap);
  CHECK_THROWS_AS(enumerate_squarefree_smooth(primes_in_range(2, 60), 1, 1'000'000'000, 100), ResourceLimit);
}

TEST_CASE("lemma2 lower bound values") {
  const auto r = lemma2_lower_bound(1e6, 2, 1);
  CHECK(r.value == doctest::Approx(3.253652037157476).epsilon(1e-12));
  CHECK(r.k == 2);
  CHECK_THROWS_AS(lemma2_lower_bound(std::exp(std::numbers::e), 2, 1), DomainError);
  CHECK_NOTHROW(lemma2_lower_bound(std::exp(std::numbers::e) + 1e-6, 2, 1));
  CHECK_THROWS_AS(lemma2_lower_bound(1e6, 0.5, 1), DomainError);
  const auto d = lemma2_lower_bound_from_count(1e6, 2, 40);
  CHECK(d.b == doctest::Approx(1.0364938811204087).epsilon(1e-12));
  const double L = std::log(1e6);
  CHECK(std::pow(L, d.b + 1) / (2 * std::log(L)) == doctest::Approx(40.0));
}

TEST_CASE("lemma2 count audit on a desk grid") {
  // T = primes up to log^a x; the count must dominate the bound whenever it applies.
  for (double x : {1e4, 1e5, 1e6}) {
    for (double a : {1.0, 1.5, 2.0}) {
      const auto T = primes_in_range(2, static_cast<u64>(std::pow(std::log(x), a)));
      if (T.empty()) continue;
      const auto b = lemma2_lower_bound_from_count(x, a, T.size());
      const auto s = enumerate_squarefree_smooth(T, 1, static_cast<Int>(x));
      CHECK(static_cast<double>(s.size()) >= b.value);
    }
  }
}

TEST_CASE("binomial chain") {
  auto r = binomial_chain_check(20, 5);
  CHECK(r.lhs == 15504);
  CHECK(r.rhs == doctest::Approx(1859.6443908514896));
  CHECK(r.holds);
  r = binomial_chain_check(10, 1);
  CHECK(r.lhs == 10);
  CHECK(r.rhs == doctest::Approx(5.495737569000428));
  r = binomial_chain_check(6, 6);
  CHECK(r.lhs == 1);
  CHECK(r.rhs == doctest::Approx(2.733295370646722));
  CHECK_FALSE(r.holds);
  CHECK_THROWS_AS(binomial_chain_check(3, 4), DomainError);
  CHECK_THROWS_AS(binomial_chain_check(3, 0), DomainError);
  for (u64 k = 1; k <= 10; ++k)
    for (u64 t = 3 * k; t <= 60; ++t) CHECK(binomial_chain_check(t, k).holds);
}

TEST_CASE("split_disjoint_prime_sets") {
  auto s = split_disjoint_prime_sets(2, 13, 2);
  CHECK(s[0] == PrimeSet({2, 5, 11}));
  CHECK(s[1] == PrimeSet({3, 7, 13}));
  s = split_disjoint_prime_sets(2, 3, 2);
  CHECK(s[0] == PrimeSet({2}));
  CHECK(s[1] == PrimeSet({3}));
  CHECK_THROWS_AS(split_disjoint_prime_sets(24, 28, 1), InsufficientPrimes);
  s = split_disjoint_prime_sets(2, 200, 3);
  PrimeSet all;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(s[i].disjoint(s[j]));
    all = all.unite(s[i]);
  }
  CHECK(all == primes_in_range(2, 200));
}

TEST_CASE("make_smooth_set wraps explicit values") {
  const auto s = make_smooth_set({12, 7, 7, 5});
  CHECK(s.values() == std::vector<Int>{5, 7, 12});
  CHECK(s.source == PrimeSet({2, 3, 5, 7}));
  CHECK_THROWS_AS(make_smooth_set({0}), DomainError);
}
