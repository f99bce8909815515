#pragma once

// Squarefree smooth-number enumeration over explicit prime sets, plus the
// counting-bound audit for those sets.

#include <cstdint>
#include <vector>

#include "sunit/arith.hpp"

namespace sunit {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

struct SmoothSet {
  PrimeSet source;
  Int lo = 1;
  Int hi = 1;
  std::vector<FactoredInt> members;  // strictly increasing by value

  std::size_t size() const { return members.size(); }
  std::vector<Int> values() const;
};

// Wraps explicit values (each >= 1): factorizes, sorts, drops duplicates;
// the source set is the union of their primes.
SmoothSet make_smooth_set(std::vector<Int> values);

// Every squarefree product of a subset of T lying in [lo, hi]; 1 (the empty
// product) is included only when lo <= 1. Depth-first over the sorted primes,
// pruned once the running product passes hi. Throws EnumerationCap when more
// than `cap` products <= hi would be visited.
SmoothSet enumerate_squarefree_smooth(const PrimeSet& T, Int lo, Int hi,
                                      std::uint64_t cap = kDefaultEnumerationCap);

struct Lemma2Bound {
  double value = 0;  // x^{b/a + 1/(2a log log x)} / (6 log^{b+1} x)
  double b = 0;
  long k = 0;        // floor(log x / (a log log x))
};

Lemma2Bound lemma2_lower_bound(double x, double a, double b);
// b derived from #T = log^{b+1} x / (a log log x).
Lemma2Bound lemma2_lower_bound_from_count(double x, double a, std::uint64_t t_count);

struct BinomialChain {
  Int lhs = 0;      // C(t_count, k), exact
  double rhs = 0;   // (t_count/k)^k e^{k/2} / (3 sqrt k)
  bool holds = false;
};

BinomialChain binomial_chain_check(std::uint64_t t_count, std::uint64_t k);

// Round-robin partition of the primes in [lo, hi] into m sets.
std::vector<PrimeSet> split_disjoint_prime_sets(u64 lo, u64 hi, std::size_t m);

}  // namespace sunit
