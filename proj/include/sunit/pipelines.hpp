#pragma once

// The three harvest pipelines: almost-solutions are bucketed by their shared
// key, the most popular bucket fixes the extra primes, and its hits become
// S-unit solutions.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sunit/arith.hpp"
#include "sunit/bounds.hpp"
#include "sunit/smooth.hpp"

namespace sunit {

inline constexpr std::uint64_t kDefaultHitCap = 50'000'000;

struct HarvestConfig {
  Equation equation = Equation::thm1;
  // thm1: T1 -> Q-set, T2 -> R-set, T3 -> A.  thm2: T1 -> C, T2 -> B, T3 -> A.  prop1: T_i -> A_i.
  PrimeSet T1, T2, T3;
  Int X = 0;  // prop1: the bound x
  Int Y = 0;
  Int Z = 0;
  Int W = 0;
  Int Q = 0;
  Int R = 0;
  double delta = 0.5;
  double epsilon = 0.01;
  bool coprime_filter = true;  // thm2: keep only b with gcd(b + 1, a) = 1
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t hit_cap = kDefaultHitCap;  // hits (thm1, thm2) or triples (prop1)
  unsigned threads = 1;
};

// Throws ConstraintViolation naming the failed condition.
void validate(const HarvestConfig& cfg);

struct SolutionBucket {
  std::vector<Int> key;                  // (u, w) or (z1, z2, z3)
  std::vector<std::vector<Int>> hits;    // source tuples, sorted
  std::uint64_t count = 0;
};

struct BucketStats {
  std::uint64_t total_hits = 0;
  std::uint64_t bucket_count = 0;
  std::uint64_t max_load = 0;
  std::uint64_t pigeonhole_floor = 0;  // ceil(total / nonempty buckets)
};

struct SolutionRow {
  std::vector<Int> values;  // (A, C) or (A, B, C)
  std::vector<Int> source;  // thm1: a c u w; thm2: a b c u w; prop1: alpha1..3 z1..3
  friend bool operator==(const SolutionRow&, const SolutionRow&) = default;
};

struct HarvestReport {
  Equation equation = Equation::thm1;
  PrimeSet S_prime;
  PrimeSet S;
  SolutionBucket popular;
  std::vector<SolutionRow> solutions;  // verified, deduplicated, sorted by values
  BucketStats bucket_stats;
  BoundComparison bound_comparison;
  std::map<std::string, Int> audit;
  std::map<std::string, double> metrics;
};

HarvestReport thm1_run(const HarvestConfig& cfg);
HarvestReport thm2_run(const HarvestConfig& cfg);
HarvestReport prop1_run(const HarvestConfig& cfg);

// The thm1 / thm2 harvest over explicit sets, using W, epsilon, coprime_filter,
// hit_cap and threads from cfg. No scale validation.
HarvestReport thm1_from_sets(std::span<const Int> A, std::span<const Int> C, const PrimeSet& S_prime,
                             const HarvestConfig& cfg);
HarvestReport thm2_from_sets(std::span<const Int> A, std::span<const Int> B, std::span<const Int> C,
                             const PrimeSet& S_prime, const HarvestConfig& cfg);
HarvestReport prop1_run(Int x, const PrimeSet& T1, const PrimeSet& T2, const PrimeSet& T3, unsigned threads = 1);
HarvestReport harvest(const HarvestConfig& cfg);

// Maximal count, ties to the lexicographically smallest key. Throws EmptyHarvest
// when every bucket is empty.
SolutionBucket popular_bucket(std::span<const SolutionBucket> buckets);

// thm1: A + 1 = C; thm2: A + B + 1 = C; prop1: A + B + C = 0. Every component
// must factor over S (|x| = 1 admitted).
bool verify_sunit_solution(std::span<const Int> tuple, Equation e, const PrimeSet& S);

// (a, b, c) with a <= b and a + b = c from any nonzero triple with A + B + C = 0.
std::vector<Int> normalize_prop1(std::span<const Int> tuple);

enum class CollisionMode { difference, product_difference };

struct CollisionStats {
  std::uint64_t max_multiplicity = 0;
  Int witness = 0;  // smallest |n| among the maxima, positive first
};

// Max over n != 0 of #{(c, c') : c - c' = n} or #{(c, c', c'', c''') : cc' - c''c''' = n},
// over ordered tuples.
CollisionStats pair_collision_stats(std::span<const Int> C, CollisionMode mode,
                                    std::uint64_t effort_cap = 1'000'000'000);

}  // namespace sunit
