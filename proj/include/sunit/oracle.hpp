#pragma once

// Deliberately naive ground truth: exhaustive S-unit enumeration and plain
// triple loops, sharing no enumeration code with the pipelines.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sunit/arith.hpp"
#include "sunit/smooth.hpp"

namespace sunit {

inline constexpr std::uint64_t kDefaultEffortCap = 1'000'000'000;

struct OracleResult {
  std::string query;
  std::vector<std::vector<Int>> solutions;  // sorted, no duplicates
  Int count = 0;
  std::uint64_t effort = 0;                 // elementary steps spent
};

// Every S-unit in [1, bound], sorted. Throws ResourceLimit past the effort cap.
std::vector<Int> sunits_upto(const PrimeSet& S, Int bound, std::uint64_t effort_cap = kDefaultEffortCap);

// Pairs (A, A + 1), A >= 1, both S-units, A + 1 <= bound.
OracleResult brute_sunit_pairs(const PrimeSet& S, Int bound, std::uint64_t effort_cap = kDefaultEffortCap);

// #{(a, c, w) : 1 <= w <= W, c w == shift (mod a)} by a plain triple loop.
OracleResult brute_linear_count(std::span<const Int> A, std::span<const Int> C, u64 W, Int shift,
                                std::uint64_t effort_cap = kDefaultEffortCap);
OracleResult brute_linear_count(const SmoothSet& A, const SmoothSet& C, u64 W, Int shift,
                                std::uint64_t effort_cap = kDefaultEffortCap);

// Coprime (a, b, c) with a <= b, a + b = c <= bound, abc an S-unit.
OracleResult brute_prop1_triples(const PrimeSet& S, Int bound, std::uint64_t effort_cap = kDefaultEffortCap);

}  // namespace sunit
