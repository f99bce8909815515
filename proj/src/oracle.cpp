#include "sunit/oracle.hpp"

#include <algorithm>

#include "sunit/errors.hpp"

namespace sunit {

namespace {

void spend(std::uint64_t& effort, std::uint64_t cap, std::uint64_t amount = 1) {
  effort += amount;
  if (effort > cap) throw ResourceLimit("oracle: effort cap of " + std::to_string(cap) + " steps exceeded");
}

void units_rec(std::span<const u64> primes, std::size_t i, Int value, Int bound, std::vector<Int>& out,
               std::uint64_t& effort, std::uint64_t cap) {
  if (i == primes.size()) {
    spend(effort, cap);
    out.push_back(value);
    return;
  }
  const Int p = primes[i];
  for (Int v = value;; v *= p) {
    units_rec(primes, i + 1, v, bound, out, effort, cap);
    if (v > bound / p) break;
  }
}

std::vector<Int> units_with_effort(const PrimeSet& S, Int bound, std::uint64_t& effort, std::uint64_t cap) {
  std::vector<Int> out;
  if (bound < 1) return out;
  units_rec(S.primes(), 0, 1, bound, out, effort, cap);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Int> sunits_upto(const PrimeSet& S, Int bound, std::uint64_t effort_cap) {
  std::uint64_t effort = 0;
  return units_with_effort(S, bound, effort, effort_cap);
}

OracleResult brute_sunit_pairs(const PrimeSet& S, Int bound, std::uint64_t effort_cap) {
  OracleResult r;
  r.query = "sunit_pairs bound=" + to_string(bound);
  const auto units = units_with_effort(S, bound, r.effort, effort_cap);
  for (Int A : units) {
    spend(r.effort, effort_cap);
    if (A + 1 <= bound && std::binary_search(units.begin(), units.end(), A + 1)) r.solutions.push_back({A, A + 1});
  }
  r.count = static_cast<Int>(r.solutions.size());
  return r;
}

OracleResult brute_linear_count(std::span<const Int> A, std::span<const Int> C, u64 W, Int shift,
                                std::uint64_t effort_cap) {
  OracleResult r;
  r.query = "linear_count W=" + std::to_string(W) + " shift=" + to_string(shift);
  const long double work = static_cast<long double>(A.size()) * C.size() * W;
  if (work > static_cast<long double>(effort_cap))
    throw ResourceLimit("oracle: linear count needs more than " + std::to_string(effort_cap) + " steps");
  for (Int a : A) {
    if (a < 1) throw DomainError("brute_linear_count: moduli must be positive");
    for (Int c : C) {
      for (u64 w = 1; w <= W; ++w) {
        if (((c * static_cast<Int>(w) - shift) % a) == 0) ++r.count;
      }
    }
  }
  r.effort = static_cast<std::uint64_t>(work);
  return r;
}

OracleResult brute_linear_count(const SmoothSet& A, const SmoothSet& C, u64 W, Int shift, std::uint64_t effort_cap) {
  const auto a = A.values();
  const auto c = C.values();
  return brute_linear_count(std::span<const Int>(a), std::span<const Int>(c), W, shift, effort_cap);
}

OracleResult brute_prop1_triples(const PrimeSet& S, Int bound, std::uint64_t effort_cap) {
  OracleResult r;
  r.query = "prop1_triples bound=" + to_string(bound);
  const auto units = units_with_effort(S, bound, r.effort, effort_cap);
  for (Int c : units) {
    for (Int a : units) {
      if (2 * a > c) break;
      spend(r.effort, effort_cap);
      const Int b = c - a;
      if (gcd_int(a, b) != 1) continue;
      if (std::binary_search(units.begin(), units.end(), b)) r.solutions.push_back({a, b, c});
    }
  }
  std::sort(r.solutions.begin(), r.solutions.end());
  r.count = static_cast<Int>(r.solutions.size());
  return r;
}

}  // namespace sunit
