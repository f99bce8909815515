#pragma once

// Exact integer arithmetic, primes, and factorization over restricted prime sets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sunit {

// Exact integer type for S-unit components and products such as c*w, a*u, q*r.
// Every product that could leave the 64-bit range goes through checked_mul.
using Int = __int128;
using u64 = std::uint64_t;

std::string to_string(Int v);
Int parse_int(std::string_view text);

Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);
inline Int abs_int(Int v) { return v < 0 ? -v : v; }
Int gcd_int(Int a, Int b);
bool fits_u64(Int v);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

class PrimeSet {
 public:
  PrimeSet() = default;
  // Requires a strictly increasing list of primes; throws DomainError otherwise.
  explicit PrimeSet(std::vector<u64> primes);
  // Sorts and deduplicates first.
  static PrimeSet from_unsorted(std::vector<u64> primes);

  std::span<const u64> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  bool contains(u64 p) const;
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }
  u64 operator[](std::size_t i) const { return primes_[i]; }

  PrimeSet unite(const PrimeSet& other) const;
  bool disjoint(const PrimeSet& other) const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  std::vector<u64> primes_;
};

struct PrimePower {
  u64 prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactoredInt {
  Int value = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  bool squarefree() const;
  PrimeSet support() const;
  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;
};

// Primes p with lo <= p <= hi (segmented sieve). hi < 2 yields the empty set.
PrimeSet primes_in_range(u64 lo, u64 hi);

// Factorization of n >= 1 if every prime factor lies in T, nullopt otherwise.
std::optional<FactoredInt> factor_over(Int n, const PrimeSet& T);

// c^{-1} mod a in [1, a-1] (or 0 when a == 1). Throws NotInvertible if gcd(c, a) > 1.
Int mod_inverse(Int c, Int a);

// Complete factorization of |n| >= 1 (trial division + Pollard-Brent).
// Throws FactorizationLimit when |n| exceeds the 64-bit range.
FactoredInt factorize(Int n);

struct Multiplicative {
  u64 phi = 1;
  int mu = 1;
  u64 divisors = 1;
  friend bool operator==(const Multiplicative&, const Multiplicative&) = default;
};

Multiplicative multiplicative_functions(u64 n);
Multiplicative multiplicative_functions(const FactoredInt& f);

// Divisors of a squarefree-or-not n, sorted.
std::vector<u64> divisors(u64 n);

}  // namespace sunit
