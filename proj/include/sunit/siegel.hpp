#pragma once

// Small integer solutions of a single linear form  sum alpha_i z_i = 0.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sunit {

struct SmallSolution {
  std::vector<std::int64_t> z;
  double bound = 0;  // (nB)^{1/(n-1)}
  friend bool operator==(const SmallSolution&, const SmallSolution&) = default;
};

enum class SiegelPath {
  automatic,  // fast path for n == 3, collision scan otherwise
  collision,  // pigeonhole collision scan over y in [0, C]^n
  fast3,      // n == 3 only: enumerate (z1, z2), solve for z3
};

// floor((nB)^{1/(n-1)}), computed exactly.
std::int64_t siegel_box(std::size_t n, std::int64_t B);

// Nonzero z with sum alpha_i z_i = 0 and max |z_i| <= (nB)^{1/(n-1)}.
// The collision path returns y - y' for the first repeated value of the form
// in the lexicographic scan of y in [0, C]^n, C = siegel_box(n, B).
SmallSolution siegel_small_solution(std::span<const std::int64_t> alpha, std::int64_t B,
                                    SiegelPath path = SiegelPath::automatic);

// Solution with every z_i != 0 and max |z_i| <= cap, lexicographically smallest
// by (|z_1|, ..., |z_n|) and then by sign pattern (+ before -).
std::optional<SmallSolution> siegel_nonzero_coords(std::span<const std::int64_t> alpha, std::int64_t B,
                                                   double cap);

}  // namespace sunit
