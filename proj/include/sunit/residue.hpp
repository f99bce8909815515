#pragma once

// Residue stepping: the solutions w >= 1 of c*w == s (mod a) form one
// arithmetic progression, so counts and walks never touch non-solutions.

#include <optional>

#include "sunit/arith.hpp"

namespace sunit {

struct ResidueProgression {
  Int first = 0;  // smallest solution >= 1
  Int step = 1;   // a / gcd(c, a)
};

// nullopt when gcd(c, a) does not divide s. Requires a >= 1 and a < 2^64.
std::optional<ResidueProgression> residue_progression(Int c, Int s, Int a);

// Number of terms of the progression in [1, W].
inline Int progression_count(const ResidueProgression& p, Int W) {
  return W < p.first ? 0 : (W - p.first) / p.step + 1;
}

}  // namespace sunit
