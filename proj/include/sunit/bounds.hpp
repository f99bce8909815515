#pragma once

// The asymptotic solution-count formulas, evaluated at a run's s = #S next to
// what the run actually harvested.

#include <cstdint>
#include <string>

namespace sunit {

enum class Equation { prop1, thm1, thm2 };

std::string to_string(Equation e);
Equation parse_equation(const std::string& s);

struct BoundComparison {
  std::uint64_t s = 0;
  double epsilon = 0;
  double formula = 0;
  std::uint64_t observed = 0;
  double ratio = 0;
  bool flagged = false;  // observed == 0
  std::string label;
};

// prop1: exp(sqrt(s / log s) / (2 sqrt 2)); thm1: exp(s^{1/6 - eps}); thm2: exp(s^{lambda0 - eps}).
BoundComparison compare_bounds(std::uint64_t s, Equation e, double epsilon, std::uint64_t observed);

}  // namespace sunit
