#include "sunit/bounds.hpp"

#include <cmath>

#include "sunit/errors.hpp"
#include "sunit/exponents.hpp"

namespace sunit {

std::string to_string(Equation e) {
  switch (e) {
    case Equation::prop1: return "prop1";
    case Equation::thm1: return "thm1";
    case Equation::thm2: return "thm2";
  }
  return "?";
}

Equation parse_equation(const std::string& s) {
  if (s == "prop1") return Equation::prop1;
  if (s == "thm1") return Equation::thm1;
  if (s == "thm2") return Equation::thm2;
  throw DomainError("unknown equation '" + s + "'");
}

BoundComparison compare_bounds(std::uint64_t s, Equation e, double epsilon, std::uint64_t observed) {
  if (s < 2) throw DomainError("compare_bounds: s must be >= 2");
  BoundComparison b;
  b.s = s;
  b.epsilon = epsilon;
  b.observed = observed;
  const double sd = static_cast<double>(s);
  switch (e) {
    case Equation::prop1: b.formula = std::exp(std::sqrt(sd / std::log(sd)) / (2.0 * std::sqrt(2.0))); break;
    case Equation::thm1: b.formula = std::exp(std::pow(sd, 1.0 / 6.0 - epsilon)); break;
    case Equation::thm2: b.formula = std::exp(std::pow(sd, lambda0() - epsilon)); break;
  }
  b.ratio = observed == 0 ? 0.0 : static_cast<double>(observed) / b.formula;
  b.flagged = observed == 0;
  b.label = "asymptotic formula, not an acceptance gate at desk scale";
  return b;
}

}  // namespace sunit
