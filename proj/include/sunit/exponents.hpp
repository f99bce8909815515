#pragma once

// Exponent algebra for the two constructions: cubic thresholds, regime
// exponent tables, feasibility margins, and the mean-value frontier.

#include <array>
#include <string>
#include <vector>

namespace sunit {

enum class Theorem { thm1, thm2 };
enum class Variant { conditional, unconditional };

std::string to_string(Theorem t);
std::string to_string(Variant v);
Theorem parse_theorem(const std::string& s);
Variant parse_variant(const std::string& s);

// Real root of c0 x^3 + c1 x^2 + c2 x + c3 on [lo, hi] by bisection to 1e-12.
// Throws DomainError without a sign change.
double cubic_real_root(const std::array<double, 4>& coeffs, double lo, double hi);

// Root of 4x^3 - 5x^2 + 9x - 4 in (0, 1).
double lambda0();
// Root of x^3 - 2x^2 - x + 1 in (1/2, 1).
double lambda1();

struct Constraint {
  std::string name;
  double value = 0;  // margin: >= 0 means satisfied
  bool satisfied = false;
};

std::vector<Constraint> check_constraints(Theorem t, Variant v, double alpha);
bool feasible(Theorem t, Variant v, double alpha);

// Exponents as powers of X; y_exp is zero for thm1.
struct RegimeExponents {
  Theorem theorem = Theorem::thm1;
  Variant variant = Variant::conditional;
  double alpha = 0;
  double z_exp = 0;
  double w_exp = 0;
  double y_exp = 0;
  double q_exp = 0;  // thm1 only
  double r_exp = 0;  // thm1 only
};

// Throws ConstraintViolation carrying the first failed inequality.
RegimeExponents regime_exponents(Theorem t, Variant v, double alpha);

struct Frontier {
  double theta = 0;
  double alpha_sup = 0;
};

// theta = sum_{i in I} 2^{-i}; alpha_sup = (1 - 2^{1-k} + 2 theta) /
// (5 - 2^{2-k} + 12 theta - 2^{2-k} theta + 4 theta^2). I must lie in [2, k].
Frontier optimality_frontier(int k, const std::vector<int>& I);

}  // namespace sunit
