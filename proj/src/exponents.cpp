#include "sunit/exponents.hpp"

#include <cmath>

#include "sunit/errors.hpp"

namespace sunit {

namespace {

double eval(const std::array<double, 4>& c, double x) { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; }

Constraint make(std::string name, double margin) { return {std::move(name), margin, margin >= 0.0}; }

constexpr std::array<double, 4> kCubic0{4.0, -5.0, 9.0, -4.0};
constexpr std::array<double, 4> kCubic1{1.0, -2.0, -1.0, 1.0};

double thm2_unconditional_denominator(double a) { return 2.0 - 4.5 * a + 2.0 * a * a; }

}  // namespace

std::string to_string(Theorem t) { return t == Theorem::thm1 ? "thm1" : "thm2"; }
std::string to_string(Variant v) { return v == Variant::conditional ? "conditional" : "unconditional"; }

Theorem parse_theorem(const std::string& s) {
  if (s == "thm1") return Theorem::thm1;
  if (s == "thm2") return Theorem::thm2;
  throw DomainError("unknown theorem '" + s + "'");
}

Variant parse_variant(const std::string& s) {
  if (s == "conditional") return Variant::conditional;
  if (s == "unconditional") return Variant::unconditional;
  throw DomainError("unknown variant '" + s + "'");
}

double cubic_real_root(const std::array<double, 4>& coeffs, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("cubic_real_root: need lo < hi");
  double flo = eval(coeffs, lo);
  const double fhi = eval(coeffs, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw DomainError("cubic_real_root: no sign change on the interval");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eval(coeffs, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lambda0() {
  static const double r = cubic_real_root(kCubic0, 0.0, 1.0);
  return r;
}

double lambda1() {
  static const double r = cubic_real_root(kCubic1, 0.5, 1.0);
  return r;
}

std::vector<Constraint> check_constraints(Theorem t, Variant v, double a) {
  std::vector<Constraint> out;
  if (t == Theorem::thm1) {
    out.push_back(make("alpha >= 0", a));
    if (v == Variant::conditional)
      out.push_back(make("alpha <= 1/5", 0.2 - a));
    else
      out.push_back(make("alpha <= 1/6", 1.0 / 6.0 - a));
    return out;
  }
  out.push_back(make("alpha >= 1/2", a - 0.5));
  out.push_back(make("alpha <= 1", 1.0 - a));
  if (v == Variant::conditional) {
    out.push_back(make("alpha^2 + 3 alpha - 2 < 0", -(a * a + 3.0 * a - 2.0)));
    out.push_back(make("alpha^3 - 2 alpha^2 - alpha + 1 > 0", eval(kCubic1, a)));
  } else {
    out.push_back(make("4 alpha^3 - 5 alpha^2 + 9 alpha - 4 < 0", -eval(kCubic0, a)));
    out.push_back(make("2 - 9 alpha/2 + 2 alpha^2 > 0", thm2_unconditional_denominator(a)));
  }
  return out;
}

bool feasible(Theorem t, Variant v, double alpha) {
  for (const auto& c : check_constraints(t, v, alpha))
    if (!c.satisfied) return false;
  return true;
}

RegimeExponents regime_exponents(Theorem t, Variant v, double a) {
  for (const auto& c : check_constraints(t, v, a))
    if (!c.satisfied)
      throw ConstraintViolation(c.name, to_string(t) + "-" + to_string(v) + ": alpha = " + std::to_string(a) +
                                            " violates " + c.name);
  RegimeExponents r{t, v, a};
  if (t == Theorem::thm1 && v == Variant::conditional) {
    r.z_exp = (1.0 - 2.0 * a) / (1.0 + a);
    r.w_exp = (1.0 - 4.0 * a + a * a) / (1.0 + a);
    r.q_exp = 0.5;
    r.r_exp = 0.5;
  } else if (t == Theorem::thm1) {
    r.z_exp = (1.0 - 3.0 * a) / (1.0 + 3.0 * a);
    r.w_exp = (1.0 - 5.0 * a) / (1.0 + 3.0 * a);
    r.q_exp = r.z_exp;
    r.r_exp = 1.0 - r.z_exp;
  } else if (v == Variant::conditional) {
    r.z_exp = (2.0 * a - 1.0) / ((1.0 - a) * (1.0 - a));
    r.y_exp = a / (1.0 - a);
    r.w_exp = (2.0 * a - 1.0) / (1.0 - a);
  } else {
    const double D = thm2_unconditional_denominator(a);
    r.z_exp = (-2.0 + 4.0 * a) / D;
    r.y_exp = (-2.0 * a * a + 2.5 * a - 0.5) / D;
    r.w_exp = (-4.0 * a * a + 7.0 * a - 2.5) / D;
  }
  return r;
}

Frontier optimality_frontier(int k, const std::vector<int>& I) {
  if (k < 2) throw DomainError("optimality_frontier: k must be >= 2");
  Frontier f;
  for (int i : I) {
    if (i < 2 || i > k) throw DomainError("optimality_frontier: I must lie in [2, k]");
    f.theta += std::ldexp(1.0, -i);
  }
  const double th = f.theta;
  const double p1 = std::ldexp(1.0, 1 - k);
  const double p2 = std::ldexp(1.0, 2 - k);
  f.alpha_sup = (1.0 - p1 + 2.0 * th) / (5.0 - p2 + 12.0 * th - p2 * th + 4.0 * th * th);
  return f;
}

}  // namespace sunit
