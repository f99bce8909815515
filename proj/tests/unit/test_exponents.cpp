#include <cmath>

#include "doctest.h"
#include "sunit/errors.hpp"
#include "sunit/exponents.hpp"

using namespace sunit;

TEST_CASE("cubic thresholds") {
  CHECK(lambda0() == doctest::Approx(0.5355085793592683).epsilon(1e-11));
  CHECK(lambda1() == doctest::Approx(0.5549581320873712).epsilon(1e-11));
  const double l0 = lambda0();
  CHECK(std::abs(4 * l0 * l0 * l0 - 5 * l0 * l0 + 9 * l0 - 4) < 1e-10);
  CHECK(cubic_real_root({1, 0, 0, -8}, 0, 5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(cubic_real_root({1, 0, 0, 1}, 0, 5), DomainError);
  CHECK_THROWS_AS(cubic_real_root({1, 0, 0, -8}, 3, 3), DomainError);
}

TEST_CASE("parsing") {
  CHECK(parse_theorem("thm2") == Theorem::thm2);
  CHECK(parse_variant("conditional") == Variant::conditional);
  CHECK(to_string(Variant::unconditional) == "unconditional");
  CHECK_THROWS_AS(parse_theorem("thm3"), DomainError);
  CHECK_THROWS_AS(parse_variant("maybe"), DomainError);
}

TEST_CASE("feasibility boundaries") {
  CHECK(feasible(Theorem::thm1, Variant::conditional, 0.2));
  CHECK_FALSE(feasible(Theorem::thm1, Variant::conditional, 0.2 + 1e-9));
  CHECK(feasible(Theorem::thm1, Variant::unconditional, 1.0 / 6.0));
  CHECK_FALSE(feasible(Theorem::thm1, Variant::unconditional, 0.17));
  CHECK_FALSE(feasible(Theorem::thm1, Variant::unconditional, -0.01));
  CHECK(feasible(Theorem::thm2, Variant::unconditional, 0.5));
  CHECK(feasible(Theorem::thm2, Variant::unconditional, lambda0() - 1e-9));
  CHECK_FALSE(feasible(Theorem::thm2, Variant::unconditional, lambda0() + 1e-9));
  CHECK(feasible(Theorem::thm2, Variant::conditional, lambda1() - 1e-9));
  CHECK_FALSE(feasible(Theorem::thm2, Variant::conditional, lambda1() + 1e-9));
  CHECK_FALSE(feasible(Theorem::thm2, Variant::conditional, 0.49));
}

TEST_CASE("regime exponents") {
  auto r = regime_exponents(Theorem::thm1, Variant::unconditional, 1.0 / 6.0);
  CHECK(r.z_exp == doctest::Approx(1.0 / 3.0));
  CHECK(r.w_exp == doctest::Approx(1.0 / 9.0));
  CHECK(r.q_exp + r.r_exp == doctest::Approx(1.0));
  r = regime_exponents(Theorem::thm1, Variant::conditional, 0.1);
  CHECK(r.z_exp == doctest::Approx(0.8 / 1.1));
  CHECK(r.q_exp == doctest::Approx(0.5));
  r = regime_exponents(Theorem::thm2, Variant::conditional, 0.5);
  CHECK(r.z_exp == doctest::Approx(0.0));
  CHECK(r.y_exp == doctest::Approx(1.0));
  try {
    regime_exponents(Theorem::thm1, Variant::unconditional, 0.3);
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.inequality() == "alpha <= 1/6");
  }
}

TEST_CASE("exponent shape across the feasible ranges") {
  for (int i = 0; i <= 200; ++i) {
    const double a1 = 0.2 * i / 200.0;
    if (feasible(Theorem::thm1, Variant::conditional, a1)) {
      const auto r = regime_exponents(Theorem::thm1, Variant::conditional, a1);
      CHECK(r.w_exp >= -1e-12);
      CHECK(r.w_exp <= r.z_exp + 1e-12);
      CHECK(r.z_exp <= 1.0 + 1e-12);
    }
    const double a2 = 0.5 + (lambda0() - 0.5) * i / 201.0;
    const auto r = regime_exponents(Theorem::thm2, Variant::unconditional, a2);
    CHECK(r.z_exp >= -1e-12);
    CHECK(r.z_exp <= std::min(1.0, r.y_exp) + 1e-12);
    CHECK(r.w_exp <= r.z_exp + 1e-12);
  }
}

TEST_CASE("optimality frontier") {
  CHECK(optimality_frontier(2, {}).alpha_sup == doctest::Approx(0.125));
  auto f = optimality_frontier(2, {2});
  CHECK(f.theta == doctest::Approx(0.25));
  CHECK(f.alpha_sup == doctest::Approx(1.0 / 7.0));
  CHECK(optimality_frontier(40, {}).alpha_sup == doctest::Approx(0.1999999999997817).epsilon(1e-12));
  CHECK_THROWS_AS(optimality_frontier(1, {}), DomainError);
  CHECK_THROWS_AS(optimality_frontier(3, {4}), DomainError);
  for (int k = 2; k <= 30; ++k) CHECK(optimality_frontier(k, {}).alpha_sup < 0.2);
}
