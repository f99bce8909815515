#include <cmath>
#include <numbers>
#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "sunit/circle.hpp"
#include "sunit/errors.hpp"

using namespace sunit;

TEST_CASE("kloosterman sums") {
  const auto s = kloosterman_sum(1, 1, 5);
  CHECK(s.real() == doctest::Approx(0.3819660112501049));
  CHECK(std::abs(s.imag()) < 1e-12);
  for (u64 c = 1; c <= 60; ++c) {
    const auto r = kloosterman_sum(1, 0, c);
    CHECK(r.real() == doctest::Approx(static_cast<double>(brute::mobius(c))).epsilon(1e-9));
    CHECK(std::abs(r.imag()) < 1e-9);
  }
  CHECK_THROWS_AS(kloosterman_sum(1, 1, 0), DomainError);
}

TEST_CASE("kloosterman sums are real, symmetric and obey the Weil bound") {
  for (u64 p = 3; p <= 200; ++p) {
    if (!brute::is_prime(p)) continue;
    for (Int m = 1; m < static_cast<Int>(p); m += 7)
      for (Int n = 1; n < static_cast<Int>(p); n += 5) {
        const auto s = kloosterman_sum(m, n, p);
        CHECK(std::abs(s.imag()) < 1e-8);
        CHECK(std::abs(s) <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
        CHECK(std::abs(s - kloosterman_sum(n, m, p)) < 1e-8);
        CHECK(std::abs(s - kloosterman_sum(m + static_cast<Int>(p), n - static_cast<Int>(p), p)) < 1e-8);
      }
  }
}

TEST_CASE("s_mu weight") {
  const auto s = s_mu_weight(1, 0.5);
  CHECK(std::abs(s - cplx{0, -1.0 / std::numbers::pi}) < 1e-12);
  CHECK_THROWS_AS(s_mu_weight(0, 0.5), DomainError);
  CHECK_THROWS_AS(s_mu_weight(1, 0.0), DomainError);
  CHECK_THROWS_AS(s_mu_weight(1, 1.5), DomainError);
  for (double mu : {0.01, 0.1, 2.0 / 7.0, 0.5, 0.77, 1.0})
    for (Int h = -300; h <= 300; ++h) {
      if (h == 0) continue;
      const auto w = s_mu_weight(h, mu);
      const double hd = static_cast<double>(h);
      const cplx direct = (brute::e(-hd * mu) - 1.0) / cplx{0, -2.0 * std::numbers::pi * hd};
      CHECK(std::abs(w - direct) < 1e-9);
      CHECK(std::abs(w) <= std::min(mu, 1.0 / (std::numbers::pi * std::abs(hd))) + 1e-12);
    }
  // Large h stays on the unit-reduced phase.
  CHECK(std::abs(s_mu_weight(1'000'000'007, 0.5)) <= 1.0 / (std::numbers::pi * 1e9));
}

TEST_CASE("additive orthogonality") {
  for (u64 a = 2; a <= 100; ++a) {
    const auto C = make_smooth_set({static_cast<Int>(a) + 1});
    for (Int x = 0; x < static_cast<Int>(a); ++x) {
      cplx s{0, 0};
      for (Int h = 0; h < static_cast<Int>(a); ++h)
        s += brute::e(static_cast<double>(h * x) / static_cast<double>(a));
      CHECK(std::abs(s - cplx{x == 0 ? static_cast<double>(a) : 0.0, 0}) < 1e-8);
    }
    // c = a + 1 has inverse 1, so the full period of fraction sums vanishes.
    cplx t{0, 0};
    for (Int h = 0; h < static_cast<Int>(a); ++h) t += fraction_sum(C, h, a).value;
    CHECK(std::abs(t) < 1e-8);
  }
}

TEST_CASE("fraction sums") {
  const auto C = make_smooth_set({2, 3, 4, 5, 6});
  const auto f = fraction_sum(C, 1, 6);
  CHECK(f.used == 1);
  CHECK(f.skipped == 4);
  CHECK(std::abs(f.value - brute::e(5.0 / 6.0)) < 1e-12);
  const auto g = fraction_sum(C, 3, 7);
  cplx direct{0, 0};
  for (Int c : C.values()) direct += brute::e(static_cast<double>(3 * mod_inverse(c, 7)) / 7.0);
  CHECK(std::abs(g.value - direct) < 1e-12);
  CHECK_THROWS_AS(fraction_sum(C, 1, 1), DomainError);
}

TEST_CASE("thm3 decomposition micro example") {
  const auto d = thm3_decompose(make_smooth_set({7}), make_smooth_set({4}), 2.0 / 7.0, 1, true);
  CHECK(d.exact_count == 1);
  CHECK(d.main == doctest::Approx(2.0 / 7.0));
  CHECK(d.spectrum_total.real() == doctest::Approx(5.0 / 7.0));
  CHECK(std::abs(d.spectrum_total.imag()) < 1e-12);
  CHECK(d.spectrum.size() == 6);
  CHECK(d.recombination_error() < 1e-9);
  CHECK(std::abs(d.truncated_sum + d.tail_sum - d.spectrum_total) < 1e-12);
  CHECK_THROWS_AS(thm3_decompose(make_smooth_set({7}), make_smooth_set({4}), 0.0), DomainError);
  CHECK_THROWS_AS(thm3_decompose(make_smooth_set({7}), make_smooth_set({4}), 1.2), DomainError);
}

TEST_CASE("thm3 decomposition recombines to the brute count") {
  std::mt19937_64 rng(9);
  const auto primes = primes_in_range(2, 29);
  for (int t = 0; t < 50; ++t) {
    std::vector<Int> av, cv;
    for (int i = 0; i < 5; ++i) {
      Int a = 1, c = 1;
      for (u64 p : primes) {
        if (rng() % 3 == 0 && a * static_cast<Int>(p) < 300) a *= static_cast<Int>(p);
        if (rng() % 3 == 0 && c * static_cast<Int>(p) < 900) c *= static_cast<Int>(p);
      }
      if (a >= 2) av.push_back(a);
      cv.push_back(c);
    }
    if (av.empty()) av.push_back(11);
    const double mu = 0.05 + 0.95 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto As = make_smooth_set(av);
    const auto Cs = make_smooth_set(cv);
    const auto d = thm3_decompose(As, Cs, mu, 1 + rng() % 3);
    const Int expect = brute::linear_count(As.values(), Cs.values(), [&](Int a) {
      return static_cast<Int>(std::floor(mu * static_cast<double>(a) + 1e-9));
    });
    CHECK(d.exact_count == expect);
    CHECK(d.recombination_error() < 1e-6);
    CHECK(std::abs(d.spectrum_total.imag()) < 1e-6);
  }
}

TEST_CASE("thm3 audit flags") {
  const auto A = make_smooth_set({70, 77, 78});
  const auto C = make_smooth_set({5, 6, 7});
  const auto d = thm3_decompose(A, C, 0.5);
  CHECK(d.Z == 78);
  CHECK(d.a_in_range);
  CHECK(d.mu_in_range);
  CHECK(d.coprimality_violations == 5);
  CHECK(d.lambda == doctest::Approx(1.0 / std::log(78.0)));
  const auto e = thm3_decompose(make_smooth_set({10, 78}), C, 0.05);
  CHECK_FALSE(e.a_in_range);
  CHECK_FALSE(e.mu_in_range);
}

TEST_CASE("di bound and trilinear ratio") {
  CHECK(di_bound_K(1, 1, 1, 1) == doctest::Approx(2.5326297720695568));
  CHECK_THROWS_AS(di_bound_K(0.4, 1, 1, 1), DomainError);
  const auto t = trilinear_kloosterman_ratio(3, 2, 4, 2);
  cplx direct{0, 0};
  for (u64 c = 4; c <= 6; ++c)
    for (u64 r = 3; r <= 4; ++r)
      for (u64 dd = 3; dd <= 4; ++dd) {
        if (brute::gcd(r * dd, c) != 1) continue;
        const Int inv = mod_inverse(static_cast<Int>(r * dd), static_cast<Int>(c));
        for (u64 n = 1; n <= 4; ++n)
          direct += brute::e(static_cast<double>(static_cast<Int>(n) * inv % static_cast<Int>(c)) / static_cast<double>(c));
      }
  CHECK(std::abs(t.sum - direct) < 1e-9);
  CHECK(t.weight_norm == doctest::Approx(std::sqrt(8.0)));
  CHECK(t.ratio == doctest::Approx(std::abs(direct) / (t.K * t.weight_norm)));
}
