#include "sunit/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sunit/errors.hpp"

namespace sunit {

std::vector<Int> SmoothSet::values() const {
  std::vector<Int> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.value);
  return out;
}

SmoothSet make_smooth_set(std::vector<Int> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  SmoothSet s;
  std::vector<u64> primes;
  for (Int v : values) {
    if (v < 1) throw DomainError("make_smooth_set: values must be positive");
    auto f = factorize(v);
    for (const auto& pp : f.factors) primes.push_back(pp.prime);
    s.members.push_back(std::move(f));
  }
  s.source = PrimeSet::from_unsorted(std::move(primes));
  if (!values.empty()) {
    s.lo = values.front();
    s.hi = values.back();
  }
  return s;
}

namespace {

struct Enumerator {
  std::span<const u64> primes;
  Int lo;
  Int hi;
  std::uint64_t cap;
  std::uint64_t visited = 0;
  std::vector<PrimePower> stack;
  std::vector<FactoredInt> out;

  void visit(std::size_t start, Int product) {
    if (++visited > cap)
      throw EnumerationCap("enumerate_squarefree_smooth: more than " + std::to_string(cap) +
                           " products to visit");
    if (product >= lo) out.push_back(FactoredInt{product, stack});
    for (std::size_t i = start; i < primes.size(); ++i) {
      const Int p = primes[i];
      if (product > hi / p) break;
      stack.push_back({primes[i], 1});
      visit(i + 1, product * p);
      stack.pop_back();
    }
  }
};

}  // namespace

SmoothSet enumerate_squarefree_smooth(const PrimeSet& T, Int lo, Int hi, std::uint64_t cap) {
  if (lo > hi) throw DomainError("enumerate_squarefree_smooth: lo > hi");
  SmoothSet s{T, lo, hi, {}};
  if (hi < 1) return s;
  Enumerator e{T.primes(), lo, hi, cap, 0, {}, {}};
  e.visit(0, 1);
  std::sort(e.out.begin(), e.out.end(), [](const FactoredInt& a, const FactoredInt& b) { return a.value < b.value; });
  s.members = std::move(e.out);
  return s;
}

Lemma2Bound lemma2_lower_bound(double x, double a, double b) {
  if (!(x > std::exp(std::numbers::e))) throw DomainError("lemma2_lower_bound: requires x > e^e");
  if (!(a >= 1.0 && a <= 100.0)) throw DomainError("lemma2_lower_bound: requires 1 <= a <= 100");
  const double L = std::log(x);
  const double LL = std::log(L);
  Lemma2Bound r;
  r.b = b;
  r.value = std::pow(x, b / a + 1.0 / (2.0 * a * LL)) / (6.0 * std::pow(L, b + 1.0));
  r.k = static_cast<long>(std::floor(L / (a * LL)));
  return r;
}

Lemma2Bound lemma2_lower_bound_from_count(double x, double a, std::uint64_t t_count) {
  if (!(x > std::exp(std::numbers::e))) throw DomainError("lemma2_lower_bound: requires x > e^e");
  if (t_count == 0) throw DomainError("lemma2_lower_bound: T_count must be positive");
  const double L = std::log(x);
  const double b = std::log(static_cast<double>(t_count) * a * std::log(L)) / std::log(L) - 1.0;
  return lemma2_lower_bound(x, a, b);
}

BinomialChain binomial_chain_check(std::uint64_t t_count, std::uint64_t k) {
  if (k < 1) throw DomainError("binomial_chain_check: k must be >= 1");
  if (k > t_count) throw DomainError("binomial_chain_check: k > T_count");
  const std::uint64_t kk = std::min(k, t_count - k);
  Int c = 1;
  for (std::uint64_t i = 0; i < kk; ++i) c = checked_mul(c, static_cast<Int>(t_count - i)) / static_cast<Int>(i + 1);
  BinomialChain r;
  r.lhs = c;
  const double kd = static_cast<double>(k);
  r.rhs = std::pow(static_cast<double>(t_count) / kd, kd) * std::exp(kd / 2.0) / (3.0 * std::sqrt(kd));
  r.holds = static_cast<long double>(c) >= static_cast<long double>(r.rhs);
  return r;
}

std::vector<PrimeSet> split_disjoint_prime_sets(u64 lo, u64 hi, std::size_t m) {
  if (m < 1) throw DomainError("split_disjoint_prime_sets: m must be >= 1");
  const PrimeSet all = hi >= lo ? primes_in_range(lo, hi) : PrimeSet{};
  if (all.size() < m)
    throw InsufficientPrimes("split_disjoint_prime_sets: only " + std::to_string(all.size()) +
                             " primes for " + std::to_string(m) + " sets");
  std::vector<std::vector<u64>> parts(m);
  for (std::size_t i = 0; i < all.size(); ++i) parts[i % m].push_back(all[i]);
  std::vector<PrimeSet> out;
  out.reserve(m);
  for (auto& p : parts) out.emplace_back(std::move(p));
  return out;
}

}  // namespace sunit
