#include "sunit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "sunit/errors.hpp"

namespace sunit {

namespace {

constexpr Int kU64Max = static_cast<Int>(~u64{0});

std::vector<u64> small_primes_upto(u64 n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work on the negative side so the minimum value is representable.
  std::string digits;
  Int t = neg ? v : -v;
  while (t != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(t % 10)));
    t /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  if (i >= text.size()) throw DomainError("parse_int: no digits in '" + std::string(text) + "'");
  Int v = 0;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) break;
    if (ch < '0' || ch > '9') throw DomainError("parse_int: bad digit in '" + std::string(text) + "'");
    v = checked_add(checked_mul(v, 10), ch - '0');
  }
  for (; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i])))
      throw DomainError("parse_int: trailing characters in '" + std::string(text) + "'");
  return neg ? -v : v;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit multiplication overflow");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("128-bit addition overflow");
  return r;
}

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_u64(Int v) { return v >= 0 && v <= kU64Max; }

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set for every n < 3.1e23.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeSet::PrimeSet(std::vector<u64> primes) : primes_(std::move(primes)) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i]))
      throw DomainError("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
    if (i > 0 && primes_[i] <= primes_[i - 1]) throw DomainError("PrimeSet: primes must be strictly increasing");
  }
}

PrimeSet PrimeSet::from_unsorted(std::vector<u64> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return PrimeSet(std::move(primes));
}

bool PrimeSet::contains(u64 p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

PrimeSet PrimeSet::unite(const PrimeSet& other) const {
  PrimeSet out;
  std::set_union(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                 std::back_inserter(out.primes_));
  return out;
}

bool PrimeSet::disjoint(const PrimeSet& other) const {
  auto i = primes_.begin();
  auto j = other.primes_.begin();
  while (i != primes_.end() && j != other.primes_.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

bool FactoredInt::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

PrimeSet FactoredInt::support() const {
  std::vector<u64> ps;
  ps.reserve(factors.size());
  for (const auto& f : factors) ps.push_back(f.prime);
  return PrimeSet(std::move(ps));
}

PrimeSet primes_in_range(u64 lo, u64 hi) {
  if (hi < 2) return {};
  lo = std::max<u64>(lo, 2);
  if (lo > hi) throw DomainError("primes_in_range: lo > hi");
  const auto base = small_primes_upto(isqrt(hi));
  std::vector<u64> out;
  constexpr u64 kBlock = u64{1} << 20;
  for (u64 start = lo; start <= hi; start += kBlock) {
    const u64 stop = std::min(hi, start + kBlock - 1);
    std::vector<bool> composite(stop - start + 1, false);
    for (u64 p : base) {
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 m = first; m <= stop; m += p) composite[m - start] = true;
    }
    for (u64 n = start; n <= stop; ++n)
      if (!composite[n - start]) out.push_back(n);
    if (stop == hi) break;
  }
  return PrimeSet(std::move(out));
}

std::optional<FactoredInt> factor_over(Int n, const PrimeSet& T) {
  if (n < 1) throw DomainError("factor_over: n must be >= 1");
  FactoredInt f;
  f.value = n;
  Int rest = n;
  for (u64 p : T) {
    if (rest == 1) break;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  }
  if (rest != 1) return std::nullopt;
  return f;
}

Int mod_inverse(Int c, Int a) {
  if (a < 1) throw DomainError("mod_inverse: modulus must be positive");
  if (a == 1) return 0;
  Int r0 = a, r1 = ((c % a) + a) % a;
  Int s0 = 0, s1 = 1;
  while (r1 != 0) {
    const Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw NotInvertible("mod_inverse: " + to_string(c) + " is not invertible mod " + to_string(a));
  Int inv = s0 % a;
  if (inv < 0) inv += a;
  return inv;
}

FactoredInt factorize(Int n) {
  const Int m = abs_int(n);
  if (m < 1) throw DomainError("factorize: n must be nonzero");
  if (!fits_u64(m)) throw FactorizationLimit("factorize: " + to_string(n) + " exceeds the 64-bit factoring range");
  u64 rest = static_cast<u64>(m);
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      primes.push_back(p);
      rest /= p;
    }
  }
  factor_u64(rest, primes);
  std::sort(primes.begin(), primes.end());
  FactoredInt f;
  f.value = m;
  for (u64 p : primes) {
    if (!f.factors.empty() && f.factors.back().prime == p)
      ++f.factors.back().exponent;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

Multiplicative multiplicative_functions(const FactoredInt& f) {
  Multiplicative m;
  for (const auto& [p, e] : f.factors) {
    u64 pk = 1;
    for (int i = 1; i < e; ++i) pk *= p;
    m.phi *= pk * (p - 1);
    m.mu = e > 1 ? 0 : -m.mu;
    m.divisors *= static_cast<u64>(e + 1);
  }
  return m;
}

Multiplicative multiplicative_functions(u64 n) {
  if (n < 1) throw DomainError("multiplicative_functions: n must be >= 1");
  return multiplicative_functions(factorize(n));
}

std::vector<u64> divisors(u64 n) {
  const auto f = factorize(n);
  std::vector<u64> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t count = out.size();
    u64 pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sunit
