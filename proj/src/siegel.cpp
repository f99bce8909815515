#include "sunit/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "sunit/arith.hpp"
#include "sunit/errors.hpp"

namespace sunit {

namespace {

using i64 = std::int64_t;

constexpr i64 kCollisionTableCap = 200'000'000;

void check_form(std::span<const i64> alpha, i64 B) {
  if (alpha.size() < 2) throw DomainError("siegel: need at least two coefficients");
  if (B < 1) throw DomainError("siegel: B must be >= 1");
  bool nonzero = false;
  for (i64 a : alpha) {
    if (a > B || a < -B) throw DomainError("siegel: |alpha_i| exceeds B");
    nonzero = nonzero || a != 0;
  }
  if (!nonzero) throw DomainError("siegel: all coefficients are zero");
}

Int ipow(Int base, std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

SmallSolution collision_scan(std::span<const i64> alpha, i64 B) {
  const std::size_t n = alpha.size();
  const i64 C = siegel_box(n, B);
  i64 lo = 0, hi = 0;
  for (i64 a : alpha) (a < 0 ? lo : hi) += a * C;
  if (hi - lo + 1 > kCollisionTableCap) throw ResourceLimit("siegel collision scan: value table too large");

  // first[v - lo] = index of the first y giving value v, or -1.
  std::vector<i64> first(static_cast<std::size_t>(hi - lo + 1), -1);
  std::vector<i64> y(n, 0);
  i64 index = 0;
  i64 value = 0;
  auto decode = [&](i64 idx) {
    std::vector<i64> out(n);
    for (std::size_t i = n; i-- > 0;) {
      out[i] = idx % (C + 1);
      idx /= C + 1;
    }
    return out;
  };
  for (;;) {
    i64& slot = first[static_cast<std::size_t>(value - lo)];
    if (slot >= 0) {
      const auto prev = decode(slot);
      SmallSolution s;
      s.z.resize(n);
      for (std::size_t i = 0; i < n; ++i) s.z[i] = y[i] - prev[i];
      s.bound = std::pow(static_cast<double>(n) * static_cast<double>(B), 1.0 / static_cast<double>(n - 1));
      return s;
    }
    slot = index;
    // Odometer step, last coordinate fastest.
    std::size_t i = n;
    while (i-- > 0) {
      if (y[i] < C) {
        ++y[i];
        value += alpha[i];
        break;
      }
      value -= alpha[i] * y[i];
      y[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++index;
  }
  throw std::logic_error("siegel collision scan: pigeonhole produced no collision");
}

SmallSolution fast_three(std::span<const i64> alpha, i64 B) {
  const i64 C = siegel_box(3, B);
  SmallSolution s;
  s.bound = std::sqrt(3.0 * static_cast<double>(B));
  for (std::size_t i = 0; i < 3; ++i) {
    if (alpha[i] == 0) {
      s.z = {0, 0, 0};
      s.z[i] = 1;
      return s;
    }
  }
  for (i64 z1 = 0; z1 <= C; ++z1) {
    for (i64 z2 = -C; z2 <= C; ++z2) {
      if (z1 == 0 && z2 <= 0) continue;
      const i64 r = -(alpha[0] * z1 + alpha[1] * z2);
      if (r % alpha[2] != 0) continue;
      const i64 z3 = r / alpha[2];
      if (z3 < -C || z3 > C) continue;
      s.z = {z1, z2, z3};
      return s;
    }
  }
  throw std::logic_error("siegel fast path: no solution inside the pigeonhole box");
}

struct Pair {
  i64 y1 = 0, y2 = 0;
};

// Ordering key for a two-variable completion: magnitudes first, then + before -.
auto pair_key(const Pair& p) {
  return std::make_tuple(p.y1 < 0 ? -p.y1 : p.y1, p.y2 < 0 ? -p.y2 : p.y2, p.y1 < 0, p.y2 < 0);
}

// Best (y1, y2) with b1 y1 + b2 y2 = t and 1 <= |y1|, |y2| <= M.
std::optional<Pair> solve_two(Int b1, Int b2, Int t, i64 M) {
  if (b1 == 0 && b2 == 0) return t == 0 ? std::optional<Pair>(Pair{1, 1}) : std::nullopt;
  if (b2 == 0) {
    if (t % b1 != 0) return std::nullopt;
    const Int y1 = t / b1;
    if (y1 == 0 || abs_int(y1) > M) return std::nullopt;
    return Pair{static_cast<i64>(y1), 1};
  }
  if (b1 == 0) {
    if (t % b2 != 0) return std::nullopt;
    const Int y2 = t / b2;
    if (y2 == 0 || abs_int(y2) > M) return std::nullopt;
    return Pair{1, static_cast<i64>(y2)};
  }
  const Int g = gcd_int(b1, b2);
  if (t % g != 0) return std::nullopt;
  const Int step = abs_int(b2) / g;
  Int r = 0;
  if (step > 1) {
    const Int b1r = ((b1 / g) % step + step) % step;
    const Int tr = ((t / g) % step + step) % step;
    r = tr * mod_inverse(b1r, step) % step;
  }
  std::optional<Pair> best;
  // y1 = r + k*step over [-M, M].
  Int y1 = r - ((r + M) / step) * step;
  for (; y1 <= M; y1 += step) {
    if (y1 == 0 || y1 < -M) continue;
    const Int num = t - b1 * y1;
    if (num % b2 != 0) continue;
    const Int y2 = num / b2;
    if (y2 == 0 || abs_int(y2) > M) continue;
    const Pair cand{static_cast<i64>(y1), static_cast<i64>(y2)};
    if (!best || pair_key(cand) < pair_key(*best)) best = cand;
  }
  return best;
}

}  // namespace

i64 siegel_box(std::size_t n, i64 B) {
  if (n < 2 || B < 1) throw DomainError("siegel_box: need n >= 2 and B >= 1");
  const Int target = static_cast<Int>(n) * B;
  i64 r = static_cast<i64>(std::floor(std::pow(static_cast<double>(target), 1.0 / static_cast<double>(n - 1))));
  r = std::max<i64>(r, 1);
  while (ipow(r, n - 1) > target) --r;
  while (ipow(r + 1, n - 1) <= target) ++r;
  return r;
}

SmallSolution siegel_small_solution(std::span<const i64> alpha, i64 B, SiegelPath path) {
  check_form(alpha, B);
  if (path == SiegelPath::automatic) path = alpha.size() == 3 ? SiegelPath::fast3 : SiegelPath::collision;
  if (path == SiegelPath::fast3) {
    if (alpha.size() != 3) throw DomainError("siegel fast path requires exactly three coefficients");
    return fast_three(alpha, B);
  }
  return collision_scan(alpha, B);
}

std::optional<SmallSolution> siegel_nonzero_coords(std::span<const i64> alpha, i64 B, double cap) {
  check_form(alpha, B);
  if (!(cap >= 1.0)) throw DomainError("siegel_nonzero_coords: cap must be >= 1");
  const std::size_t n = alpha.size();
  const i64 M = static_cast<i64>(std::floor(cap));
  const std::size_t prefix = n - 2;
  const Int b1 = alpha[n - 2];
  const Int b2 = alpha[n - 1];

  std::vector<i64> mags(prefix, 1);
  for (;;) {
    // Best completion over all prefix sign patterns for this magnitude prefix.
    std::optional<std::vector<i64>> best;
    auto full_key = [&](const std::vector<i64>& z) {
      std::vector<i64> key;
      key.reserve(2 * n);
      for (i64 v : z) key.push_back(v < 0 ? -v : v);
      for (i64 v : z) key.push_back(v < 0 ? 1 : 0);
      return key;
    };
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << prefix); ++signs) {
      Int t = 0;
      std::vector<i64> z(n);
      for (std::size_t i = 0; i < prefix; ++i) {
        // Bit (prefix-1-i) set means negative, so the loop visits + patterns first.
        const bool neg = (signs >> (prefix - 1 - i)) & 1;
        z[i] = neg ? -mags[i] : mags[i];
        t -= static_cast<Int>(alpha[i]) * z[i];
      }
      const auto tail = solve_two(b1, b2, t, M);
      if (!tail) continue;
      z[n - 2] = tail->y1;
      z[n - 1] = tail->y2;
      if (!best || full_key(z) < full_key(*best)) best = z;
    }
    if (best) return SmallSolution{*best, cap};
    std::size_t i = prefix;
    while (i-- > 0) {
      if (mags[i] < M) {
        ++mags[i];
        break;
      }
      mags[i] = 1;
    }
    if (i == static_cast<std::size_t>(-1)) return std::nullopt;
  }
}

}  // namespace sunit
