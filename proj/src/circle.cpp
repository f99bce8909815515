#include "sunit/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sunit/errors.hpp"
#include "sunit/parallel.hpp"
#include "sunit/residue.hpp"

namespace sunit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit(Int k, Int n) {
  Int r = k % n;
  if (r < 0) r += n;
  const double t = kTwoPi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

std::vector<cplx> root_table(u64 a) {
  std::vector<cplx> t(a);
  for (u64 k = 0; k < a; ++k) t[k] = unit(static_cast<Int>(k), static_cast<Int>(a));
  return t;
}

u64 floor_mu(double mu, u64 a) { return static_cast<u64>(std::floor(mu * static_cast<double>(a) + 1e-9)); }

}  // namespace

cplx kloosterman_sum(Int m, Int n, u64 c) {
  if (c < 1) throw DomainError("kloosterman_sum: c must be >= 1");
  const Int cc = static_cast<Int>(c);
  const Int mr = ((m % cc) + cc) % cc;
  const Int nr = ((n % cc) + cc) % cc;
  cplx s{0.0, 0.0};
  for (u64 x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    const Int xi = mod_inverse(static_cast<Int>(x), cc);
    s += unit(mr * static_cast<Int>(x) + nr * xi, cc);
  }
  return s;
}

cplx s_mu_weight(Int h, double mu) {
  if (h == 0) throw DomainError("s_mu_weight: h must be nonzero");
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("s_mu_weight: mu must lie in (0, 1]");
  const double hd = static_cast<double>(h);
  // Reduce h mu / 2 mod 1 before the exponential to keep large h accurate.
  const double half = std::fmod(hd * mu / 2.0, 1.0);
  const cplx rot = std::polar(1.0, -kTwoPi * half);
  return rot * (std::sin(std::numbers::pi * std::fmod(hd * mu, 2.0)) / (std::numbers::pi * hd));
}

WeightedFractionSum fraction_sum(const SmoothSet& C, Int h, u64 a) {
  if (a < 2) throw DomainError("fraction_sum: a must be >= 2");
  WeightedFractionSum f;
  f.a = a;
  f.h = h;
  const Int aa = static_cast<Int>(a);
  for (const auto& c : C.members) {
    if (gcd_int(c.value, aa) != 1) {
      ++f.skipped;
      continue;
    }
    ++f.used;
    f.value += unit(h % aa * mod_inverse(c.value, aa), aa);
  }
  return f;
}

double Thm3Decomposition::recombination_error() const {
  return std::abs(main + spectrum_total.real() - static_cast<double>(exact_count));
}

Thm3Decomposition thm3_decompose(const SmoothSet& A, const SmoothSet& C, double mu, unsigned threads,
                                 bool keep_spectrum) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("thm3_decompose: mu must lie in (0, 1]");
  for (const auto& a : A.members)
    if (a.value < 2) throw DomainError("thm3_decompose: moduli must be >= 2");
  Thm3Decomposition d;
  d.mu = mu;
  if (A.members.empty()) return d;
  d.Z = A.members.back().value;
  const double Zd = static_cast<double>(d.Z);
  d.lambda = d.Z > 1 ? 1.0 / std::log(Zd) : 0.0;
  d.truncation_height = d.lambda * mu * Zd;
  d.a_in_range = 4 * A.members.front().value >= 3 * d.Z;
  d.mu_in_range = mu >= 1.0 / std::sqrt(Zd);

  struct Part {
    double main = 0;
    Int exact = 0;
    cplx total, truncated, smu;
    std::size_t violations = 0;
    std::vector<SpectrumTerm> terms;
  };
  std::vector<Part> parts(A.size());
  parallel_for(A.size(), threads, [&](std::size_t ia) {
    const u64 a = static_cast<u64>(A.members[ia].value);
    const Int aa = static_cast<Int>(a);
    const u64 m = floor_mu(mu, a);
    Part p;
    // Histogram of c^{-1} mod a over the coprime elements of C.
    std::vector<u64> inv_hist(a, 0);
    u64 coprime = 0;
    for (const auto& c : C.members) {
      if (gcd_int(c.value, aa) != 1) {
        ++p.violations;
        continue;
      }
      const u64 ci = static_cast<u64>(mod_inverse(c.value, aa));
      ++inv_hist[ci];
      ++coprime;
      p.exact += progression_count(ResidueProgression{static_cast<Int>(ci), aa}, static_cast<Int>(m));
    }
    p.main = static_cast<double>(m) * static_cast<double>(coprime) / static_cast<double>(a);
    std::vector<std::pair<u64, u64>> nonzero;
    for (u64 r = 1; r < a; ++r)
      if (inv_hist[r] != 0) nonzero.emplace_back(r, inv_hist[r]);
    const auto roots = root_table(a);
    const Int lo = -static_cast<Int>((a - 1) / 2);
    const Int hi = static_cast<Int>(a / 2);
    for (Int h = lo; h <= hi; ++h) {
      if (h == 0) continue;
      const u64 hr = static_cast<u64>(((h % aa) + aa) % aa);
      cplx F{0.0, 0.0};
      for (const auto& [r, cnt] : nonzero) F += static_cast<double>(cnt) * roots[(hr * r) % a];
      // (1/a) sum_{w=1}^{m} x^w with x = e(-h/a) != 1.
      const cplx x = std::conj(roots[hr]);
      const cplx xm = std::conj(roots[(hr * (m % a)) % a]);
      const cplx G = x * (1.0 - xm) / (1.0 - x) / static_cast<double>(a);
      const cplx term = G * F;
      p.total += term;
      const bool inside = static_cast<double>(abs_int(h)) <= d.truncation_height;
      if (inside) {
        p.truncated += term;
        p.smu += s_mu_weight(h, mu) * F;
      }
      if (keep_spectrum) p.terms.push_back({a, h, std::abs(s_mu_weight(h, mu)), std::abs(F), term});
    }
    parts[ia] = std::move(p);
  });
  for (auto& p : parts) {
    d.main += p.main;
    d.exact_count += p.exact;
    d.spectrum_total += p.total;
    d.truncated_sum += p.truncated;
    d.smu_truncated_sum += p.smu;
    d.coprimality_violations += p.violations;
    if (keep_spectrum) d.spectrum.insert(d.spectrum.end(), p.terms.begin(), p.terms.end());
  }
  d.tail_sum = d.spectrum_total - d.truncated_sum;
  const double nA = static_cast<double>(A.size());
  const double nC = static_cast<double>(C.size());
  const double X = C.members.empty() ? 1.0 : static_cast<double>(C.members.back().value);
  const double logZ = std::log(Zd);
  d.main_error_scale = mu * nA * nC / logZ;
  d.tail_error_scale = nA * std::sqrt(nC * X * logZ / (mu * Zd));
  return d;
}

double di_bound_K(double C, double D, double N, double R) {
  for (double v : {C, D, N, R})
    if (!(v >= 0.5)) throw DomainError("di_bound_K: arguments must be >= 1/2");
  const double k2 = C * (R + N) * (C + D * R) + C * C * D * std::sqrt((R + N) * R) + D * D * N * R;
  return std::sqrt(k2);
}

TrilinearRatio trilinear_kloosterman_ratio(u64 C, u64 D, u64 N, u64 R) {
  if (C < 1 || D < 1 || N < 1 || R < 1) throw DomainError("trilinear_kloosterman_ratio: arguments must be >= 1");
  TrilinearRatio t;
  for (u64 c = C + 1; c <= 2 * C; ++c) {
    const Int cc = static_cast<Int>(c);
    for (u64 r = R + 1; r <= 2 * R; ++r) {
      for (u64 d = D + 1; d <= 2 * D; ++d) {
        const u64 rd = r * d;
        if (std::gcd(rd, c) != 1) continue;
        const Int inv = mod_inverse(static_cast<Int>(rd), cc);
        for (u64 n = 1; n <= N; ++n) t.sum += unit(static_cast<Int>(n) * inv, cc);
      }
    }
  }
  t.weight_norm = std::sqrt(static_cast<double>(R) * static_cast<double>(N));
  t.K = di_bound_K(static_cast<double>(C), static_cast<double>(D), static_cast<double>(N), static_cast<double>(R));
  t.ratio = std::abs(t.sum) / (t.K * t.weight_norm);
  return t;
}

}  // namespace sunit
