#pragma once

// Additive characters: Kloosterman sums, Kloosterman fractions e(h c^{-1}/a),
// and the exact additive decomposition of #{(a, c, w <= mu a) : cw == 1 mod a}.

#include <complex>
#include <vector>

#include "sunit/arith.hpp"
#include "sunit/smooth.hpp"

namespace sunit {

using cplx = std::complex<double>;

// S(m, n; c) = sum_{x mod c, gcd(x, c) = 1} e((m x + n x^{-1}) / c), c >= 1.
cplx kloosterman_sum(Int m, Int n, u64 c);

// s_mu(h) = (e(-h mu) - 1) / (-2 pi i h), evaluated as e(-h mu / 2) sin(pi h mu) / (pi h).
cplx s_mu_weight(Int h, double mu);

struct WeightedFractionSum {
  u64 a = 0;
  Int h = 0;
  cplx value;
  std::size_t used = 0;     // elements coprime to a
  std::size_t skipped = 0;  // elements sharing a factor with a
};

WeightedFractionSum fraction_sum(const SmoothSet& C, Int h, u64 a);

struct SpectrumTerm {
  u64 a = 0;
  Int h = 0;
  double s_mu_abs = 0;
  double fraction_abs = 0;
  cplx term;  // (1/a) sum_{w <= [mu a]} e(-h w / a) * fraction_sum(C, h, a)
};

struct Thm3Decomposition {
  double mu = 0;
  Int Z = 0;  // max A
  double main = 0;
  std::vector<SpectrumTerm> spectrum;  // empty unless requested
  cplx spectrum_total;
  Int exact_count = 0;

  double lambda = 0;             // 1 / log Z
  double truncation_height = 0;  // lambda mu Z
  cplx truncated_sum;            // exact terms with 0 < |h| <= lambda mu Z
  cplx tail_sum;                 // the remaining exact terms
  cplx smu_truncated_sum;        // s_mu(h) * fraction_sum over the same window
  double main_error_scale = 0;   // mu #A #C / log Z
  double tail_error_scale = 0;   // #A sqrt(#C X log Z / (mu Z)), X = max C

  std::size_t coprimality_violations = 0;
  bool a_in_range = true;        // A inside [3Z/4, Z]
  bool mu_in_range = true;       // 1/sqrt(Z) <= mu <= 1

  double recombination_error() const;
};

// Window -a/2 < h <= a/2 for each a, [mu a] taken as floor(mu a + 1e-9).
Thm3Decomposition thm3_decompose(const SmoothSet& A, const SmoothSet& C, double mu, unsigned threads = 1,
                                 bool keep_spectrum = false);

// K(C, D, N, R) = sqrt(C(R+N)(C+DR) + C^2 D sqrt((R+N)R) + D^2 N R), all arguments >= 1/2.
double di_bound_K(double C, double D, double N, double R);

struct TrilinearRatio {
  cplx sum;
  double weight_norm = 0;  // sqrt(sum |b|^2) for unit weights
  double K = 0;
  double ratio = 0;        // |sum| / (K * weight_norm)
};

// Exploratory: sum over R < r <= 2R, 0 < n <= N, C < c <= 2C, D < d <= 2D,
// gcd(rd, c) = 1 of e(n (rd)^{-1} / c) with unit weights and sharp cutoffs.
TrilinearRatio trilinear_kloosterman_ratio(u64 C, u64 D, u64 N, u64 R);

}  // namespace sunit
