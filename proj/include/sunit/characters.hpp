#pragma once

// Dirichlet characters to squarefree moduli, built componentwise over the
// prime factors from the smallest primitive root of each prime.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sunit/arith.hpp"
#include "sunit/smooth.hpp"

namespace sunit {

using cplx = std::complex<double>;

// Per-modulus discrete-log data shared by every character of that modulus.
struct ModulusData {
  u64 modulus = 0;
  std::vector<u64> primes;
  std::vector<u64> generators;               // smallest primitive root of each prime
  std::vector<std::vector<std::uint32_t>> logs;  // logs[j][r] = ind_{g_j}(r), r in [1, p_j - 1]
  u64 exponent = 1;                          // lcm(p_j - 1): every value is e(k / exponent)
  std::vector<u64> scale;                    // exponent / (p_j - 1)
  std::vector<cplx> roots;                   // roots[k] = e(k / exponent)

  static std::shared_ptr<const ModulusData> build(u64 modulus);
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const ModulusData> data, std::vector<u64> exponents);

  u64 modulus() const { return data_->modulus; }
  std::span<const u64> exponents() const { return exponents_; }
  const ModulusData& data() const { return *data_; }
  std::shared_ptr<const ModulusData> shared_data() const { return data_; }

  bool is_principal() const;
  // Every prime of the modulus carries a nontrivial component.
  bool is_primitive() const;
  // Product of the primes with a nontrivial component.
  u64 conductor() const;

  // chi(n) = e(phase / exponent), or nullopt when gcd(n, modulus) > 1.
  std::optional<u64> phase(Int n) const;
  cplx operator()(Int n) const;
  // chi(r) for r = 0 .. modulus - 1.
  std::vector<cplx> values() const;

  DirichletCharacter conj() const;
  // The character modulo `multiple` (squarefree, divisible by modulus()) induced by this one.
  DirichletCharacter induced(u64 multiple) const;

 private:
  std::shared_ptr<const ModulusData> data_;
  std::vector<u64> exponents_;
};

class CharacterTable {
 public:
  explicit CharacterTable(u64 modulus);

  u64 modulus() const { return data_->modulus; }
  std::size_t size() const { return chars_.size(); }
  const DirichletCharacter& operator[](std::size_t i) const { return chars_[i]; }
  auto begin() const { return chars_.begin(); }
  auto end() const { return chars_.end(); }
  const ModulusData& data() const { return *data_; }

  // Index of the character with these exponents (lexicographic order).
  std::size_t index_of(std::span<const u64> exponents) const;
  std::size_t conj_index(std::size_t i) const;

 private:
  std::shared_ptr<const ModulusData> data_;
  std::vector<DirichletCharacter> chars_;
};

// The full dual group mod a (squarefree a >= 2); DomainError otherwise.
CharacterTable all_characters(u64 a);

cplx char_sum(const DirichletCharacter& chi, std::span<const Int> values);
// sum_{n = M+1}^{M+N} chi(n)
cplx char_interval_sum(const DirichletCharacter& chi, Int M, u64 N);

struct GaussSum {
  cplx tau;
  u64 conductor = 1;
};

GaussSum gauss_sum_and_conductor(const DirichletCharacter& chi);

// One row per character in verification CSVs.
struct CharacterStat {
  u64 modulus = 0;
  std::size_t character_index = 0;
  double statistic = 0;
  double bound = 0;
  double ratio = 0;
};

struct PolyaVinogradovReport {
  u64 q = 0;
  std::vector<CharacterStat> rows;  // non-principal characters only
  double max_ratio = 0;
  std::size_t argmax_character = 0;
  u64 argmax_M = 0;
  u64 argmax_N = 0;
  bool passed = true;
};

// Max over 0 <= M < scan_M, 1 <= N <= scan_N of
// |sum_{n=M+1}^{M+N} chi(n)| / (d(q/r) sqrt(r) log r), r = cond(chi).
PolyaVinogradovReport polya_vinogradov_check(u64 q, u64 scan_M, u64 scan_N);

struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// sum_q 1/phi(q) sum_chi |tau(chi)|^2 |sum_{Y<n<=Z} a_n chi(n)|^2
//   <= 7 D(Q) max{Z - Y, M(Q)^2} sum d(n) |a_n|^2,   a[i] <-> n = Y + 1 + i.
InequalityCheck large_sieve_check(std::span<const u64> moduli, Int Y, Int Z, std::span<const cplx> a);

// [1/phi(q) sum_{chi != chi0} |sum_{n<=N} chi(n)|^4] / N^2
double fourth_moment_ratio(u64 q, u64 N);
// The same ratio for every N = 1 .. n_max (index N - 1).
std::vector<double> fourth_moment_ratios(u64 q, u64 n_max);

struct IdentityCheck {
  cplx lhs;
  cplx rhs;
  bool equal = false;
};

// sum_{w<=W} chi(w) = sum_{d|a} mu(d) sum_{v<=W/d} chi*(vd) for chi mod a induced by chi*.
IdentityCheck primitive_decomposition_check(u64 a, const DirichletCharacter& primitive, u64 W);

struct MultiplicativeDecomposition {
  double main = 0;
  double remainder = 0;
  double remainder_imag = 0;  // audit: vanishes up to rounding
  Int exact_count = 0;
};

// Splits #{(a, c, w <= W) : cw == 1 mod a} into the principal-character main
// term and the non-principal remainder. exact_count comes from residue stepping.
MultiplicativeDecomposition multiplicative_decomposition(const SmoothSet& A, const SmoothSet& C, u64 W,
                                                         unsigned threads = 1, u64 max_modulus = 1'000'000);

}  // namespace sunit
