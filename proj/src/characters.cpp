#include "sunit/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sunit/errors.hpp"
#include "sunit/parallel.hpp"
#include "sunit/residue.hpp"

namespace sunit {

namespace {

constexpr u64 kRootTableLimit = u64{1} << 22;

cplx unit(u64 k, u64 n) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

u64 smallest_primitive_root(u64 p) {
  if (p == 2) return 1;
  const auto f = factorize(static_cast<Int>(p - 1));
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& pp : f.factors) {
      if (powmod(g, (p - 1) / pp.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

u64 residue(Int n, u64 m) {
  const Int r = n % static_cast<Int>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<Int>(m) : r);
}

cplx root_value(const ModulusData& d, u64 k) {
  return d.roots.empty() ? unit(k, d.exponent) : d.roots[k];
}

}  // namespace

std::shared_ptr<const ModulusData> ModulusData::build(u64 modulus) {
  if (modulus < 2) throw DomainError("characters: modulus must be >= 2");
  const auto f = factorize(static_cast<Int>(modulus));
  if (!f.squarefree()) throw DomainError("characters: modulus " + std::to_string(modulus) + " is not squarefree");
  auto d = std::make_shared<ModulusData>();
  d->modulus = modulus;
  for (const auto& pp : f.factors) {
    const u64 p = pp.prime;
    const u64 g = smallest_primitive_root(p);
    std::vector<std::uint32_t> log(p, 0);
    u64 x = 1;
    for (u64 k = 0; k + 1 < p; ++k) {
      log[x] = static_cast<std::uint32_t>(k);
      x = x * g % p;
    }
    d->primes.push_back(p);
    d->generators.push_back(g);
    d->logs.push_back(std::move(log));
    d->exponent = std::lcm(d->exponent, p == 2 ? u64{1} : p - 1);
  }
  for (u64 p : d->primes) d->scale.push_back(d->exponent / (p == 2 ? 1 : p - 1));
  if (d->exponent <= kRootTableLimit) {
    d->roots.resize(d->exponent);
    for (u64 k = 0; k < d->exponent; ++k) d->roots[k] = unit(k, d->exponent);
  }
  return d;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const ModulusData> data, std::vector<u64> exponents)
    : data_(std::move(data)), exponents_(std::move(exponents)) {
  if (exponents_.size() != data_->primes.size()) throw DomainError("DirichletCharacter: wrong number of exponents");
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    const u64 p = data_->primes[j];
    if (exponents_[j] > (p == 2 ? 0 : p - 2)) throw DomainError("DirichletCharacter: exponent out of range");
  }
}

bool DirichletCharacter::is_principal() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](u64 e) { return e == 0; });
}

bool DirichletCharacter::is_primitive() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](u64 e) { return e != 0; });
}

u64 DirichletCharacter::conductor() const {
  u64 r = 1;
  for (std::size_t j = 0; j < exponents_.size(); ++j)
    if (exponents_[j] != 0) r *= data_->primes[j];
  return r;
}

std::optional<u64> DirichletCharacter::phase(Int n) const {
  const ModulusData& d = *data_;
  u64 k = 0;
  for (std::size_t j = 0; j < d.primes.size(); ++j) {
    const u64 p = d.primes[j];
    const u64 r = residue(n, p);
    if (r == 0) return std::nullopt;
    if (exponents_[j] == 0) continue;
    const u64 e = exponents_[j] * d.logs[j][r] % (p - 1);
    k = (k + e * d.scale[j]) % d.exponent;
  }
  return k;
}

cplx DirichletCharacter::operator()(Int n) const {
  const auto k = phase(n);
  return k ? root_value(*data_, *k) : cplx{0.0, 0.0};
}

std::vector<cplx> DirichletCharacter::values() const {
  std::vector<cplx> out(data_->modulus);
  for (u64 r = 0; r < data_->modulus; ++r) out[r] = (*this)(static_cast<Int>(r));
  return out;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<u64> e(exponents_.size());
  for (std::size_t j = 0; j < e.size(); ++j) {
    const u64 p = data_->primes[j];
    e[j] = p == 2 ? 0 : (p - 1 - exponents_[j]) % (p - 1);
  }
  return DirichletCharacter(data_, std::move(e));
}

DirichletCharacter DirichletCharacter::induced(u64 multiple) const {
  if (multiple % modulus() != 0) throw DomainError("induced: modulus does not divide the target modulus");
  auto target = ModulusData::build(multiple);
  std::vector<u64> e(target->primes.size(), 0);
  for (std::size_t i = 0, j = 0; i < target->primes.size(); ++i) {
    if (j < data_->primes.size() && data_->primes[j] == target->primes[i]) e[i] = exponents_[j++];
  }
  return DirichletCharacter(std::move(target), std::move(e));
}

CharacterTable::CharacterTable(u64 modulus) : data_(ModulusData::build(modulus)) {
  const auto& primes = data_->primes;
  std::vector<u64> e(primes.size(), 0);
  for (;;) {
    chars_.emplace_back(data_, e);
    std::size_t j = e.size();
    while (j-- > 0) {
      const u64 order = primes[j] == 2 ? 1 : primes[j] - 1;
      if (e[j] + 1 < order) {
        ++e[j];
        break;
      }
      e[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
}

std::size_t CharacterTable::index_of(std::span<const u64> exponents) const {
  if (exponents.size() != data_->primes.size()) throw DomainError("index_of: wrong number of exponents");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    const u64 order = data_->primes[j] == 2 ? 1 : data_->primes[j] - 1;
    if (exponents[j] >= order) throw DomainError("index_of: exponent out of range");
    idx = idx * order + exponents[j];
  }
  return idx;
}

std::size_t CharacterTable::conj_index(std::size_t i) const { return index_of(chars_.at(i).conj().exponents()); }

CharacterTable all_characters(u64 a) { return CharacterTable(a); }

cplx char_sum(const DirichletCharacter& chi, std::span<const Int> values) {
  cplx s{0.0, 0.0};
  for (Int v : values) s += chi(v);
  return s;
}

cplx char_interval_sum(const DirichletCharacter& chi, Int M, u64 N) {
  const u64 q = chi.modulus();
  const auto table = chi.values();
  cplx period{0.0, 0.0};
  for (const auto& v : table) period += v;
  cplx s{0.0, 0.0};
  const u64 full = N / q;
  if (full > 0) s += period * static_cast<double>(full);
  u64 r = residue(M + 1, q);
  for (u64 i = 0; i < N % q; ++i) {
    s += table[r];
    if (++r == q) r = 0;
  }
  return s;
}

GaussSum gauss_sum_and_conductor(const DirichletCharacter& chi) {
  const u64 a = chi.modulus();
  GaussSum g;
  for (u64 x = 1; x < a; ++x) {
    const auto k = chi.phase(static_cast<Int>(x));
    if (!k) continue;
    g.tau += root_value(chi.data(), *k) * unit(x, a);
  }
  g.conductor = chi.conductor();
  return g;
}

PolyaVinogradovReport polya_vinogradov_check(u64 q, u64 scan_M, u64 scan_N) {
  if (q < 3) throw DomainError("polya_vinogradov_check: q must be >= 3");
  const CharacterTable table(q);
  PolyaVinogradovReport rep;
  rep.q = q;
  const u64 len = scan_M + scan_N;
  std::vector<cplx> prefix(len + 1);
  // Statistics of a conjugate pair coincide.
  std::vector<std::optional<std::size_t>> row_of(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& chi = table[i];
    if (chi.is_principal()) continue;
    const u64 r = chi.conductor();
    CharacterStat row;
    row.modulus = q;
    row.character_index = i;
    row.bound = static_cast<double>(multiplicative_functions(q / r).divisors) * std::sqrt(static_cast<double>(r)) *
                std::log(static_cast<double>(r));
    u64 best_M = 0, best_N = 1;
    const std::size_t ci = table.conj_index(i);
    if (ci < i && row_of[ci]) {
      row.statistic = rep.rows[*row_of[ci]].statistic;
    } else {
      const auto vals = chi.values();
      for (u64 n = 1; n <= len; ++n) prefix[n] = prefix[n - 1] + vals[n % q];
      double best = -1;
      for (u64 M = 0; M < scan_M; ++M) {
        for (u64 N = 1; N <= scan_N; ++N) {
          const double v = std::norm(prefix[M + N] - prefix[M]);
          if (v > best) {
            best = v;
            best_M = M;
            best_N = N;
          }
        }
      }
      row.statistic = std::sqrt(std::max(best, 0.0));
    }
    row.ratio = row.statistic / row.bound;
    row_of[i] = rep.rows.size();
    if (rep.rows.empty() || row.ratio > rep.max_ratio) {
      rep.max_ratio = row.ratio;
      rep.argmax_character = i;
      rep.argmax_M = best_M;
      rep.argmax_N = best_N;
    }
    rep.rows.push_back(row);
  }
  rep.passed = rep.max_ratio <= 1.0;
  return rep;
}

InequalityCheck large_sieve_check(std::span<const u64> moduli, Int Y, Int Z, std::span<const cplx> a) {
  if (moduli.empty()) throw DomainError("large_sieve_check: no moduli");
  if (Y < 0 || Y >= Z) throw DomainError("large_sieve_check: need 0 <= Y < Z");
  if (static_cast<Int>(a.size()) != Z - Y) throw DomainError("large_sieve_check: need one coefficient per n in (Y, Z]");
  InequalityCheck r;
  u64 D = 0, Mq = 0;
  for (u64 q : moduli) {
    if (q < 1) throw DomainError("large_sieve_check: moduli must be positive");
    const auto mf = multiplicative_functions(q);
    D = std::max<u64>(D, mf.divisors);
    Mq = std::max(Mq, q);
    if (q == 1) {
      cplx s{0.0, 0.0};
      for (const auto& v : a) s += v;
      r.lhs += std::norm(s);
      continue;
    }
    const CharacterTable table(q);
    double acc = 0;
    for (const auto& chi : table) {
      const auto vals = chi.values();
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * vals[residue(Y + 1 + static_cast<Int>(i), q)];
      acc += std::norm(gauss_sum_and_conductor(chi).tau) * std::norm(s);
    }
    r.lhs += acc / static_cast<double>(mf.phi);
  }
  double weighted = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const u64 n = static_cast<u64>(Y + 1 + static_cast<Int>(i));
    weighted += static_cast<double>(multiplicative_functions(n).divisors) * std::norm(a[i]);
  }
  const double len = static_cast<double>(Z - Y);
  const double mq2 = static_cast<double>(Mq) * static_cast<double>(Mq);
  r.rhs = 7.0 * static_cast<double>(D) * std::max(len, mq2) * weighted;
  r.holds = r.lhs <= r.rhs;
  return r;
}

std::vector<double> fourth_moment_ratios(u64 q, u64 n_max) {
  if (q < 3) throw DomainError("fourth_moment_ratio: q must be >= 3");
  if (n_max < 1) throw DomainError("fourth_moment_ratio: N must be >= 1");
  const CharacterTable table(q);
  std::vector<double> acc(n_max, 0.0);
  for (const auto& chi : table) {
    if (chi.is_principal()) continue;
    const auto vals = chi.values();
    cplx s{0.0, 0.0};
    for (u64 n = 1; n <= n_max; ++n) {
      s += vals[n % q];
      const double m = std::norm(s);
      acc[n - 1] += m * m;
    }
  }
  const double phi = static_cast<double>(table.size());
  for (u64 n = 1; n <= n_max; ++n) acc[n - 1] /= phi * static_cast<double>(n) * static_cast<double>(n);
  return acc;
}

double fourth_moment_ratio(u64 q, u64 N) { return fourth_moment_ratios(q, N).back(); }

IdentityCheck primitive_decomposition_check(u64 a, const DirichletCharacter& primitive, u64 W) {
  const u64 y = primitive.modulus();
  if (a % y != 0) throw DomainError("primitive_decomposition_check: modulus of the primitive character does not divide a");
  if (!primitive.is_primitive()) throw DomainError("primitive_decomposition_check: character is not primitive");
  const DirichletCharacter chi = primitive.induced(a);
  IdentityCheck r;
  for (u64 w = 1; w <= W; ++w) r.lhs += chi(static_cast<Int>(w));
  for (u64 d : divisors(a)) {
    const int mu = multiplicative_functions(d).mu;
    if (mu == 0) continue;
    cplx inner{0.0, 0.0};
    for (u64 v = 1; v <= W / d; ++v) inner += primitive(static_cast<Int>(v) * static_cast<Int>(d));
    r.rhs += static_cast<double>(mu) * inner;
  }
  r.equal = std::abs(r.lhs - r.rhs) <= 1e-9;
  return r;
}

MultiplicativeDecomposition multiplicative_decomposition(const SmoothSet& A, const SmoothSet& C, u64 W,
                                                         unsigned threads, u64 max_modulus) {
  struct Part {
    double main = 0;
    cplx remainder;
    Int exact = 0;
  };
  for (const auto& a : A.members) {
    if (a.value < 2 || !a.squarefree()) throw DomainError("multiplicative_decomposition: moduli must be squarefree and >= 2");
    if (a.value > static_cast<Int>(max_modulus))
      throw ResourceLimit("multiplicative_decomposition: modulus " + to_string(a.value) + " above the table cap " +
                          std::to_string(max_modulus));
  }
  std::vector<Part> parts(A.size());
  parallel_for(A.size(), threads, [&](std::size_t ia) {
    const u64 a = static_cast<u64>(A.members[ia].value);
    const auto data = ModulusData::build(a);
    Part part;
    // Residue histograms of the coprime elements of C and of w <= W.
    std::vector<u64> hc(a, 0), hw(a, 0);
    u64 ccount = 0, wcount = 0;
    for (const auto& c : C.members) {
      const u64 r = residue(c.value, a);
      if (std::gcd(r, a) != 1) continue;
      ++hc[r];
      ++ccount;
      part.exact += progression_count(ResidueProgression{mod_inverse(c.value, a), a}, W);
    }
    for (u64 r = 1; r < a; ++r) {
      if (std::gcd(r, a) != 1) continue;
      hw[r] = W >= r ? (W - r) / a + 1 : 0;
      wcount += hw[r];
    }
    const double phi = static_cast<double>(multiplicative_functions(a).phi);
    part.main = static_cast<double>(ccount) * static_cast<double>(wcount) / phi;

    struct Weighted {
      std::vector<std::uint32_t> logs;
      double weight;
    };
    auto collect = [&](const std::vector<u64>& h) {
      std::vector<Weighted> out;
      for (u64 r = 1; r < a; ++r) {
        if (h[r] == 0) continue;
        Weighted w{{}, static_cast<double>(h[r])};
        for (std::size_t j = 0; j < data->primes.size(); ++j) w.logs.push_back(data->logs[j][r % data->primes[j]]);
        out.push_back(std::move(w));
      }
      return out;
    };
    const auto wc = collect(hc);
    const auto ww = collect(hw);
    const CharacterTable table(a);
    auto sum = [&](const DirichletCharacter& chi, const std::vector<Weighted>& ws) {
      cplx s{0.0, 0.0};
      const auto e = chi.exponents();
      for (const auto& w : ws) {
        u64 k = 0;
        for (std::size_t j = 0; j < e.size(); ++j) {
          if (e[j] == 0) continue;
          const u64 p = data->primes[j];
          k = (k + e[j] * w.logs[j] % (p - 1) * data->scale[j]) % data->exponent;
        }
        s += w.weight * root_value(*data, k);
      }
      return s;
    };
    for (const auto& chi : table) {
      if (chi.is_principal()) continue;
      part.remainder += sum(chi, wc) * sum(chi, ww);
    }
    part.remainder /= phi;
    parts[ia] = part;
  });
  MultiplicativeDecomposition out;
  cplx rem{0.0, 0.0};
  for (const auto& p : parts) {
    out.main += p.main;
    rem += p.remainder;
    out.exact_count += p.exact;
  }
  out.remainder = rem.real();
  out.remainder_imag = rem.imag();
  return out;
}

}  // namespace sunit
