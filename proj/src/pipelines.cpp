#include "sunit/pipelines.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "sunit/errors.hpp"
#include "sunit/parallel.hpp"
#include "sunit/residue.hpp"
#include "sunit/siegel.hpp"

namespace sunit {

namespace {

using i64 = std::int64_t;

struct KeyHash {
  std::size_t operator()(const std::vector<Int>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (Int v : k) {
      const auto u = static_cast<unsigned __int128>(v);
      for (u64 part : {static_cast<u64>(u), static_cast<u64>(u >> 64)}) {
        h ^= part + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
    }
    return h;
  }
};

using Tally = std::unordered_map<std::vector<Int>, std::uint64_t, KeyHash>;

Int ceil_pow(Int v, double e) {
  const double x = std::pow(static_cast<double>(v), e);
  return static_cast<Int>(std::ceil(x - 1e-9));
}

void require(bool ok, const std::string& inequality, const std::string& what) {
  if (!ok) throw ConstraintViolation(inequality, what);
}

void require_disjoint(const HarvestConfig& cfg) {
  require(cfg.T1.disjoint(cfg.T2) && cfg.T1.disjoint(cfg.T3) && cfg.T2.disjoint(cfg.T3), "T1, T2, T3 pairwise disjoint",
          "prime sets must be pairwise disjoint");
}

void merge_into(Tally& into, const Tally& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

// Chooses the popular key from a merged tally; throws EmptyHarvest when empty.
std::pair<std::vector<Int>, BucketStats> select_popular(const Tally& tally) {
  if (tally.empty()) throw EmptyHarvest("no almost-solutions were found");
  BucketStats st;
  const std::vector<Int>* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [k, v] : tally) {
    st.total_hits += v;
    ++st.bucket_count;
    if (v > best_count || (v == best_count && k < *best)) {
      best = &k;
      best_count = v;
    }
  }
  st.max_load = best_count;
  st.pigeonhole_floor = (st.total_hits + st.bucket_count - 1) / st.bucket_count;
  return {*best, st};
}

PrimeSet primes_of(std::initializer_list<Int> values) {
  std::vector<u64> ps;
  for (Int v : values) {
    if (v == 0) continue;
    for (const auto& pp : factorize(abs_int(v)).factors) ps.push_back(pp.prime);
  }
  return PrimeSet::from_unsorted(std::move(ps));
}

void finish(HarvestReport& rep, const HarvestConfig& cfg, std::vector<SolutionRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SolutionRow& a, const SolutionRow& b) {
    return a.values != b.values ? a.values < b.values : a.source < b.source;
  });
  std::vector<SolutionRow> kept;
  Int dupes = 0, rejected = 0;
  for (auto& r : rows) {
    if (!kept.empty() && kept.back().values == r.values) {
      ++dupes;
      continue;
    }
    if (!verify_sunit_solution(r.values, rep.equation, rep.S)) {
      ++rejected;
      continue;
    }
    kept.push_back(std::move(r));
  }
  rep.audit["duplicates_removed"] = dupes;
  rep.audit["verification_failures"] = rejected;
  rep.solutions = std::move(kept);
  if (rep.solutions.empty()) throw EmptyHarvest("the popular bucket produced no verified solution");
  rep.bound_comparison = compare_bounds(std::max<std::uint64_t>(rep.S.size(), 2), rep.equation, cfg.epsilon,
                                        rep.solutions.size());
}

SmoothSet build_set(const PrimeSet& T, Int lo, Int hi, const HarvestConfig& cfg) {
  return enumerate_squarefree_smooth(T, std::max<Int>(lo, 1), hi, cfg.enumeration_cap);
}

HarvestReport thm1_from_sets(std::span<const Int> A, std::span<const Int> C, const PrimeSet& S_prime,
                             const HarvestConfig& cfg, const std::function<void(HarvestReport&)>& extra);

}  // namespace

void validate(const HarvestConfig& cfg) {
  require(cfg.delta > 0.0 && cfg.delta < 1.0, "0 < delta < 1", "delta must lie in (0, 1)");
  require(cfg.threads >= 1, "threads >= 1", "need at least one thread");
  switch (cfg.equation) {
    case Equation::thm1: {
      require(cfg.X >= 2 && cfg.Z >= 2 && cfg.W >= 1 && cfg.Q >= 1 && cfg.R >= 1, "X, Z >= 2 and W, Q, R >= 1",
              "thm1 scales must be positive");
      require(cfg.W <= std::min(cfg.X, cfg.Z), "W <= min(X, Z)", "thm1 requires W <= min(X, Z)");
      const double lx = std::log(static_cast<double>(cfg.X));
      const double lz = std::log(static_cast<double>(cfg.Z));
      require(lz >= lx / 100.0 && lz <= 100.0 * lx, "X^{1/100} <= Z <= X^{100}", "thm1 requires X^{1/100} <= Z <= X^{100}");
      require(checked_mul(cfg.Q, cfg.R) <= cfg.X, "Q R <= X", "thm1 requires Q R <= X");
      require_disjoint(cfg);
      break;
    }
    case Equation::thm2:
      require(cfg.X >= 2 && cfg.Y >= 2 && cfg.Z >= 2 && cfg.W >= 1, "X, Y, Z >= 2 and W >= 1",
              "thm2 scales must be positive");
      require(cfg.Z <= std::min(cfg.X, cfg.Y), "Z <= min(X, Y)", "thm2 requires Z <= min(X, Y)");
      require_disjoint(cfg);
      break;
    case Equation::prop1:
      require(cfg.X >= 2, "x >= 2", "prop1 requires x >= 2");
      require(cfg.X <= static_cast<Int>(1) << 40, "x <= 2^40", "prop1 bound too large for the Siegel search");
      require_disjoint(cfg);
      break;
  }
}

HarvestReport thm1_run(const HarvestConfig& cfg) {
  validate(cfg);
  const double keep = 1.0 - cfg.delta;
  const SmoothSet Qs = build_set(cfg.T1, ceil_pow(cfg.Q, keep), cfg.Q, cfg);
  const SmoothSet Rs = build_set(cfg.T2, ceil_pow(cfg.R, keep), cfg.R, cfg);
  const SmoothSet As = build_set(cfg.T3, std::max<Int>(2, ceil_pow(cfg.Z, keep)), cfg.Z, cfg);
  std::vector<Int> C;
  C.reserve(Qs.size() * Rs.size());
  for (const auto& q : Qs.members)
    for (const auto& r : Rs.members) C.push_back(checked_mul(q.value, r.value));
  std::sort(C.begin(), C.end());
  if (std::adjacent_find(C.begin(), C.end()) != C.end())
    throw DuplicateProducts("thm1: the products q r are not all distinct");
  const auto A = As.values();
  auto rep = thm1_from_sets(A, C, cfg.T1.unite(cfg.T2).unite(cfg.T3), cfg, [&](HarvestReport& r) {
    r.audit["set_Q"] = static_cast<Int>(Qs.size());
    r.audit["set_R"] = static_cast<Int>(Rs.size());
    const double added_bound = std::log2(static_cast<double>(cfg.W)) +
                               std::log2(static_cast<double>(cfg.X) * static_cast<double>(cfg.W) /
                                         std::pow(static_cast<double>(cfg.Z), keep));
    r.metrics["added_prime_bound"] = added_bound;
    r.audit["added_prime_bound_ok"] =
        static_cast<double>(r.S.size()) <= static_cast<double>(r.S_prime.size()) + added_bound ? 1 : 0;
  });
  return rep;
}

HarvestReport thm1_from_sets(std::span<const Int> A, std::span<const Int> C, const PrimeSet& S_prime,
                             const HarvestConfig& cfg) {
  return thm1_from_sets(A, C, S_prime, cfg, [](HarvestReport&) {});
}

namespace {

HarvestReport thm1_from_sets(std::span<const Int> A, std::span<const Int> C, const PrimeSet& S_prime,
                             const HarvestConfig& cfg, const std::function<void(HarvestReport&)>& extra) {
  HarvestReport rep;
  rep.equation = Equation::thm1;
  rep.S_prime = S_prime;
  rep.audit["set_A"] = static_cast<Int>(A.size());
  rep.audit["set_C"] = static_cast<Int>(C.size());

  struct Part {
    Tally tally;
    std::uint64_t hits = 0, noncoprime = 0, zero_u = 0;
  };
  std::vector<Part> parts(A.size());
  std::atomic<std::uint64_t> running{0};
  parallel_for(A.size(), cfg.threads, [&](std::size_t i) {
    const Int a = A[i];
    Part p;
    for (Int c : C) {
      const auto prog = residue_progression(c, 1, a);
      if (!prog || prog->step != a) {
        ++p.noncoprime;
        continue;
      }
      for (Int w = prog->first; w <= cfg.W; w += a) {
        const Int u = (checked_mul(c, w) - 1) / a;
        if (u == 0) {
          ++p.zero_u;
          continue;
        }
        ++p.tally[{u, w}];
        ++p.hits;
      }
    }
    if (running.fetch_add(p.hits) + p.hits > cfg.hit_cap)
      throw ResourceLimit("thm1: more than " + std::to_string(cfg.hit_cap) + " hits");
    parts[i] = std::move(p);
  });
  Tally tally;
  std::uint64_t hits = 0, noncoprime = 0, zero_u = 0;
  for (auto& p : parts) {
    merge_into(tally, p.tally);
    hits += p.hits;
    noncoprime += p.noncoprime;
    zero_u += p.zero_u;
    p.tally.clear();
  }
  rep.audit["hits_enumerated"] = hits;
  rep.audit["noncoprime_pairs"] = noncoprime;
  rep.audit["zero_u_discarded"] = zero_u;
  auto [key, stats] = select_popular(tally);
  rep.bucket_stats = stats;
  rep.audit["hits_in_buckets"] = stats.total_hits;
  const Int u = key[0], w = key[1];
  rep.popular.key = key;

  std::vector<SolutionRow> rows;
  for (Int a : A) {
    for (Int c : C) {
      const Int cw = checked_mul(c, w);
      if (cw - 1 != checked_mul(a, u)) continue;
      rep.popular.hits.push_back({a, c});
      rows.push_back({{a * u, cw}, {a, c, u, w}});
    }
  }
  rep.popular.count = rep.popular.hits.size();
  rep.S = rep.S_prime.unite(primes_of({u, w}));
  rep.audit["added_primes"] = static_cast<Int>(rep.S.size() - rep.S_prime.size());
  extra(rep);
  finish(rep, cfg, std::move(rows));
  return rep;
}

}  // namespace

HarvestReport thm2_run(const HarvestConfig& cfg) {
  validate(cfg);
  const double keep = 1.0 - cfg.delta;
  const auto C = build_set(cfg.T1, ceil_pow(cfg.X, keep), cfg.X, cfg).values();
  const auto B = build_set(cfg.T2, ceil_pow(cfg.Y, keep), cfg.Y, cfg).values();
  const auto A = build_set(cfg.T3, std::max<Int>(2, ceil_pow(cfg.Z, keep)), cfg.Z, cfg).values();
  return thm2_from_sets(A, B, C, cfg.T1.unite(cfg.T2).unite(cfg.T3), cfg);
}

HarvestReport thm2_from_sets(std::span<const Int> A, std::span<const Int> B, std::span<const Int> C,
                             const PrimeSet& S_prime, const HarvestConfig& cfg) {
  HarvestReport rep;
  rep.equation = Equation::thm2;
  rep.S_prime = S_prime;
  rep.audit["set_A"] = static_cast<Int>(A.size());
  rep.audit["set_B"] = static_cast<Int>(B.size());
  rep.audit["set_C"] = static_cast<Int>(C.size());

  auto b_allowed = [&](Int a, Int b) { return !cfg.coprime_filter || gcd_int(b + 1, a) == 1; };

  struct Part {
    Tally tally;
    std::uint64_t hits = 0, noncoprime = 0, zero_u = 0, filtered_b = 0;
  };
  std::vector<Part> parts(A.size());
  std::atomic<std::uint64_t> running{0};
  parallel_for(A.size(), cfg.threads, [&](std::size_t i) {
    const Int a = A[i];
    Part p;
    for (Int c : C) {
      if (gcd_int(c, a) != 1) {
        ++p.noncoprime;
        continue;
      }
      for (Int b : B) {
        if (!b_allowed(a, b)) {
          ++p.filtered_b;
          continue;
        }
        const auto prog = residue_progression(c, b + 1, a);
        for (Int w = prog->first; w <= cfg.W; w += a) {
          const Int u = (checked_mul(c, w) - b - 1) / a;
          if (u == 0) {
            ++p.zero_u;
            continue;
          }
          ++p.tally[{u, w}];
          ++p.hits;
        }
      }
      if (p.hits > cfg.hit_cap) break;
    }
    if (running.fetch_add(p.hits) + p.hits > cfg.hit_cap)
      throw ResourceLimit("thm2: more than " + std::to_string(cfg.hit_cap) + " hits");
    parts[i] = std::move(p);
  });
  Tally tally;
  std::uint64_t hits = 0, noncoprime = 0, zero_u = 0, filtered_b = 0;
  for (auto& p : parts) {
    merge_into(tally, p.tally);
    hits += p.hits;
    noncoprime += p.noncoprime;
    zero_u += p.zero_u;
    filtered_b += p.filtered_b;
    p.tally.clear();
  }
  rep.audit["hits_enumerated"] = hits;
  rep.audit["noncoprime_pairs"] = noncoprime;
  rep.audit["zero_u_discarded"] = zero_u;
  rep.audit["b_filtered"] = filtered_b;
  auto [key, stats] = select_popular(tally);
  rep.bucket_stats = stats;
  rep.audit["hits_in_buckets"] = stats.total_hits;
  const Int u = key[0], w = key[1];
  rep.popular.key = key;

  std::vector<SolutionRow> rows;
  Int degenerate = 0;
  for (Int a : A) {
    for (Int c : C) {
      if (gcd_int(c, a) != 1) continue;
      const Int cw = checked_mul(c, w);
      for (Int b : B) {
        if (!b_allowed(a, b) || cw - b - 1 != checked_mul(a, u)) continue;
        rep.popular.hits.push_back({a, b, c});
        const Int As = a * u;
        if (As == -1 || b == -1 || cw == 1) {
          ++degenerate;
          continue;
        }
        rows.push_back({{As, b, cw}, {a, b, c, u, w}});
      }
    }
  }
  rep.popular.count = rep.popular.hits.size();
  rep.audit["degenerate_filtered"] = degenerate;
  rep.S = rep.S_prime.unite(primes_of({u, w}));
  finish(rep, cfg, std::move(rows));
  return rep;
}

HarvestReport prop1_run(const HarvestConfig& cfg) {
  validate(cfg);
  const Int x = cfg.X;
  const auto A1 = build_set(cfg.T1, 2, x, cfg).values();
  const auto A2 = build_set(cfg.T2, 2, x, cfg).values();
  const auto A3 = build_set(cfg.T3, 2, x, cfg).values();
  const long double triples = static_cast<long double>(A1.size()) * A2.size() * A3.size();
  if (triples > static_cast<long double>(cfg.hit_cap))
    throw ResourceLimit("prop1: " + std::to_string(static_cast<double>(triples)) + " coefficient triples exceed the cap");

  HarvestReport rep;
  rep.equation = Equation::prop1;
  rep.S_prime = cfg.T1.unite(cfg.T2).unite(cfg.T3);
  rep.audit["set_A1"] = static_cast<Int>(A1.size());
  rep.audit["set_A2"] = static_cast<Int>(A2.size());
  rep.audit["set_A3"] = static_cast<Int>(A3.size());
  const double cap = std::sqrt(3.0 * static_cast<double>(x));
  rep.metrics["siegel_cap"] = cap;
  const i64 B = static_cast<i64>(x);

  auto solve = [&](Int a1, Int a2, Int a3) {
    const std::array<i64, 3> alpha{static_cast<i64>(a1), static_cast<i64>(a2), static_cast<i64>(a3)};
    return siegel_nonzero_coords(alpha, B, cap);
  };

  struct Part {
    Tally tally;
    std::uint64_t hits = 0, skipped = 0;
  };
  std::vector<Part> parts(A1.size());
  parallel_for(A1.size(), cfg.threads, [&](std::size_t i) {
    Part p;
    for (Int a2 : A2) {
      for (Int a3 : A3) {
        const auto z = solve(A1[i], a2, a3);
        if (!z) {
          ++p.skipped;
          continue;
        }
        ++p.tally[{z->z[0], z->z[1], z->z[2]}];
        ++p.hits;
      }
    }
    parts[i] = std::move(p);
  });
  Tally tally;
  std::uint64_t hits = 0, skipped = 0;
  for (auto& p : parts) {
    merge_into(tally, p.tally);
    hits += p.hits;
    skipped += p.skipped;
    p.tally.clear();
  }
  rep.audit["hits_enumerated"] = hits;
  rep.audit["triples_skipped"] = skipped;
  auto [key, stats] = select_popular(tally);
  rep.bucket_stats = stats;
  rep.audit["hits_in_buckets"] = stats.total_hits;
  rep.popular.key = key;

  // Second pass: the triples landing in the popular bucket.
  std::vector<std::vector<SolutionRow>> found(A1.size());
  parallel_for(A1.size(), cfg.threads, [&](std::size_t i) {
    for (Int a2 : A2) {
      for (Int a3 : A3) {
        const auto z = solve(A1[i], a2, a3);
        if (!z || z->z[0] != key[0] || z->z[1] != key[1] || z->z[2] != key[2]) continue;
        const Int p1 = A1[i] * key[0], p2 = a2 * key[1], p3 = a3 * key[2];
        const Int g = gcd_int(gcd_int(p1, p2), p3);
        found[i].push_back({{p1 / g, p2 / g, p3 / g}, {A1[i], a2, a3, key[0], key[1], key[2]}});
      }
    }
  });
  std::vector<SolutionRow> rows;
  for (auto& f : found) {
    for (auto& r : f) {
      rep.popular.hits.push_back({r.source[0], r.source[1], r.source[2]});
      rows.push_back(std::move(r));
    }
  }
  rep.popular.count = rep.popular.hits.size();
  rep.S = rep.S_prime.unite(primes_of({key[0], key[1], key[2]}));
  finish(rep, cfg, std::move(rows));
  return rep;
}

HarvestReport prop1_run(Int x, const PrimeSet& T1, const PrimeSet& T2, const PrimeSet& T3, unsigned threads) {
  HarvestConfig cfg;
  cfg.equation = Equation::prop1;
  cfg.X = x;
  cfg.T1 = T1;
  cfg.T2 = T2;
  cfg.T3 = T3;
  cfg.threads = threads;
  return prop1_run(cfg);
}

HarvestReport harvest(const HarvestConfig& cfg) {
  switch (cfg.equation) {
    case Equation::thm1: return thm1_run(cfg);
    case Equation::thm2: return thm2_run(cfg);
    case Equation::prop1: return prop1_run(cfg);
  }
  throw DomainError("unknown equation");
}

SolutionBucket popular_bucket(std::span<const SolutionBucket> buckets) {
  const SolutionBucket* best = nullptr;
  for (const auto& b : buckets) {
    if (b.count == 0) continue;
    if (!best || b.count > best->count || (b.count == best->count && b.key < best->key)) best = &b;
  }
  if (!best) throw EmptyHarvest("popular_bucket: every bucket is empty");
  return *best;
}

bool verify_sunit_solution(std::span<const Int> t, Equation e, const PrimeSet& S) {
  switch (e) {
    case Equation::thm1:
      if (t.size() != 2 || t[0] + 1 != t[1]) return false;
      break;
    case Equation::thm2:
      if (t.size() != 3 || t[0] + t[1] + 1 != t[2]) return false;
      break;
    case Equation::prop1:
      if (t.size() != 3 || t[0] + t[1] + t[2] != 0) return false;
      if (gcd_int(gcd_int(t[0], t[1]), t[2]) != 1) return false;
      break;
  }
  for (Int v : t) {
    if (v == 0 || !factor_over(abs_int(v), S)) return false;
  }
  return true;
}

std::vector<Int> normalize_prop1(std::span<const Int> t) {
  if (t.size() != 3) throw DomainError("normalize_prop1: need three components");
  std::vector<Int> v{abs_int(t[0]), abs_int(t[1]), abs_int(t[2])};
  std::sort(v.begin(), v.end());
  return v;
}

CollisionStats pair_collision_stats(std::span<const Int> C, CollisionMode mode, std::uint64_t effort_cap) {
  std::map<Int, std::uint64_t> counts;
  const long double n = static_cast<long double>(C.size());
  if (mode == CollisionMode::difference) {
    if (n * n > effort_cap) throw ResourceLimit("pair_collision_stats: effort cap exceeded");
    for (Int c : C)
      for (Int d : C)
        if (c != d) ++counts[c - d];
  } else {
    if (n * n > effort_cap) throw ResourceLimit("pair_collision_stats: effort cap exceeded");
    std::map<Int, std::uint64_t> products;
    for (Int c : C)
      for (Int d : C) ++products[checked_mul(c, d)];
    const long double m = static_cast<long double>(products.size());
    if (m * m > effort_cap) throw ResourceLimit("pair_collision_stats: effort cap exceeded");
    for (const auto& [p, pm] : products)
      for (const auto& [q, qm] : products)
        if (p != q) counts[p - q] += pm * qm;
  }
  CollisionStats st;
  for (const auto& [d, cnt] : counts) {
    const bool better = cnt > st.max_multiplicity ||
                        (cnt == st.max_multiplicity &&
                         (abs_int(d) < abs_int(st.witness) || (abs_int(d) == abs_int(st.witness) && d > 0)));
    if (better) {
      st.max_multiplicity = cnt;
      st.witness = d;
    }
  }
  return st;
}

}  // namespace sunit
