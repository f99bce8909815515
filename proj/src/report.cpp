#include "sunit/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "sunit/characters.hpp"
#include "sunit/circle.hpp"
#include "sunit/errors.hpp"
#include "sunit/exponents.hpp"
#include "sunit/oracle.hpp"
#include "sunit/siegel.hpp"

namespace sunit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

// Typed access to a parameter map, every failure naming its key.
class Params {
 public:
  explicit Params(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& k) const { return kv_.count(k) != 0; }

  const std::string& str(const std::string& k) const {
    const auto it = kv_.find(k);
    if (it == kv_.end()) throw ConfigError(k, "missing required key '" + k + "'");
    return it->second;
  }
  std::string str(const std::string& k, const std::string& def) const { return has(k) ? str(k) : def; }

  Int integer(const std::string& k) const {
    try {
      return parse_int(str(k));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(k, "key '" + k + "' expects an integer, got '" + str(k) + "'");
    }
  }
  Int integer(const std::string& k, Int def) const { return has(k) ? integer(k) : def; }

  Int positive(const std::string& k, Int def, Int min = 1) const {
    const Int v = integer(k, def);
    if (v < min) throw ConfigError(k, "key '" + k + "' must be >= " + to_string(min));
    return v;
  }

  double real(const std::string& k) const {
    const std::string& s = str(k);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v))
      throw ConfigError(k, "key '" + k + "' expects a real number, got '" + s + "'");
    return v;
  }
  double real(const std::string& k, double def) const { return has(k) ? real(k) : def; }

  bool boolean(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const std::string& s = str(k);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(k, "key '" + k + "' expects true or false, got '" + s + "'");
  }

  std::vector<Int> integers(const std::string& k) const {
    std::vector<Int> out;
    for (const auto& part : split(str(k), ',')) {
      if (part.empty()) continue;
      try {
        out.push_back(parse_int(part));
      } catch (const std::exception&) {
        throw ConfigError(k, "key '" + k + "' expects a comma-separated integer list");
      }
    }
    return out;
  }

  PrimeSet primes(const std::string& k) const {
    std::vector<u64> ps;
    for (Int v : integers(k)) {
      if (v < 2 || !fits_u64(v) || !is_prime(static_cast<u64>(v)))
        throw ConfigError(k, "key '" + k + "' contains the non-prime " + to_string(v));
      ps.push_back(static_cast<u64>(v));
    }
    return PrimeSet::from_unsorted(std::move(ps));
  }

 private:
  const KeyValues& kv_;
};

Int floor_power(Int X, double e) {
  return static_cast<Int>(std::floor(std::pow(static_cast<double>(X), e) + 1e-9));
}

json solutions_json(const std::vector<std::vector<Int>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (Int v : r) row.push_back(int_to_json(v));
    arr.push_back(row);
  }
  return arr;
}

std::vector<std::vector<Int>> rows_from_json(const json& j) {
  std::vector<std::vector<Int>> out;
  for (const auto& row : j) {
    std::vector<Int> r;
    for (const auto& v : row) r.push_back(int_from_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Int> ints_from_json(const json& j) {
  std::vector<Int> r;
  for (const auto& v : j) r.push_back(int_from_json(v));
  return r;
}

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (Int x : v) a.push_back(int_to_json(x));
  return a;
}

json complex_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

void require_keys(const RunConfig& rc) {
  const auto& allowed = allowed_keys(rc.subcommand);
  for (const auto& [k, v] : rc.params) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ConfigError(k, "unknown key '" + k + "' for subcommand " + rc.subcommand);
  }
}

// ---- subcommand bodies -------------------------------------------------

void run_harvest(const RunConfig& rc, RunReport& out) {
  const HarvestConfig cfg = harvest_config_from(rc);
  const HarvestReport rep = harvest(cfg);
  json& p = out.report["payload"];
  p["parameters"] = {{"X", int_to_json(cfg.X)}, {"Y", int_to_json(cfg.Y)}, {"Z", int_to_json(cfg.Z)},
                     {"W", int_to_json(cfg.W)}, {"Q", int_to_json(cfg.Q)}, {"R", int_to_json(cfg.R)},
                     {"delta", cfg.delta},      {"epsilon", cfg.epsilon}, {"T1", to_json(cfg.T1)},
                     {"T2", to_json(cfg.T2)},   {"T3", to_json(cfg.T3)}};
  p["harvest"] = to_json(rep);
  std::ostringstream csv;
  write_solutions_csv(csv, rep);
  out.csv = csv.str();
}

void run_oracle(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  const std::string query = p.str("query", "sunit_pairs");
  const std::uint64_t cap = rc.cap.value_or(static_cast<std::uint64_t>(p.positive("effort_cap", kDefaultEffortCap)));
  OracleResult r;
  std::vector<std::string> header;
  if (query == "sunit_pairs") {
    r = brute_sunit_pairs(p.primes("primes"), p.positive("bound", 0), cap);
    header = {"A", "C"};
  } else if (query == "prop1_triples") {
    r = brute_prop1_triples(p.primes("primes"), p.positive("bound", 0), cap);
    header = {"a", "b", "c"};
  } else if (query == "linear_count") {
    const auto A = p.integers("A");
    const auto C = p.integers("C");
    r = brute_linear_count(A, C, static_cast<u64>(p.positive("W", 0, 0)), p.integer("shift", 1), cap);
  } else {
    throw ConfigError("query", "unknown oracle query '" + query + "'");
  }
  json& j = out.report["payload"];
  j["query"] = r.query;
  j["count"] = int_to_json(r.count);
  j["effort"] = r.effort;
  j["solutions"] = solutions_json(r.solutions);
  if (!header.empty()) {
    out.csv = csv_line(header);
    for (const auto& row : r.solutions) {
      std::vector<std::string> cells;
      for (Int v : row) cells.push_back(to_string(v));
      out.csv += csv_line(cells);
    }
  }
}

void run_exponents(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  json& j = out.report["payload"];
  j["lambda0"] = lambda0();
  j["lambda1"] = lambda1();
  if (p.boolean("frontier", false)) {
    const int kmax = static_cast<int>(p.positive("kmax", 12, 2));
    if (kmax > 30) throw ConfigError("kmax", "kmax must be <= 30");
    out.csv = csv_line({"k", "I", "theta", "frontier"});
    double best = 0;
    bool below = true;
    for (int k = 2; k <= kmax; ++k) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
        std::vector<int> I;
        std::string label;
        for (int i = 2; i <= k; ++i) {
          if (!((mask >> (i - 2)) & 1)) continue;
          I.push_back(i);
          label += (label.empty() ? "" : " ") + std::to_string(i);
        }
        const auto f = optimality_frontier(k, I);
        best = std::max(best, f.alpha_sup);
        below = below && f.alpha_sup < 0.2;
        out.csv += csv_line({std::to_string(k), label, fmt(f.theta), fmt(f.alpha_sup)});
      }
    }
    j["kmax"] = kmax;
    j["max_frontier"] = best;
    j["all_below_one_fifth"] = below;
    return;
  }
  const Theorem t = parse_theorem(p.str("theorem"));
  const Variant v = parse_variant(p.str("variant"));
  const double alpha = p.real("alpha");
  json cons = json::array();
  for (const auto& c : check_constraints(t, v, alpha))
    cons.push_back({{"name", c.name}, {"margin", c.value}, {"satisfied", c.satisfied}});
  j["theorem"] = to_string(t);
  j["variant"] = to_string(v);
  j["alpha"] = alpha;
  j["constraints"] = cons;
  const auto e = regime_exponents(t, v, alpha);
  j["exponents"] = {{"Z", e.z_exp}, {"W", e.w_exp}};
  if (t == Theorem::thm1) {
    j["exponents"]["Q"] = e.q_exp;
    j["exponents"]["R"] = e.r_exp;
  } else {
    j["exponents"]["Y"] = e.y_exp;
  }
}

PrimeSet prime_spec(const Params& p) {
  if (p.has("primes")) return p.primes("primes");
  return primes_in_range(static_cast<u64>(p.positive("primes_lo", 2)), static_cast<u64>(p.positive("primes_hi", 0)));
}

void run_smooth(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  const PrimeSet T = prime_spec(p);
  const Int lo = p.positive("lo", 1);
  const Int hi = p.positive("hi", 0);
  const auto s = enumerate_squarefree_smooth(T, lo, hi, rc.cap.value_or(kDefaultEnumerationCap));
  json& j = out.report["payload"];
  j["primes"] = to_json(T);
  j["lo"] = int_to_json(lo);
  j["hi"] = int_to_json(hi);
  j["count"] = s.size();
  if (p.has("lemma_a") && T.size() > 0) {
    const auto b = lemma2_lower_bound_from_count(static_cast<double>(hi), p.real("lemma_a"), T.size());
    j["lemma2"] = {{"b", b.b}, {"k", b.k}, {"value", b.value}, {"holds", static_cast<double>(s.size()) >= b.value}};
  }
  out.csv = "value\n";
  for (const auto& m : s.members) out.csv += to_string(m.value) + "\n";
}

void run_siegel(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  std::vector<std::int64_t> alpha;
  for (Int v : p.integers("alpha")) alpha.push_back(static_cast<std::int64_t>(v));
  const auto B = static_cast<std::int64_t>(p.positive("B", 0));
  const std::string path = p.str("path", "automatic");
  SiegelPath sp = SiegelPath::automatic;
  if (path == "collision")
    sp = SiegelPath::collision;
  else if (path == "fast3")
    sp = SiegelPath::fast3;
  else if (path != "automatic")
    throw ConfigError("path", "path must be automatic, collision or fast3");
  json& j = out.report["payload"];
  const auto s = siegel_small_solution(alpha, B, sp);
  j["box"] = siegel_box(alpha.size(), B);
  j["bound"] = s.bound;
  j["z"] = s.z;
  if (p.has("nonzero_cap")) {
    const auto nz = siegel_nonzero_coords(alpha, B, p.real("nonzero_cap"));
    j["nonzero"] = nz ? json(nz->z) : json(nullptr);
  }
}

void run_verify_charsums(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  const u64 qmax = static_cast<u64>(p.positive("qmax", 300, 3));
  out.csv = csv_line({"modulus", "character_index", "statistic", "bound", "ratio"});
  double max_ratio = 0, max_fourth = 0;
  u64 arg_q = 0, moduli = 0;
  std::size_t arg_chi = 0;
  u64 arg_M = 0, arg_N = 0;
  for (u64 q = 3; q <= qmax; ++q) {
    if (!multiplicative_functions(q).mu) continue;
    ++moduli;
    const auto r = polya_vinogradov_check(q, q, 2 * q);
    for (const auto& row : r.rows)
      out.csv += csv_line({std::to_string(row.modulus), std::to_string(row.character_index), fmt(row.statistic),
                           fmt(row.bound), fmt(row.ratio)});
    if (r.max_ratio > max_ratio) {
      max_ratio = r.max_ratio;
      arg_q = q;
      arg_chi = r.argmax_character;
      arg_M = r.argmax_M;
      arg_N = r.argmax_N;
    }
    for (double v : fourth_moment_ratios(q, 2 * q)) max_fourth = std::max(max_fourth, v);
  }
  json& j = out.report["payload"];
  j["qmax"] = qmax;
  j["moduli_checked"] = moduli;
  j["polya_vinogradov"] = {{"max_ratio", max_ratio},
                           {"argmax", {{"q", arg_q}, {"character_index", arg_chi}, {"M", arg_M}, {"N", arg_N}}},
                           {"passed", max_ratio <= 1.0}};
  j["fourth_moment"] = {{"max_ratio", max_fourth}, {"ceiling", 50.0}, {"exploratory", true}};
}

void run_verify_sieve(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  const auto trials = static_cast<std::uint64_t>(p.positive("trials", 100));
  const auto max_modulus = static_cast<u64>(p.positive("max_modulus", 50, 2));
  const auto max_length = static_cast<u64>(p.positive("max_length", 200));
  std::mt19937_64 rng(rc.seed);
  out.csv = csv_line({"trial", "lhs", "rhs", "ratio"});
  bool all = true;
  double worst = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<u64> moduli;
    const u64 count = 1 + rng() % 4;
    while (moduli.size() < count) {
      const u64 q = 1 + rng() % max_modulus;
      if (multiplicative_functions(q).mu != 0) moduli.push_back(q);
    }
    const Int Y = static_cast<Int>(rng() % 100);
    const Int Z = Y + 1 + static_cast<Int>(rng() % max_length);
    std::normal_distribution<double> g;
    std::vector<cplx> a(static_cast<std::size_t>(Z - Y));
    for (auto& v : a) v = {g(rng), g(rng)};
    const auto r = large_sieve_check(moduli, Y, Z, a);
    all = all && r.holds;
    const double ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
    worst = std::max(worst, ratio);
    out.csv += csv_line({std::to_string(t), fmt(r.lhs), fmt(r.rhs), fmt(ratio)});
  }
  json& j = out.report["payload"];
  j["trials"] = trials;
  j["all_hold"] = all;
  j["max_ratio"] = worst;
}

void run_verify_circle(const RunConfig& rc, RunReport& out) {
  const Params p(rc.params);
  const SmoothSet A = make_smooth_set(p.integers("A"));
  const SmoothSet C = make_smooth_set(p.integers("C"));
  const double mu = p.real("mu", 0.5);
  const bool spectrum = p.boolean("spectrum", true);
  const auto d = thm3_decompose(A, C, mu, rc.threads, spectrum);
  json& j = out.report["payload"];
  j["thm3"] = {{"mu", mu},
               {"Z", int_to_json(d.Z)},
               {"exact_count", int_to_json(d.exact_count)},
               {"main", d.main},
               {"spectrum_total", complex_json(d.spectrum_total)},
               {"recombination_error", d.recombination_error()},
               {"lambda", d.lambda},
               {"truncation_height", d.truncation_height},
               {"truncated_sum", complex_json(d.truncated_sum)},
               {"tail_sum", complex_json(d.tail_sum)},
               {"smu_truncated_sum", complex_json(d.smu_truncated_sum)},
               {"main_error_scale", d.main_error_scale},
               {"tail_error_scale", d.tail_error_scale},
               {"coprimality_violations", d.coprimality_violations},
               {"a_in_range", d.a_in_range},
               {"mu_in_range", d.mu_in_range}};
  if (p.has("W")) {
    const auto m = multiplicative_decomposition(A, C, static_cast<u64>(p.positive("W", 0, 0)), rc.threads);
    j["multiplicative"] = {{"W", p.str("W")},
                           {"exact_count", int_to_json(m.exact_count)},
                           {"main", m.main},
                           {"remainder", m.remainder},
                           {"remainder_imag", m.remainder_imag}};
  }
  if (spectrum) {
    out.csv = csv_line({"a", "h", "s_mu_abs", "fraction_sum_abs", "term_re", "term_im"});
    for (const auto& t : d.spectrum)
      out.csv += csv_line({std::to_string(t.a), to_string(t.h), fmt(t.s_mu_abs), fmt(t.fraction_abs),
                           fmt(t.term.real()), fmt(t.term.imag())});
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("--out", "cannot write " + path);
  f << body;
}

}  // namespace

json int_to_json(Int v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return to_string(v);
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? static_cast<Int>(j.get<std::uint64_t>()) : j.get<std::int64_t>();
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw DomainError("expected an integer in JSON");
}

json to_json(const PrimeSet& s) { return json(std::vector<u64>(s.begin(), s.end())); }

json to_json(const BoundComparison& b) {
  return {{"s", b.s},         {"epsilon", b.epsilon}, {"formula", b.formula}, {"observed", b.observed},
          {"ratio", b.ratio}, {"flagged", b.flagged}, {"label", b.label}};
}

json to_json(const HarvestReport& r) {
  json j;
  j["equation"] = to_string(r.equation);
  j["S_prime"] = to_json(r.S_prime);
  j["S"] = to_json(r.S);
  j["popular"] = {{"key", ints_json(r.popular.key)}, {"count", r.popular.count}, {"hits", solutions_json(r.popular.hits)}};
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back({{"values", ints_json(s.values)}, {"source", ints_json(s.source)}});
  j["solutions"] = sols;
  j["bucket_stats"] = {{"total_hits", r.bucket_stats.total_hits},
                       {"bucket_count", r.bucket_stats.bucket_count},
                       {"max_load", r.bucket_stats.max_load},
                       {"pigeonhole_floor", r.bucket_stats.pigeonhole_floor}};
  j["bound_comparison"] = to_json(r.bound_comparison);
  json audit = json::object();
  for (const auto& [k, v] : r.audit) audit[k] = int_to_json(v);
  j["audit"] = audit;
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  return j;
}

HarvestReport harvest_report_from_json(const json& j) {
  HarvestReport r;
  r.equation = parse_equation(j.at("equation").get<std::string>());
  r.S_prime = PrimeSet(j.at("S_prime").get<std::vector<u64>>());
  r.S = PrimeSet(j.at("S").get<std::vector<u64>>());
  r.popular.key = ints_from_json(j.at("popular").at("key"));
  r.popular.count = j.at("popular").at("count").get<std::uint64_t>();
  r.popular.hits = rows_from_json(j.at("popular").at("hits"));
  for (const auto& s : j.at("solutions"))
    r.solutions.push_back({ints_from_json(s.at("values")), ints_from_json(s.at("source"))});
  const auto& bs = j.at("bucket_stats");
  r.bucket_stats = {bs.at("total_hits").get<std::uint64_t>(), bs.at("bucket_count").get<std::uint64_t>(),
                    bs.at("max_load").get<std::uint64_t>(), bs.at("pigeonhole_floor").get<std::uint64_t>()};
  const auto& b = j.at("bound_comparison");
  r.bound_comparison = {b.at("s").get<std::uint64_t>(), b.at("epsilon").get<double>(),
                        b.at("formula").get<double>(),  b.at("observed").get<std::uint64_t>(),
                        b.at("ratio").get<double>(),    b.at("flagged").get<bool>(),
                        b.at("label").get<std::string>()};
  for (const auto& [k, v] : j.at("audit").items()) r.audit[k] = int_from_json(v);
  for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = v.get<double>();
  return r;
}

std::vector<std::string> solution_csv_header(Equation e) {
  switch (e) {
    case Equation::thm1: return {"A", "C", "a", "c", "u", "w"};
    case Equation::thm2: return {"A", "B", "C", "a", "b", "c", "u", "w"};
    case Equation::prop1: return {"A", "B", "C", "alpha1", "alpha2", "alpha3", "z1", "z2", "z3"};
  }
  return {};
}

void write_solutions_csv(std::ostream& out, const HarvestReport& r) {
  out << csv_line(solution_csv_header(r.equation));
  for (const auto& s : r.solutions) {
    std::vector<std::string> cells;
    for (Int v : s.values) cells.push_back(to_string(v));
    for (Int v : s.source) cells.push_back(to_string(v));
    out << csv_line(cells);
  }
}

std::vector<SolutionRow> read_solutions_csv(std::istream& in, Equation e) {
  const auto header = solution_csv_header(e);
  const std::size_t nvalues = e == Equation::thm1 ? 2 : 3;
  std::string line;
  if (!std::getline(in, line) || split(trim(line), ',') != header) throw DomainError("solutions CSV: unexpected header");
  std::vector<SolutionRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != header.size()) throw DomainError("solutions CSV: wrong number of cells");
    SolutionRow r;
    for (std::size_t i = 0; i < cells.size(); ++i) (i < nvalues ? r.values : r.source).push_back(parse_int(cells[i]));
    rows.push_back(std::move(r));
  }
  return rows;
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "config line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key on line " + std::to_string(lineno));
    if (!kv.emplace(key, value).second) throw ConfigError(key, "key '" + key + "' given twice");
  }
  return kv;
}

KeyValues load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot read config file " + path);
  return parse_key_values(f);
}

const std::vector<std::string>& allowed_keys(const std::string& sub) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"thm1", {"primes_lo", "primes_hi", "T1", "T2", "T3", "X", "Z", "W", "Q", "R", "alpha", "variant", "delta",
                "epsilon", "enumeration_cap", "hit_cap"}},
      {"thm2", {"primes_lo", "primes_hi", "T1", "T2", "T3", "X", "Y", "Z", "W", "alpha", "variant", "delta", "epsilon",
                "coprime_filter", "enumeration_cap", "hit_cap"}},
      {"prop1", {"primes_lo", "primes_hi", "T1", "T2", "T3", "x", "epsilon", "enumeration_cap", "hit_cap"}},
      {"oracle", {"query", "primes", "bound", "A", "C", "W", "shift", "effort_cap"}},
      {"exponents", {"theorem", "variant", "alpha", "frontier", "kmax"}},
      {"smooth", {"primes", "primes_lo", "primes_hi", "lo", "hi", "lemma_a"}},
      {"siegel", {"alpha", "B", "path", "nonzero_cap"}},
      {"verify-charsums", {"qmax"}},
      {"verify-sieve", {"trials", "max_modulus", "max_length"}},
      {"verify-circle", {"A", "C", "mu", "W", "spectrum"}},
  };
  const auto it = keys.find(sub);
  if (it == keys.end()) throw ConfigError("subcommand", "unknown subcommand '" + sub + "'");
  return it->second;
}

HarvestConfig harvest_config_from(const RunConfig& rc) {
  require_keys(rc);
  const Params p(rc.params);
  HarvestConfig cfg;
  cfg.equation = parse_equation(rc.subcommand);
  cfg.threads = rc.threads;
  cfg.epsilon = p.real("epsilon", 0.01);
  cfg.enumeration_cap = static_cast<std::uint64_t>(p.positive("enumeration_cap", kDefaultEnumerationCap));
  cfg.hit_cap = static_cast<std::uint64_t>(p.positive("hit_cap", kDefaultHitCap));
  if (rc.cap) cfg.enumeration_cap = *rc.cap;

  if (p.has("T1") || p.has("T2") || p.has("T3")) {
    cfg.T1 = p.primes("T1");
    cfg.T2 = p.primes("T2");
    cfg.T3 = p.primes("T3");
  } else {
    const auto sets = split_disjoint_prime_sets(static_cast<u64>(p.positive("primes_lo", 2)),
                                                static_cast<u64>(p.positive("primes_hi", 0)), 3);
    cfg.T1 = sets[0];
    cfg.T2 = sets[1];
    cfg.T3 = sets[2];
  }

  if (cfg.equation == Equation::prop1) {
    cfg.X = p.positive("x", 0, 2);
    return cfg;
  }
  cfg.X = p.positive("X", 0, 2);
  cfg.delta = p.real("delta", 0.5);
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta", "delta must lie in (0, 1)");
  const Theorem t = cfg.equation == Equation::thm1 ? Theorem::thm1 : Theorem::thm2;
  const Variant v = parse_variant(p.str("variant", "unconditional"));
  std::optional<RegimeExponents> e;
  if (p.has("alpha")) e = regime_exponents(t, v, p.real("alpha"));
  auto scale = [&](const std::string& key, double RegimeExponents::*field) -> Int {
    if (p.has(key)) return p.positive(key, 0);
    if (!e) throw ConfigError(key, "key '" + key + "' is required when alpha is not given");
    return std::max<Int>(1, floor_power(cfg.X, (*e).*field));
  };
  cfg.Z = scale("Z", &RegimeExponents::z_exp);
  cfg.W = scale("W", &RegimeExponents::w_exp);
  if (cfg.equation == Equation::thm1) {
    if (p.has("Q"))
      cfg.Q = p.positive("Q", 0);
    else if (v == Variant::unconditional)
      cfg.Q = std::max<Int>(1, floor_power(cfg.Z, 1.0 - cfg.delta));
    else
      cfg.Q = std::max<Int>(1, floor_power(cfg.X, 0.5));
    cfg.R = p.has("R") ? p.positive("R", 0) : cfg.X / cfg.Q;
  } else {
    cfg.Y = scale("Y", &RegimeExponents::y_exp);
    cfg.coprime_filter = p.boolean("coprime_filter", true);
  }
  return cfg;
}

RunReport run(const RunConfig& rc) {
  RunReport out;
  const auto start = std::chrono::steady_clock::now();
  out.report["subcommand"] = rc.subcommand;
  json cfg = json::object();
  for (const auto& [k, v] : rc.params) cfg[k] = v;
  out.report["config"] = cfg;
  out.report["seed"] = rc.seed;
  if (rc.cap) out.report["cap"] = *rc.cap;
  out.report["payload"] = json::object();
  try {
    require_keys(rc);
    const std::string& s = rc.subcommand;
    if (s == "thm1" || s == "thm2" || s == "prop1")
      run_harvest(rc, out);
    else if (s == "oracle")
      run_oracle(rc, out);
    else if (s == "exponents")
      run_exponents(rc, out);
    else if (s == "smooth")
      run_smooth(rc, out);
    else if (s == "siegel")
      run_siegel(rc, out);
    else if (s == "verify-charsums")
      run_verify_charsums(rc, out);
    else if (s == "verify-sieve")
      run_verify_sieve(rc, out);
    else if (s == "verify-circle")
      run_verify_circle(rc, out);
    out.report["status"] = "ok";
    out.exit_code = kExitOk;
  } catch (const EmptyHarvest& e) {
    out.exit_code = kExitEmptyHarvest;
    out.report["status"] = "error";
    out.report["error"] = {{"kind", "EmptyHarvest"}, {"message", e.what()}};
  } catch (const ConstraintViolation& e) {
    out.exit_code = kExitConstraint;
    out.report["status"] = "error";
    out.report["error"] = {{"kind", "ConstraintViolation"}, {"inequality", e.inequality()}, {"message", e.what()}};
  } catch (const ResourceLimit& e) {
    out.exit_code = kExitResource;
    out.report["status"] = "error";
    out.report["error"] = {{"kind", "ResourceLimit"}, {"message", e.what()}};
  } catch (const ConfigError& e) {
    out.exit_code = kExitUsage;
    out.report["status"] = "error";
    out.report["error"] = {{"kind", "ConfigError"}, {"key", e.key()}, {"message", e.what()}};
  } catch (const Error& e) {
    out.exit_code = kExitUsage;
    out.report["status"] = "error";
    out.report["error"] = {{"kind", "Error"}, {"message", e.what()}};
  }
  out.report["exit_code"] = out.exit_code;
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.report["runtime"] = {{"threads", rc.threads}, {"elapsed_ms", ms}};
  if (!rc.out_path.empty()) write_file(rc.out_path, out.report.dump(2) + "\n");
  if (!rc.solutions_path.empty() && !out.csv.empty()) write_file(rc.solutions_path, out.csv);
  return out;
}

json comparable(const json& report) {
  json j = report;
  j.erase("runtime");
  return j;
}

}  // namespace sunit
