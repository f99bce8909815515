// Command-line front end: parses flags and a key=value config, then hands
// everything to sunit::run.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sunit/errors.hpp"
#include "sunit/report.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string solutions;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
  std::uint64_t cap = 0;
  std::vector<std::string> sets;
};

// Adds --<key> for every accepted parameter, storing into `values`.
void add_param_options(CLI::App* app, const std::string& sub, std::map<std::string, std::string>& values) {
  for (const auto& key : sunit::allowed_keys(sub)) {
    if (key == "frontier" || key == "spectrum" || key == "coprime_filter") {
      app->add_option_function<std::string>("--" + key, [&values, key](const std::string& v) { values[key] = v; },
                                            "true or false")
          ->expected(0, 1)
          ->default_str("true");
      continue;
    }
    app->add_option_function<std::string>("--" + key, [&values, key](const std::string& v) { values[key] = v; },
                                          "parameter " + key);
  }
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "key=value config file");
  app->add_option("--out", c.out, "JSON report path");
  app->add_option("--solutions", c.solutions, "CSV artifact path");
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  app->add_option("--seed", c.seed, "seed for randomized harnesses");
  app->add_option("--cap", c.cap, "enumeration / effort cap override");
  app->add_option("--set", c.sets, "extra KEY=VALUE parameter (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-unit harvest pipelines, character-sum and circle-method checks"};
  app.require_subcommand(1);
  Common common;
  std::map<std::string, std::string> cli_values;
  std::string chosen;

  auto make = [&](const std::string& name, const std::string& key, const std::string& help, CLI::App* parent) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, common);
    add_param_options(sub, key, cli_values);
    sub->callback([&chosen, key] { chosen = key; });
    return sub;
  };
  make("thm1", "thm1", "harvest solutions of A + 1 = C", &app);
  make("thm2", "thm2", "harvest solutions of A + B + 1 = C", &app);
  make("prop1", "prop1", "harvest coprime solutions of A + B + C = 0", &app);
  make("oracle", "oracle", "brute-force ground truth", &app);
  make("exponents", "exponents", "exponent tables, constraints and the frontier", &app);
  make("smooth", "smooth", "squarefree smooth numbers over a prime set", &app);
  make("siegel", "siegel", "small solutions of a linear form", &app);
  CLI::App* verify = app.add_subcommand("verify", "numerical identity and inequality checks");
  verify->require_subcommand(1);
  make("charsums", "verify-charsums", "Polya-Vinogradov and fourth-moment scan", verify);
  make("sieve", "verify-sieve", "multiplicative large sieve on random trials", verify);
  make("circle", "verify-circle", "additive and multiplicative decompositions", verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sunit::kExitUsage;
  }

  sunit::RunConfig rc;
  rc.subcommand = chosen;
  rc.threads = common.threads;
  rc.seed = common.seed;
  if (common.cap) rc.cap = common.cap;
  rc.out_path = common.out;
  rc.solutions_path = common.solutions;
  try {
    if (!common.config.empty()) rc.params = sunit::load_config(common.config);
    for (const auto& [k, v] : cli_values) rc.params[k] = v;
    for (const auto& s : common.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw sunit::ConfigError("--set", "--set expects KEY=VALUE, got '" + s + "'");
      rc.params[s.substr(0, eq)] = s.substr(eq + 1);
    }
  } catch (const sunit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sunit::kExitUsage;
  }

  const auto result = sunit::run(rc);
  if (common.out.empty()) std::cout << result.report.dump(2) << "\n";
  if (result.exit_code != 0 && result.report.contains("error"))
    std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
