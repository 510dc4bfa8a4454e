// Command-line surface: market generation, solving, oracle enumeration, the
// Set Offering dynamic, transition scenarios, and the theorem suite.
//
// Exit codes: 0 success, 1 usage or parse error, 2 precondition violation,
// 3 theorem violation detected.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "restab/json_io.hpp"
#include "restab/stability.hpp"
#include "restab/theorem_suite.hpp"

namespace {

using namespace restab;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitViolation = 3;

int default_max_enum() {
  if (const char* env = std::getenv("RESTAB_MAX_ENUM")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw InputError("RESTAB_MAX_ENUM is not an integer");
    }
  }
  return EnumerationGuard{}.max_workers;
}

struct ConfigFlags {
  std::uint64_t seed = 42;
  int trials = 100;
  int firms = 3;
  int workers = 5;
  int quota_max = 3;
  double density = 0.5;
  std::string family = "responsive";
  int retire = 0;
  int add_firms = 0;

  ScenarioConfig to_config() const {
    ScenarioConfig cfg;
    cfg.rng_seed = seed;
    cfg.n_trials = trials;
    cfg.n_firms = firms;
    cfg.n_workers = workers;
    cfg.quota_max = quota_max;
    cfg.acceptability_density = density;
    cfg.family = family_from_string(family);
    if (retire > 0 || add_firms > 0) cfg.transition = TransitionShape{retire, add_firms};
    cfg.validate();
    return cfg;
  }
};

void add_config_flags(CLI::App& cmd, ConfigFlags& flags, bool with_transition) {
  cmd.add_option("--seed", flags.seed, "PRNG seed (SplitMix64 streams)");
  cmd.add_option("--trials", flags.trials, "number of trials");
  cmd.add_option("--firms", flags.firms, "firms per generated market");
  cmd.add_option("--workers", flags.workers, "workers per generated market");
  cmd.add_option("--quota-max", flags.quota_max, "quotas are drawn from [1, quota-max]");
  cmd.add_option("--density", flags.density, "acceptability probability in [0,1]");
  cmd.add_option("--family", flags.family, "responsive | explicit-validated");
  if (with_transition) {
    cmd.add_option("--retire", flags.retire, "workers retired per transition");
    cmd.add_option("--add-firms", flags.add_firms, "firms entering per transition");
  }
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"many-to-one matching markets: stable lattices and restabilization"};
  app.require_subcommand(1);

  ConfigFlags gen_flags;
  std::string gen_out;
  std::string gen_out_dir;
  int gen_trial = 0;
  auto* gen = app.add_subcommand("gen", "emit seeded random market JSON");
  add_config_flags(*gen, gen_flags, false);
  gen->add_option("--trial", gen_trial, "trial index of the emitted market");
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_option("--out-dir", gen_out_dir, "emit market_NNN.json per trial here");

  std::string solve_market;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "compute the two optimal stable matchings");
  solve->add_option("market", solve_market, "market JSON file")->required();
  solve->add_option("--out", solve_out, "output file (default stdout)");

  std::string enum_market;
  std::string enum_out;
  int max_enum = default_max_enum();
  auto* stable_set = app.add_subcommand("stable-set", "brute-force the full stable set");
  stable_set->add_option("market", enum_market, "market JSON file")->required();
  stable_set->add_option("--max-enum", max_enum, "worker cap for the enumeration oracle");
  stable_set->add_option("--out", enum_out, "output file (default stdout)");

  std::string so_market;
  std::string so_matching;
  std::string so_out;
  auto* so = app.add_subcommand("so", "run the Set Offering dynamic on a matching");
  so->add_option("market", so_market, "market JSON file")->required();
  so->add_option("matching", so_matching, "firm quasi-stable matching JSON file")->required();
  so->add_option("--out", so_out, "output file (default stdout)");

  std::string tr_market;
  std::string tr_matching;
  std::string tr_spec;
  std::string tr_out_dir;
  int tr_max_enum = default_max_enum();
  auto* transition = app.add_subcommand("transition", "restabilize across a population change");
  transition->add_option("market", tr_market, "base market JSON file")->required();
  transition->add_option("matching", tr_matching, "stable matching JSON file")->required();
  transition->add_option("transition", tr_spec, "transition JSON file")->required();
  transition->add_option("--out-dir", tr_out_dir, "directory for trace/report/CSV")->required();
  transition->add_option("--max-enum", tr_max_enum, "worker cap for the enumeration oracle");

  ConfigFlags verify_flags;
  std::string verify_out;
  int verify_max_enum = default_max_enum();
  bool self_test_corrupt = false;
  auto* verify = app.add_subcommand("verify", "run the full theorem suite");
  add_config_flags(*verify, verify_flags, true);
  verify->add_option("--max-enum", verify_max_enum, "worker cap for the enumeration oracle");
  verify->add_option("--out", verify_out, "report file (default stdout)");
  verify->add_flag("--self-test-corrupt", self_test_corrupt,
                   "perturb checked outputs to prove violations are caught");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gen->parsed()) {
    const ScenarioConfig cfg = gen_flags.to_config();
    if (!gen_out_dir.empty()) {
      fs::create_directories(gen_out_dir);
      for (int trial = 0; trial < cfg.n_trials; ++trial) {
        char name[32];
        std::snprintf(name, sizeof(name), "market_%03d.json", trial);
        emit(market_to_json(generate_market(cfg, trial)), (fs::path(gen_out_dir) / name).string());
      }
    } else {
      emit(market_to_json(generate_market(cfg, gen_trial)), gen_out);
    }
    return kExitOk;
  }

  if (solve->parsed()) {
    const Market m = market_from_json(load_json_file(solve_market));
    nlohmann::json j;
    j["firm_optimal"] = matching_to_json(da_firm_proposing(m));
    j["worker_optimal"] = matching_to_json(da_worker_proposing(m));
    emit(j, solve_out);
    return kExitOk;
  }

  if (stable_set->parsed()) {
    const Market m = market_from_json(load_json_file(enum_market));
    const StableSet stable =
        enumerate_stable(m, EnumerationGuard{max_enum, EnumerationGuard{}.max_firms});
    nlohmann::json j;
    j["stable_matchings"] = nlohmann::json::array();
    for (const Matching& mu : stable.matchings) {
      j["stable_matchings"].push_back(matching_to_json(mu));
    }
    j["count"] = stable.matchings.size();
    emit(j, enum_out);
    return kExitOk;
  }

  if (so->parsed()) {
    const Market m = market_from_json(load_json_file(so_market));
    const Matching start = matching_from_json(load_json_file(so_matching), m);
    emit(trace_to_json(set_offering(m, start)), so_out);
    return kExitOk;
  }

  if (transition->parsed()) {
    const Market base = market_from_json(load_json_file(tr_market));
    const Matching mu_old = matching_from_json(load_json_file(tr_matching), base);
    const TransitionSpec spec = transition_spec_from_json(load_json_file(tr_spec));
    const EnumerationGuard guard{tr_max_enum, EnumerationGuard{}.max_firms};
    const ScenarioOutcome outcome = run_scenario(base, mu_old, spec, guard);

    fs::create_directories(tr_out_dir);
    const fs::path dir(tr_out_dir);
    write_text_file(dir / "trace.json", trace_to_json(outcome.trace).dump(2) + "\n");
    write_text_file(dir / "report.json", transition_report_to_json(outcome.report).dump(2) + "\n");
    write_text_file(dir / "summary.csv", scenario_csv(outcome));
    std::cout << "wrote " << (dir / "trace.json").string() << ", "
              << (dir / "report.json").string() << ", " << (dir / "summary.csv").string() << "\n";
    return outcome.report.all_passed() ? kExitOk : kExitViolation;
  }

  if (verify->parsed()) {
    const ScenarioConfig cfg = verify_flags.to_config();
    SuiteOptions options;
    options.guard = EnumerationGuard{verify_max_enum, EnumerationGuard{}.max_firms};
    options.corrupt_for_self_test = self_test_corrupt;
    const SuiteReport report = run_theorem_suite(cfg, options);
    emit(suite_report_to_json(report), verify_out);
    return report.all_passed() ? kExitOk : kExitViolation;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
