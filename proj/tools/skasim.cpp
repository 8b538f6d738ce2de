#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ska/config.hpp"
#include "ska/harness.hpp"
#include "ska/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool trials_flag = true) {
  cmd->add_option("--config", flags.config_path, "configuration file")
      ->required();
  cmd->add_option("--out", flags.out_path, "output path ('-' = stdout)");
  const auto add_u64 = [cmd](const char* name, std::optional<std::uint64_t>& slot,
                             const char* help) {
    cmd->add_option_function<std::uint64_t>(
           name, [&slot](std::uint64_t v) { slot = v; }, help);
  };
  add_u64("--seed", flags.seed, "override the config seed");
  if (trials_flag) add_u64("--trials", flags.trials, "number of trials");
  cmd->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-user secret-key-agreement simulator under pilot "
               "contamination"};
  app.require_subcommand(1);

  CommonFlags sim_flags, sweep_flags, analytic_flags, verify_flags;
  bool sim_true_w = false;
  std::vector<std::string> verify_tols;

  CLI::App* sim = app.add_subcommand("simulate", "raw per-trial records");
  add_common(sim, sim_flags);
  sim->add_flag("--true-w", sim_true_w,
                "diagnostic mode: estimators receive the true attack strength");

  CLI::App* sweep = app.add_subcommand("sweep", "one-axis Monte-Carlo sweep");
  add_common(sweep, sweep_flags);

  CLI::App* analytic =
      app.add_subcommand("analytic", "closed-form tables over a sweep grid");
  add_common(analytic, analytic_flags, false);

  CLI::App* verify = app.add_subcommand("verify", "oracle verification suite");
  add_common(verify, verify_flags);
  verify->add_option("--tol", verify_tols,
                     "tolerance override name=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (sim->parsed()) {
      ska::SystemConfig cfg = ska::load_config(sim_flags.config_path);
      if (sim_flags.seed) cfg.seed = *sim_flags.seed;
      const std::uint64_t trials = sim_flags.trials.value_or(1000);
      const auto records = ska::run_trials_collect(
          cfg, trials, sim_flags.workers, ska::TrialOptions{!sim_true_w});
      write_output(sim_flags.out_path, ska::trials_csv(records));
    } else if (sweep->parsed()) {
      ska::SweepSpec spec = ska::load_sweep_spec(sweep_flags.config_path);
      if (sweep_flags.seed) spec.base.seed = *sweep_flags.seed;
      if (sweep_flags.trials) spec.trials = *sweep_flags.trials;
      if (sweep_flags.workers > 0) spec.workers = sweep_flags.workers;
      const auto rows = ska::run_sweep(spec);
      write_output(sweep_flags.out_path, ska::sweep_csv(spec, rows));
    } else if (analytic->parsed()) {
      ska::SweepSpec spec = ska::load_sweep_spec(analytic_flags.config_path);
      const auto rows = ska::emit_analytics(spec.base, spec.axis, spec.values);
      write_output(analytic_flags.out_path, ska::analytic_csv(spec.axis, rows));
    } else if (verify->parsed()) {
      ska::SystemConfig cfg = ska::load_config(verify_flags.config_path);
      if (verify_flags.seed) cfg.seed = *verify_flags.seed;
      ska::VerifyOptions opt;
      if (verify_flags.trials) opt.mc_trials = *verify_flags.trials;
      if (verify_flags.workers > 0) opt.workers = verify_flags.workers;
      for (const auto& spec : verify_tols) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("--tol expects name=value, got " + spec);
        opt.set(spec.substr(0, eq), std::stod(spec.substr(eq + 1)));
      }
      const ska::VerifyReport report = ska::verify_oracles(cfg, opt);
      write_output(verify_flags.out_path, report.to_string());
      if (!report.all_pass()) return kExitVerifyFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}
