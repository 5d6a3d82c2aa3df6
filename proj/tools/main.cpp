// ferrohyst: scenario runner, property suites and convergence studies.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ferrohyst/config.hpp"
#include "ferrohyst/convergence.hpp"
#include "ferrohyst/csv.hpp"
#include "ferrohyst/error.hpp"
#include "ferrohyst/scenario.hpp"
#include "ferrohyst/verify.hpp"

namespace fh = ferrohyst;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Common {
  std::string config;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cases;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "run configuration (INI)")->check(CLI::ExistingFile);
  app->add_option("--out-dir", c.out_dir, "output directory (beats FERROHYST_OUT)");
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--cases", c.cases, "number of random cases");
}

fh::RunConfig config_for(const Common& c, const std::string& scenario) {
  fh::RunConfig cfg = c.config.empty() ? fh::default_config(scenario.empty() ? "bipolar-linear" : scenario)
                                       : fh::load_config(c.config);
  if (!scenario.empty() && scenario != cfg.scenario) {
    throw fh::Error(fh::ErrorCode::Config,
                    fmt::format("config names scenario '{}', command line '{}'", cfg.scenario, scenario));
  }
  if (c.seed) cfg.seed = *c.seed;
  if (c.cases) cfg.cases = *c.cases;
  return cfg;
}

int run(const Common& c, const std::string& scenario) {
  const auto cfg = config_for(c, scenario);
  const auto dir = fh::resolve_output_dir(c.out_dir, cfg.output_dir);
  for (const auto& f : fh::run_scenario(cfg, dir)) fmt::print("wrote {}\n", f.string());
  return 0;
}

int verify(const Common& c, const std::string& suite, std::size_t pairs, double bbar,
           fh::InversionMode mode) {
  fh::RunConfig cfg = c.config.empty() ? fh::RunConfig{} : fh::load_config(c.config);
  fh::VerifyOptions opts;
  opts.seed = c.seed.value_or(cfg.seed);
  opts.cases = c.cases.value_or(cfg.cases);
  opts.pairs = pairs;
  opts.bbar = bbar;
  opts.mode = mode;
  std::vector<std::string> suites{suite};
  if (suite == "all") {
    const auto all = fh::verify_suites();
    suites.assign(all.begin(), all.end());
  }
  const auto dir = fh::resolve_output_dir(c.out_dir, cfg.output_dir);
  bool ok = true;
  for (const auto& s : suites) {
    const auto rep = fh::run_verify(s, opts);
    const auto path = dir / fmt::format("verify_{}.csv", rep.suite);
    fh::write_file_atomic(path, fh::table_csv(rep.header, rep.rows));
    fmt::print("{:<18} {}  cases={} {}={:.6g} threshold={:.3g}  -> {}\n", rep.suite,
               rep.passed ? "PASS" : "FAIL", rep.cases, rep.metric, rep.worst, rep.threshold,
               path.string());
    ok = ok && rep.passed;
  }
  return ok ? 0 : kViolation;
}

int convergence(const Common& c, const std::string& target, int levels) {
  std::vector<fh::ConvergenceStudy> studies;
  if (target == "point") {
    studies = fh::point_convergence(levels);
  } else if (target == "beam") {
    studies.push_back(fh::beam_space_convergence(levels));
    studies.push_back(fh::beam_time_convergence(levels));
    studies.push_back(fh::beam_energy_convergence(levels));
  } else {
    throw fh::Error(fh::ErrorCode::InvalidParameter, "convergence target must be point or beam");
  }
  fh::RunConfig cfg = c.config.empty() ? fh::RunConfig{} : fh::load_config(c.config);
  const auto dir = fh::resolve_output_dir(c.out_dir, cfg.output_dir);
  const auto path = dir / fmt::format("convergence_{}.csv", target);
  fh::write_file_atomic(path, fh::convergence_csv(studies));
  for (const auto& s : studies) {
    fmt::print("{} {:<22} min order {:.3f}\n", s.target, s.quantity, s.min_order());
  }
  fmt::print("wrote {}\n", path.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preisach ferroelectric hysteresis: scenarios, property suites, beam solver"};
  app.require_subcommand(1);

  Common common;
  std::string scenario;
  auto* run_cmd = app.add_subcommand("run", "run a built-in scenario and write its CSV output");
  run_cmd->add_option("scenario", scenario, "bipolar-linear | bipolar-quartic | stress-linear | "
                                            "stress-quartic | beam-demo");
  add_common(run_cmd, common);

  std::string suite;
  std::size_t pairs = 500;
  double bbar = 1.0;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite; exit 1 on any violation");
  verify_cmd->add_option("suite", suite, "dissipation | lipschitz | brokate | madelung | "
                                         "rate-independence | clausius-duhem | convergence | all")
      ->required();
  verify_cmd->add_option("--pairs", pairs, "lipschitz: number of trajectory pairs");
  verify_cmd->add_option("--bbar", bbar, "lipschitz: coefficient bound");
  fh::InversionMode mode = fh::InversionMode::Bracketed;
  const std::map<std::string, fh::InversionMode> modes{{"bracket", fh::InversionMode::Bracketed},
                                                       {"picard", fh::InversionMode::Picard}};
  verify_cmd->add_option("--invert-mode", mode, "lipschitz: bracket | picard")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  add_common(verify_cmd, common);

  std::string target;
  int levels = 4;
  auto* conv_cmd = app.add_subcommand("convergence", "refinement ladder with observed orders");
  conv_cmd->add_option("target", target, "point | beam")->required();
  conv_cmd->add_option("--levels", levels, "number of refinement levels (>= 3)");
  add_common(conv_cmd, common);

  auto* beam_cmd = app.add_subcommand("simulate-beam", "run the beam solver from a config file");
  add_common(beam_cmd, common);
  beam_cmd->get_option("--config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(common, scenario);
    if (*verify_cmd) return verify(common, suite, pairs, bbar, mode);
    if (*conv_cmd) return convergence(common, target, levels);
    if (*beam_cmd) {
      auto cfg = fh::load_config(common.config);
      if (cfg.scenario != "beam-demo") {
        throw fh::Error(fh::ErrorCode::Config, "simulate-beam needs a beam-demo config");
      }
      return run(common, "");
    }
  } catch (const fh::Error& e) {
    std::cerr << "ferrohyst: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ferrohyst: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
