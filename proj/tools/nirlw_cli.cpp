// Command-line front end: run one configured experiment, sweep a preset over
// a list of values, or run the property checks.
//
// Exit codes: 0 success, 1 a run ended without meeting the discrepancy
// principle (or a property check failed), 2 invalid configuration or usage,
// 3 output could not be written.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nirlw/config.hpp"
#include "nirlw/errors.hpp"
#include "nirlw/experiments.hpp"
#include "nirlw/kernels.hpp"
#include "nirlw/report.hpp"
#include "nirlw/self_check.hpp"

namespace fs = std::filesystem;
using namespace nirlw;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::vector<std::string> overrides;
};

/// --out wins, then NIRLW_OUT_DIR, then ./results.
fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("NIRLW_OUT_DIR"); env && *env) return env;
  return "results";
}

KeyValues collect_settings(const CommonOptions& opt) {
  KeyValues kv;
  if (!opt.config_path.empty()) kv = load_key_values(opt.config_path);
  if (!opt.preset.empty()) kv.emplace_back("preset", opt.preset);
  if (opt.seed) kv.emplace_back("seed", std::to_string(*opt.seed));
  for (const auto& o : opt.overrides) kv.push_back(parse_override(o));
  return kv;
}

void print_report(const RunReport& r) {
  std::cout << r.name << ": " << to_string(r.reason) << "  n*=" << r.n_star
            << "  N_p=" << r.total_inner << "  err_L2=" << format_number(r.error.l2)
            << "  err_Lp=" << format_number(r.error.lp) << "  wall_ms=" << format_number(r.wall_ms)
            << '\n';
  if (!r.message.empty()) std::cout << "  " << r.message << '\n';
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_run(const CommonOptions& opt) {
  if (opt.config_path.empty() && opt.preset.empty()) {
    std::cerr << "error: run needs --config or --preset\n";
    return kExitConfig;
  }
  const ExperimentSpec spec = build_spec(collect_settings(opt));
  spec.validate();
  const RunReport report = run_experiment(spec);
  print_report(report);
  if (report.reason == Termination::invalid_config) return kExitConfig;

  const fs::path dir = resolve_out_dir(opt.out_dir);
  for (const auto& p : write_run_outputs(dir, report, spec.truth)) std::cout << "wrote " << p.string() << '\n';
  if (!report.ok()) {
    std::cerr << "run did not terminate by the discrepancy principle: " << to_string(report.reason)
              << '\n';
    return kExitFailure;
  }
  return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::string& vary) {
  const auto [key, list] = parse_override(vary);
  std::vector<std::string> values;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) values.push_back(item);
  if (values.empty()) {
    std::cerr << "error: --vary needs at least one value\n";
    return kExitConfig;
  }

  const KeyValues base = collect_settings(opt);
  std::vector<ExperimentSpec> specs;
  for (const auto& v : values) {
    KeyValues kv = base;
    kv.emplace_back(key, v);
    ExperimentSpec spec = build_spec(kv);
    spec.name += "_" + key + "=" + v;
    spec.validate();
    specs.push_back(std::move(spec));
  }

  // Variants are independent; each owns its state and output files.
  std::vector<std::future<RunReport>> jobs;
  for (const auto& spec : specs)
    jobs.push_back(std::async(std::launch::async, [&spec] { return run_experiment(spec); }));
  std::vector<RunReport> reports;
  for (auto& j : jobs) reports.push_back(j.get());

  const fs::path dir = resolve_out_dir(opt.out_dir);
  bool all_ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    print_report(reports[i]);
    write_run_outputs(dir, reports[i], specs[i].truth);
    all_ok = all_ok && reports[i].ok();
  }
  std::cout << "wrote " << write_summary_csv(dir, reports).string() << '\n';
  return all_ok ? 0 : kExitFailure;
}

int cmd_verify() {
  std::cout << "kernels: " << kernels::isa_name(kernels::active_isa()) << '\n';
  bool all = true;
  for (const auto& c : run_property_checks()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all ? 0 : kExitFailure;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key = value configuration file");
  cmd->add_option("--preset", opt.preset, "example1 | example2 | example3 | example2d");
  cmd->add_option("--seed", opt.seed, "noise seed");
  cmd->add_option("--out", opt.out_dir, "output directory (default $NIRLW_OUT_DIR or ./results)");
  cmd->add_option("--override", opt.overrides, "key=value, applied after the config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-Landweber coefficient identification in L^p / L^r"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  add_common(run_cmd, run_opt);

  CommonOptions sweep_opt;
  std::string vary;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a preset over a list of values");
  add_common(sweep_cmd, sweep_opt);
  sweep_cmd->add_option("--vary", vary, "key=v1,v2,...")->required();

  app.add_subcommand("verify", "run the property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run_opt);
    if (*sweep_cmd) return cmd_sweep(sweep_opt, vary);
    return cmd_verify();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
