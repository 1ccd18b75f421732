#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmimo/evaluation.hpp"
#include "hmimo/report.hpp"
#include "hmimo/scenario.hpp"

namespace fs = std::filesystem;
using namespace hmimo;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

bool verbose() {
  const char* v = std::getenv("HMIMO_LOG");
  return v != nullptr && std::string(v) != "quiet" && std::string(v) != "";
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out) {
  cmd->add_option("--config", opts.config_path, "Scenario file (key = value text)");
  if (with_out) cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--trials", opts.trials, "Trial count override");
  cmd->add_option("--seed", opts.seed, "Master seed override");
  cmd->add_option("--set", opts.overrides, "Config override key=value (repeatable)");
}

ScenarioConfig resolve_config(const CommonOpts& opts) {
  ScenarioConfig config;
  if (!opts.config_path.empty()) config = load_scenario_file(opts.config_path);
  for (const auto& assignment : opts.overrides) apply_override(config, assignment);
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.trials) config.trials = *opts.trials;
  config.validate();
  return config;
}

std::vector<ChannelCase> parse_cases(const std::string& list) {
  std::vector<ChannelCase> cases;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) cases.push_back(parse_channel_case(token));
  return cases;
}

std::vector<int> parse_elements(const std::string& list) {
  std::vector<int> elements;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) elements.push_back(std::stoi(token));
  return elements;
}

void emit_outputs(const fs::path& out_dir, const ScenarioConfig& config,
                  const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + out_dir.string());
  std::vector<std::string> names;
  for (const auto& [name, _] : files) names.push_back(name);
  names.push_back("manifest.json");
  for (const auto& [name, contents] : files) write_file(out_dir / name, contents);
  write_file(out_dir / "manifest.json", manifest_json(config, names));
}

int cmd_run(const CommonOpts& opts) {
  ScenarioConfig config = resolve_config(opts);
  std::vector<TrialResult> results;
  for (int t = 0; t < config.trials; ++t) {
    results.push_back(run_trial(config, static_cast<std::uint64_t>(t)));
    if (verbose())
      std::cerr << "trial " << t << ": sum_rate_se=" << results.back().sum_rate_se << "\n";
  }
  SweepCell cell = aggregate_cell(config.channel_case, config.rhs_elements, results);
  emit_outputs(opts.out_dir, config,
               {{"trials.csv", trials_csv(cell.trials, config.num_users)},
                {"summary.csv", summary_csv(cell)}});
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& cases_list,
              const std::string& elements_list) {
  ScenarioConfig config = resolve_config(opts);
  std::vector<ChannelCase> cases = parse_cases(cases_list);
  std::vector<int> elements = parse_elements(elements_list);
  if (verbose())
    std::cerr << "sweep: " << elements.size() << " element counts x " << cases.size()
              << " cases x " << config.trials << " trials\n";
  SweepResult sweep = run_sweep(config, elements, cases, config.trials);
  emit_outputs(opts.out_dir, config,
               {{"sweep.csv", sweep_csv(sweep)}, {"sweep.svg", render_sweep_svg(sweep)}});
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  ScenarioConfig config = resolve_config(opts);
  std::cout << "ok\n" << dump_scenario(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for a holographic-MIMO LEO downlink with "
               "transmissive-RIS-assisted base stations"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, validate_opts;
  std::string cases_list = "I,II,III,IV";
  std::string elements_list = "64,144,256,400";

  CLI::App* run = app.add_subcommand("run", "Run one scenario cell (all trials)");
  add_common(run, run_opts, true);

  CLI::App* sweep = app.add_subcommand("sweep", "Run the element-count x case grid");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--cases", cases_list, "Comma-separated case list (I,II,III,IV)");
  sweep->add_option("--elements", elements_list, "Comma-separated N = K list");

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file and print it");
  add_common(validate, validate_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, cases_list, elements_list);
    if (validate->parsed()) return cmd_validate(validate_opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: invalid config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
