#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hmimo/evaluation.hpp"
#include "hmimo/scenario.hpp"

namespace hmimo {

inline constexpr const char* kToolVersion = "1.0.0";

/// Shortest representation with 9 significant digits, '.' decimal point.
std::string format_double(double value);

std::string trials_csv(const std::vector<TrialResult>& trials, int num_users);
std::string summary_csv(const SweepCell& cell);
std::string sweep_csv(const SweepResult& sweep);

/// Self-contained SVG line chart: one polyline per case, std error bars, legend.
std::string render_sweep_svg(const SweepResult& sweep);

/// Deterministic identifier of a (config, seed) run.
std::string run_id(const ScenarioConfig& config);

/// JSON manifest: resolved config, tool version, seed, timestamps, output paths.
std::string manifest_json(const ScenarioConfig& config,
                          const std::vector<std::string>& output_names);

/// Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace hmimo
