#pragma once

#include <cstdint>
#include <vector>

#include "hmimo/optimizer.hpp"
#include "hmimo/scenario.hpp"
#include "hmimo/types.hpp"

namespace hmimo {

/// With T = H_eff F: sinr_i = |T_ii|^2 / (sum_{j != i} |T_ij|^2 + sigma^2).
/// Zero noise with zero interference yields +inf.
RVector sinr_per_user(const CMatrix& H_eff, const CMatrix& F, double noise_power);

/// sum_i log2(1 + sinr_i), bit/s/Hz.
double sum_rate(const RVector& sinr);

struct TrialResult {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;  // derived stream seed material: hash of (master, trial)
  ChannelCase channel_case = ChannelCase::I;
  int elements_n = 0;
  int elements_k = 0;
  double final_mse = 0.0;
  RVector per_user_sinr;
  double sum_rate_se = 0.0;   // bit/s/Hz
  double throughput = 0.0;    // bit/s (= bandwidth * sum_rate_se)
  int iterations = 0;
  double wall_time_s = 0.0;
  bool degenerate = false;
};

/// One deterministic Monte Carlo trial: geometry, channels, optimization, metrics.
TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index);

struct SweepCell {
  ChannelCase channel_case = ChannelCase::I;
  int elements = 0;  // N = K
  int trial_count = 0;
  double mean_sum_rate_se = 0.0;
  double std_sum_rate_se = 0.0;   // sample std
  double mean_throughput = 0.0;
  std::vector<TrialResult> trials;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // element-count major, case minor
};

/// Order-independent aggregation (trials sorted by index before summing).
SweepCell aggregate_cell(ChannelCase c, int elements, std::vector<TrialResult> trials);

/// Full (N = K) x case grid with paired per-trial seeds across cells.
SweepResult run_sweep(const ScenarioConfig& config, const std::vector<int>& element_counts,
                      const std::vector<ChannelCase>& cases, int trials);

}  // namespace hmimo
