#include "hmimo/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hmimo/rng.hpp"

namespace hmimo {

RVector sinr_per_user(const CMatrix& H_eff, const CMatrix& F, double noise_power) {
  if (H_eff.cols() != F.rows() || H_eff.rows() != F.cols())
    throw std::invalid_argument("sinr_per_user: dimension mismatch");
  CMatrix t = H_eff * F;
  RVector sinr(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    double signal = std::norm(t(i, i));
    double interference = t.row(i).squaredNorm() - signal;
    double denom = interference + noise_power;
    sinr(i) = denom == 0.0 ? (signal == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                           : signal / denom;
  }
  return sinr;
}

double sum_rate(const RVector& sinr) {
  double rate = 0.0;
  for (Eigen::Index i = 0; i < sinr.size(); ++i) {
    if (sinr(i) < 0) throw std::invalid_argument("sum_rate: negative SINR");
    rate += std::log2(1.0 + sinr(i));
  }
  return rate;
}

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial_index) {
  config.validate();
  auto start = std::chrono::steady_clock::now();

  auto geom_rng = make_stream(config.master_seed, trial_index, StreamPurpose::geometry);
  auto chan_rng = make_stream(config.master_seed, trial_index, StreamPurpose::channel);
  auto init_rng = make_stream(config.master_seed, trial_index, StreamPurpose::beamformer_init);

  GeometryRealization geometry = build_geometry(config, geom_rng);
  ChannelSet ch = synthesize_channels(config, geometry, chan_rng);
  BeamformerState init = make_initial_state(config, geometry, init_rng);
  auto [state, trace] = optimize(ch, config, std::move(init));

  const double noise_power = NoiseModel::from(config).noise_power;
  CMatrix h_eff = effective_channel(ch, tris_diagonal(state.theta),
                                    assemble_holographic_matrix(state.w, state.refs));

  TrialResult result;
  result.trial_index = trial_index;
  result.seed = hash_combine(splitmix64(config.master_seed), trial_index);
  result.channel_case = config.channel_case;
  result.elements_n = config.rhs_elements;
  result.elements_k = config.tris_elements;
  result.final_mse = trace.mse.empty() ? 0.0 : trace.mse.back();
  result.per_user_sinr = sinr_per_user(h_eff, state.F, noise_power);
  result.sum_rate_se = sum_rate(result.per_user_sinr);
  result.throughput = config.bandwidth * result.sum_rate_se;
  result.iterations = trace.iterations;
  result.degenerate = state.degenerate;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SweepCell aggregate_cell(ChannelCase c, int elements, std::vector<TrialResult> trials) {
  std::sort(trials.begin(), trials.end(),
            [](const TrialResult& a, const TrialResult& b) { return a.trial_index < b.trial_index; });
  SweepCell cell;
  cell.channel_case = c;
  cell.elements = elements;
  cell.trial_count = static_cast<int>(trials.size());
  double sum = 0.0;
  double sum_tp = 0.0;
  for (const auto& t : trials) {
    sum += t.sum_rate_se;
    sum_tp += t.throughput;
  }
  const double n = static_cast<double>(cell.trial_count);
  cell.mean_sum_rate_se = sum / n;
  cell.mean_throughput = sum_tp / n;
  double ss = 0.0;
  for (const auto& t : trials) {
    double d = t.sum_rate_se - cell.mean_sum_rate_se;
    ss += d * d;
  }
  cell.std_sum_rate_se = cell.trial_count > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  cell.trials = std::move(trials);
  return cell;
}

SweepResult run_sweep(const ScenarioConfig& config, const std::vector<int>& element_counts,
                      const std::vector<ChannelCase>& cases, int trials) {
  if (element_counts.empty()) throw std::invalid_argument("run_sweep: empty element count list");
  if (cases.empty()) throw std::invalid_argument("run_sweep: empty case list");
  if (trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");

  SweepResult sweep;
  for (int n : element_counts) {
    for (ChannelCase c : cases) {
      ScenarioConfig cell_config = config;
      cell_config.rhs_elements = n;
      cell_config.tris_elements = n;
      cell_config.channel_case = c;
      cell_config.validate();
      std::vector<TrialResult> results;
      results.reserve(static_cast<std::size_t>(trials));
      for (int t = 0; t < trials; ++t)
        results.push_back(run_trial(cell_config, static_cast<std::uint64_t>(t)));
      sweep.cells.push_back(aggregate_cell(c, n, std::move(results)));
    }
  }
  return sweep;
}

}  // namespace hmimo
