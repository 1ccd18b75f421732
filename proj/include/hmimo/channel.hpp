#pragma once

#include <limits>
#include <random>

#include "hmimo/scenario.hpp"
#include "hmimo/types.hpp"

namespace hmimo {

/// Flag value for a pure-LoS (infinite Rician K) link.
inline constexpr double kLosOnly = std::numeric_limits<double>::infinity();

/// The three channel matrices of one realization.
struct ChannelSet {
  CMatrix H_hs;  // QK x SN, satellites -> RIS-ABS surfaces
  CMatrix H_su;  // I  x QK, RIS-ABS surfaces -> users
  CMatrix H_hu;  // I  x SN, satellites -> users (direct)
};

struct NoiseModel {
  double noise_power = 0.0;  // sigma^2, W

  /// sigma^2 = k_B * T0 * B * 10^(NF/10), T0 = 290 K.
  static NoiseModel from(double bandwidth_hz, double noise_figure_db);
  static NoiseModel from(const ScenarioConfig& config) {
    return from(config.bandwidth, config.noise_figure);
  }
};

/// Friis amplitude gain lambda / (4 pi d). The squared value is the power gain.
double free_space_gain(double distance, double lambda);

/// Rank-one LoS block g * exp(-j 2 pi d / lambda) * a_rx(u) a_tx(u)^H, where u
/// is the unit direction from tx center to rx center and d the center distance.
CMatrix los_channel(const SurfaceSpec& tx, const Vec3& tx_pos, const SurfaceSpec& rx,
                    const Vec3& rx_pos, double lambda);

/// sqrt(K/(K+1)) * los + sqrt(avg_power/(K+1)) * W, W ~ i.i.d. CN(0, 1).
/// Always consumes the same number of RNG draws regardless of K, so paired
/// trials stay aligned across channel cases. K = kLosOnly returns los exactly.
CMatrix rician_channel(const CMatrix& los, double avg_power, double k_factor,
                       std::mt19937_64& rng);

/// Assembles the three block matrices for the configured channel case.
ChannelSet synthesize_channels(const ScenarioConfig& config,
                               const GeometryRealization& geometry, std::mt19937_64& rng);

}  // namespace hmimo
