#include "hmimo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace hmimo {

NoiseModel NoiseModel::from(double bandwidth_hz, double noise_figure_db) {
  NoiseModel model;
  model.noise_power =
      kBoltzmann * kReferenceTemperature * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
  return model;
}

double free_space_gain(double distance, double lambda) {
  if (!(distance > 0) || !(lambda > 0))
    throw std::invalid_argument("free_space_gain: distance and wavelength must be > 0");
  return lambda / (4.0 * kPi * distance);
}

CMatrix los_channel(const SurfaceSpec& tx, const Vec3& tx_pos, const SurfaceSpec& rx,
                    const Vec3& rx_pos, double lambda) {
  Vec3 delta = rx_pos - tx_pos;
  double d = delta.norm();
  if (d == 0.0) throw std::invalid_argument("los_channel: coincident tx and rx positions");
  Vec3 u = delta / d;
  double g = free_space_gain(d, lambda);
  Complex carrier = std::polar(g, -2.0 * kPi * d / lambda);
  CVector a_tx = steering_vector(tx, u, lambda);
  CVector a_rx = steering_vector(rx, u, lambda);
  return carrier * (a_rx * a_tx.adjoint());
}

CMatrix rician_channel(const CMatrix& los, double avg_power, double k_factor,
                       std::mt19937_64& rng) {
  if (k_factor < 0) throw std::invalid_argument("rician_channel: negative K-factor");
  if (avg_power < 0) throw std::invalid_argument("rician_channel: negative average power");
  // The scatter component is always drawn so that paired trials consume
  // identical RNG streams across channel cases.
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix w(los.rows(), los.cols());
  for (Eigen::Index c = 0; c < w.cols(); ++c)
    for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = Complex(gauss(rng), gauss(rng));
  if (std::isinf(k_factor)) return los;
  double los_scale = std::sqrt(k_factor / (k_factor + 1.0));
  double scatter_scale = std::sqrt(avg_power / (k_factor + 1.0));
  return los_scale * los + scatter_scale * w;
}

namespace {

struct CaseStats {
  double k_su;  // RIS-ABS -> user
  double k_hu;  // satellite -> user
  bool hu_zero;
};

CaseStats case_stats(const ScenarioConfig& config) {
  switch (config.channel_case) {
    case ChannelCase::I: return {0.0, 0.0, true};
    case ChannelCase::II: return {config.rician_k_los, config.rician_k_los, false};
    case ChannelCase::III: return {0.0, 0.0, false};
    case ChannelCase::IV: return {0.0, config.rician_k_los, false};
  }
  throw std::logic_error("unreachable channel case");
}

}  // namespace

ChannelSet synthesize_channels(const ScenarioConfig& config, const GeometryRealization& geometry,
                               std::mt19937_64& rng) {
  const int S = config.num_satellites;
  const int Q = config.num_ris_abs;
  const int I = config.num_users;
  const int N = config.rhs_elements;
  const int K = config.tris_elements;
  const double lambda = wavelength(config.carrier_freq);
  const CaseStats stats = case_stats(config);
  const SurfaceSpec user = make_user_spec();

  ChannelSet ch;
  ch.H_hs = CMatrix::Zero(static_cast<Eigen::Index>(Q) * K, static_cast<Eigen::Index>(S) * N);
  ch.H_su = CMatrix::Zero(I, static_cast<Eigen::Index>(Q) * K);
  ch.H_hu = CMatrix::Zero(I, static_cast<Eigen::Index>(S) * N);

  // Satellite -> RIS-ABS: always LoS-dominant.
  for (int q = 0; q < Q; ++q)
    for (int s = 0; s < S; ++s) {
      double d = (geometry.ris_abs_positions[q] - geometry.satellite_positions[s]).norm();
      double p = std::pow(free_space_gain(d, lambda), 2);
      CMatrix los = los_channel(geometry.rhs[s], geometry.satellite_positions[s], geometry.tris[q],
                                geometry.ris_abs_positions[q], lambda);
      ch.H_hs.block(static_cast<Eigen::Index>(q) * K, static_cast<Eigen::Index>(s) * N, K, N) =
          rician_channel(los, p, config.rician_k_los, rng);
    }

  // RIS-ABS -> users.
  for (int i = 0; i < I; ++i)
    for (int q = 0; q < Q; ++q) {
      double d = (geometry.user_positions[i] - geometry.ris_abs_positions[q]).norm();
      double p = std::pow(free_space_gain(d, lambda), 2);
      CMatrix los = los_channel(geometry.tris[q], geometry.ris_abs_positions[q], user,
                                geometry.user_positions[i], lambda);
      ch.H_su.block(i, static_cast<Eigen::Index>(q) * K, 1, K) =
          rician_channel(los, p, stats.k_su, rng);
    }

  // Satellites -> users (direct). Case I zeroes the block after drawing so
  // that stream consumption matches the other cases.
  for (int i = 0; i < I; ++i)
    for (int s = 0; s < S; ++s) {
      double d = (geometry.user_positions[i] - geometry.satellite_positions[s]).norm();
      double p = std::pow(free_space_gain(d, lambda), 2);
      CMatrix los = los_channel(geometry.rhs[s], geometry.satellite_positions[s], user,
                                geometry.user_positions[i], lambda);
      CMatrix block = rician_channel(los, p, stats.k_hu, rng);
      if (stats.hu_zero) block.setZero();
      ch.H_hu.block(i, static_cast<Eigen::Index>(s) * N, 1, N) = block;
    }

  return ch;
}

}  // namespace hmimo
