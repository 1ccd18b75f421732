#include <doctest.h>

#include <cmath>
#include <random>

#include "hmimo/channel.hpp"
#include "hmimo/rng.hpp"

using namespace hmimo;

TEST_CASE("noise model matches k_B T0 B 10^(NF/10)") {
  auto noise = NoiseModel::from(1e6, 7.0);
  CHECK(noise.noise_power ==
        doctest::Approx(1.380649e-23 * 290.0 * 1e6 * std::pow(10.0, 0.7)).epsilon(1e-12));
  CHECK(noise.noise_power == doctest::Approx(2.0e-14).epsilon(0.01));
}

TEST_CASE("free_space_gain") {
  double lambda = wavelength(12e9);

  SUBCASE("600 km Ku-band power gain is about -169.6 dB") {
    double g = free_space_gain(600e3, lambda);
    // Independent evaluation of (lambda / 4 pi d)^2 = (0.0249827/7.53982e6)^2.
    CHECK(g * g == doctest::Approx(1.0979e-17).epsilon(1e-3));
    CHECK(10.0 * std::log10(g * g) == doctest::Approx(-169.6).epsilon(1e-3));
  }
  SUBCASE("amplitude gain is one at the reference distance lambda/(4 pi)") {
    CHECK(free_space_gain(lambda / (4.0 * kPi), lambda) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("inverse-square law") {
    double g1 = free_space_gain(100.0, lambda);
    double g2 = free_space_gain(200.0, lambda);
    CHECK(g2 * g2 == doctest::Approx(0.25 * g1 * g1).epsilon(1e-12));
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS(free_space_gain(0.0, lambda));
    CHECK_THROWS(free_space_gain(10.0, 0.0));
  }
}

namespace {

SurfaceSpec line_array(int count, double spacing, Vec3 axis) {
  SurfaceSpec spec;
  for (int n = 0; n < count; ++n)
    spec.element_positions.push_back((n - 0.5 * (count - 1)) * spacing * axis);
  spec.boresight = Vec3::UnitZ();
  return spec;
}

}  // namespace

TEST_CASE("los_channel") {
  double lambda = 0.025;
  auto tx = line_array(4, 0.25 * lambda, Vec3::UnitX());
  auto rx = line_array(3, 0.5 * lambda, Vec3::UnitY());
  Vec3 tx_pos(0, 0, 100.0), rx_pos(0, 0, 0);

  CMatrix h = los_channel(tx, tx_pos, rx, rx_pos, lambda);
  REQUIRE(h.rows() == 3);
  REQUIRE(h.cols() == 4);

  SUBCASE("numerical rank is one") {
    Eigen::JacobiSVD<CMatrix> svd(h);
    CHECK(svd.singularValues()(1) < 1e-9 * svd.singularValues()(0));
  }
  SUBCASE("entry magnitudes equal the free-space amplitude gain") {
    double g = free_space_gain(100.0, lambda);
    for (Eigen::Index r = 0; r < h.rows(); ++r)
      for (Eigen::Index c = 0; c < h.cols(); ++c)
        CHECK(std::abs(h(r, c)) == doctest::Approx(g).epsilon(1e-12));
  }
  SUBCASE("broadside alignment gives a constant matrix") {
    // Both arrays lie orthogonal to the link axis, so both phase ramps vanish.
    double d = 100.0;
    double g = free_space_gain(d, lambda);
    Complex expected = std::polar(g, -2.0 * kPi * d / lambda);
    auto tx2 = line_array(2, 0.25 * lambda, Vec3::UnitX());
    auto rx2 = line_array(2, 0.5 * lambda, Vec3::UnitY());
    CMatrix h2 = los_channel(tx2, Vec3(0, 0, d), rx2, Vec3::Zero(), lambda);
    for (Eigen::Index r = 0; r < 2; ++r)
      for (Eigen::Index c = 0; c < 2; ++c) CHECK(std::abs(h2(r, c) - expected) < 1e-12 * g);
  }
  SUBCASE("coincident positions are rejected") {
    CHECK_THROWS(los_channel(tx, tx_pos, rx, tx_pos, lambda));
  }
}

TEST_CASE("rician_channel statistics") {
  std::mt19937_64 rng(11);
  const double p = 0.3;
  CMatrix los(100, 100);
  for (Eigen::Index r = 0; r < 100; ++r)
    for (Eigen::Index c = 0; c < 100; ++c)
      los(r, c) = std::polar(std::sqrt(p), 0.01 * static_cast<double>(r * 100 + c));

  SUBCASE("K = inf returns the LoS matrix exactly") {
    CMatrix h = rician_channel(los, p, kLosOnly, rng);
    CHECK(h == los);
  }
  SUBCASE("K = 0 is Rayleigh with per-entry power p") {
    double sum = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      CMatrix h = rician_channel(los, p, 0.0, rng);
      sum += h.squaredNorm();
    }
    CHECK(sum / (10.0 * 100 * 100) == doctest::Approx(p).epsilon(0.02));
  }
  SUBCASE("K = 10 mixture power") {
    double sum = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      CMatrix h = rician_channel(los, p, 10.0, rng);
      sum += h.squaredNorm();
    }
    // E|h|^2 = |los|^2 * 10/11 + p/11 = p for unit-magnitude-times-sqrt(p) los.
    CHECK(sum / (10.0 * 100 * 100) == doctest::Approx(p).epsilon(0.02));
  }
  SUBCASE("negative K is rejected") {
    CHECK_THROWS(rician_channel(los, p, -1.0, rng));
  }
}

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.num_satellites = 2;
  cfg.num_ris_abs = 1;
  cfg.num_users = 2;
  cfg.rhs_elements = 8;
  cfg.rhs_feeds = 2;
  cfg.tris_elements = 6;
  return cfg;
}

}  // namespace

TEST_CASE("synthesize_channels dimensional contract over random small configs") {
  std::mt19937_64 meta(5);
  std::uniform_int_distribution<int> pick(1, 4);
  for (int trial = 0; trial < 15; ++trial) {
    ScenarioConfig cfg;
    cfg.num_satellites = pick(meta);
    cfg.num_ris_abs = pick(meta);
    cfg.num_users = 1;
    cfg.rhs_elements = pick(meta) * 2;
    cfg.rhs_feeds = 2;
    cfg.tris_elements = pick(meta) * 2;
    cfg.channel_case = static_cast<ChannelCase>(trial % 4);
    cfg.validate();
    auto geom_rng = make_stream(trial, 0, StreamPurpose::geometry);
    auto chan_rng = make_stream(trial, 0, StreamPurpose::channel);
    auto geo = build_geometry(cfg, geom_rng);
    auto ch = synthesize_channels(cfg, geo, chan_rng);
    CHECK(ch.H_hs.rows() == cfg.num_ris_abs * cfg.tris_elements);
    CHECK(ch.H_hs.cols() == cfg.num_satellites * cfg.rhs_elements);
    CHECK(ch.H_su.rows() == cfg.num_users);
    CHECK(ch.H_su.cols() == cfg.num_ris_abs * cfg.tris_elements);
    CHECK(ch.H_hu.rows() == cfg.num_users);
    CHECK(ch.H_hu.cols() == cfg.num_satellites * cfg.rhs_elements);
    CHECK(ch.H_hs.allFinite());
    CHECK(ch.H_su.allFinite());
    CHECK(ch.H_hu.allFinite());
  }
}

TEST_CASE("case I has a zero direct channel") {
  auto cfg = small_config();
  cfg.channel_case = ChannelCase::I;
  auto geom_rng = make_stream(1, 0, StreamPurpose::geometry);
  auto chan_rng = make_stream(1, 0, StreamPurpose::channel);
  auto geo = build_geometry(cfg, geom_rng);
  auto ch = synthesize_channels(cfg, geo, chan_rng);
  CHECK(ch.H_hu.norm() == 0.0);
  CHECK(ch.H_su.norm() > 0.0);
}

TEST_CASE("case II with infinite K gives rank-1 link blocks") {
  auto cfg = small_config();
  cfg.channel_case = ChannelCase::II;
  cfg.rician_k_los = kLosOnly;
  auto geom_rng = make_stream(2, 0, StreamPurpose::geometry);
  auto chan_rng = make_stream(2, 0, StreamPurpose::channel);
  auto geo = build_geometry(cfg, geom_rng);
  auto ch = synthesize_channels(cfg, geo, chan_rng);
  for (int s = 0; s < cfg.num_satellites; ++s) {
    CMatrix block = ch.H_hs.block(0, s * cfg.rhs_elements, cfg.tris_elements, cfg.rhs_elements);
    Eigen::JacobiSVD<CMatrix> svd(block);
    CHECK(svd.singularValues()(1) < 1e-9 * svd.singularValues()(0));
  }
}

TEST_CASE("case III RIS-user fading power matches the path-loss gain") {
  auto cfg = small_config();
  cfg.channel_case = ChannelCase::III;
  cfg.num_satellites = 1;
  cfg.num_users = 1;
  cfg.tris_elements = 16;
  auto geom_rng = make_stream(3, 0, StreamPurpose::geometry);
  auto geo = build_geometry(cfg, geom_rng);
  double d = (geo.user_positions[0] - geo.ris_abs_positions[0]).norm();
  double p = std::pow(free_space_gain(d, wavelength(cfg.carrier_freq)), 2);
  double sum = 0.0;
  const int reps = 10'000;
  auto chan_rng = make_stream(3, 0, StreamPurpose::channel);
  for (int rep = 0; rep < reps; ++rep) {
    auto ch = synthesize_channels(cfg, geo, chan_rng);
    sum += ch.H_su.squaredNorm() / static_cast<double>(ch.H_su.size());
  }
  CHECK(sum / reps == doctest::Approx(p).epsilon(0.03));
}

TEST_CASE("same (config, geometry, seed) gives bit-identical channels") {
  auto cfg = small_config();
  auto geom_rng = make_stream(9, 0, StreamPurpose::geometry);
  auto geo = build_geometry(cfg, geom_rng);
  auto rng1 = make_stream(9, 0, StreamPurpose::channel);
  auto rng2 = make_stream(9, 0, StreamPurpose::channel);
  auto ch1 = synthesize_channels(cfg, geo, rng1);
  auto ch2 = synthesize_channels(cfg, geo, rng2);
  CHECK(ch1.H_hs == ch2.H_hs);
  CHECK(ch1.H_su == ch2.H_su);
  CHECK(ch1.H_hu == ch2.H_hu);
}
