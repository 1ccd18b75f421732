#pragma once

#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hmimo/types.hpp"

namespace hmimo {

enum class ChannelCase { I, II, III, IV };

std::string to_string(ChannelCase c);
ChannelCase parse_channel_case(const std::string& s);

/// Thrown on malformed scenario documents or invariant violations.
/// `field()` names the offending key when one can be identified.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// All constants defining one simulation run. Defaults are the reference
/// two-satellite Ku-band scenario used throughout the test suite.
struct ScenarioConfig {
  int num_satellites = 2;               // S
  int num_ris_abs = 1;                  // Q
  int num_users = 2;                    // I
  int rhs_elements = 256;               // N per satellite
  int rhs_feeds = 10;                   // L per satellite
  int tris_elements = 256;              // K per RIS-ABS

  double carrier_freq = 12e9;           // Hz
  double bandwidth = 1e6;               // Hz
  double total_power = 200.0;           // W

  double orbit_altitude = 600e3;        // m
  double inter_satellite_distance = 50e3;  // m
  double ris_abs_height = 20.0;         // m
  double ris_abs_spacing = 100.0;       // m, horizontal pitch when Q > 1
  double user_distance_min = 20.0;      // m
  double user_distance_max = 50.0;      // m

  double rhs_element_spacing = 0.25;    // wavelengths
  double tris_element_spacing = 0.5;    // wavelengths
  double guided_index = 1.5;            // n_g of the RHS guiding structure

  ChannelCase channel_case = ChannelCase::II;
  double rician_k_los = 10.0;           // linear; +inf means pure LoS
  double noise_figure = 7.0;            // dB

  int max_outer_iters = 60;
  double rel_tol = 1e-12;
  double bisection_tol = 1e-10;

  std::uint64_t master_seed = 1;
  int trials = 100;

  /// Throws ConfigError naming the first violated field.
  void validate() const;
};

/// Parses a key = value scenario document (one pair per line, '#' comments)
/// and validates the result. Unknown keys are rejected.
ScenarioConfig load_scenario(const std::string& document);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Applies a single "key=value" override to an existing config (no validation).
void apply_override(ScenarioConfig& config, const std::string& assignment);

/// Serializes the resolved config back to the document schema.
std::string dump_scenario(const ScenarioConfig& config);

/// c / f, with c = 299 792 458 m/s exactly.
double wavelength(double carrier_freq);

/// Element (and optional feed) positions of one aperture. Positions are
/// offsets from the surface center, already oriented in the global frame.
struct SurfaceSpec {
  std::vector<Vec3> element_positions;
  std::vector<Vec3> feed_positions;  // empty for T-RIS and user points
  Vec3 boresight = Vec3::UnitZ();
};

struct GeometryRealization {
  std::vector<Vec3> satellite_positions;
  std::vector<Vec3> ris_abs_positions;
  std::vector<Vec3> user_positions;
  std::vector<SurfaceSpec> rhs;   // one per satellite
  std::vector<SurfaceSpec> tris;  // one per RIS-ABS
};

/// Near-square factorization N = nx * ny with nx the largest divisor <= sqrt(N).
std::pair<int, int> grid_factor(int n);

/// Planar element grid centered at the origin in the plane orthogonal to
/// `boresight`, with `spacing` meters between adjacent elements. When
/// `num_feeds` > 0, feeds are placed uniformly along one edge of the aperture.
SurfaceSpec make_planar_grid(int num_elements, double spacing, const Vec3& boresight,
                             int num_feeds = 0);

/// Single-point receive aperture for a user terminal.
SurfaceSpec make_user_spec();

/// Places satellites, RIS-ABS nodes, and users; pure function of (config, rng state).
GeometryRealization build_geometry(const ScenarioConfig& config, std::mt19937_64& rng);

/// Array response: entry n = exp(+j (2 pi / lambda) <p_n, direction>).
CVector steering_vector(const SurfaceSpec& spec, const Vec3& direction, double lambda);

}  // namespace hmimo
