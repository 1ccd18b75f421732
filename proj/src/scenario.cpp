#include "hmimo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace hmimo {

std::string to_string(ChannelCase c) {
  switch (c) {
    case ChannelCase::I: return "I";
    case ChannelCase::II: return "II";
    case ChannelCase::III: return "III";
    case ChannelCase::IV: return "IV";
  }
  return "?";
}

ChannelCase parse_channel_case(const std::string& s) {
  if (s == "I") return ChannelCase::I;
  if (s == "II") return ChannelCase::II;
  if (s == "III") return ChannelCase::III;
  if (s == "IV") return ChannelCase::IV;
  throw ConfigError("channel_case", "expected one of I, II, III, IV, got '" + s + "'");
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* field, const std::string& msg) {
    if (!ok) throw ConfigError(field, msg);
  };
  require(num_satellites >= 1, "num_satellites", "must be >= 1");
  require(num_ris_abs >= 1, "num_ris_abs", "must be >= 1");
  require(num_users >= 1, "num_users", "must be >= 1");
  require(rhs_elements >= 1, "rhs_elements", "must be >= 1");
  require(rhs_feeds >= 1, "rhs_feeds", "must be >= 1");
  require(tris_elements >= 1, "tris_elements", "must be >= 1");
  require(rhs_feeds <= rhs_elements, "rhs_feeds",
          "must not exceed rhs_elements (L <= N)");
  require(num_users <= num_satellites * rhs_feeds, "num_users",
          "spatial streams cannot exceed total feeds (I <= S*L)");
  require(total_power > 0, "total_power", "must be > 0");
  require(carrier_freq > 0, "carrier_freq", "must be > 0");
  require(bandwidth > 0, "bandwidth", "must be > 0");
  require(orbit_altitude > 0, "orbit_altitude", "must be > 0");
  require(inter_satellite_distance >= 0, "inter_satellite_distance", "must be >= 0");
  require(ris_abs_height >= 0, "ris_abs_height", "must be >= 0");
  require(ris_abs_spacing > 0, "ris_abs_spacing", "must be > 0");
  require(user_distance_min >= 0, "user_distance_min", "must be >= 0");
  require(user_distance_min <= user_distance_max, "user_distance_max",
          "must be >= user_distance_min");
  require(rhs_element_spacing > 0 && rhs_element_spacing <= 0.5, "rhs_element_spacing",
          "must lie in (0, 0.5] wavelengths");
  require(tris_element_spacing > 0 && tris_element_spacing <= 1.0, "tris_element_spacing",
          "must lie in (0, 1] wavelengths");
  require(guided_index > 0, "guided_index", "must be > 0");
  require(rician_k_los >= 0, "rician_k_los", "must be >= 0");
  require(max_outer_iters >= 1, "max_outer_iters", "must be >= 1");
  require(rel_tol >= 0, "rel_tol", "must be >= 0");
  require(bisection_tol > 0, "bisection_tol", "must be > 0");
  require(trials >= 1, "trials", "must be >= 1");
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  if (value == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "not a number: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  double v = parse_number(key, value);
  int i = static_cast<int>(std::llround(v));
  if (static_cast<double>(i) != v) throw ConfigError(key, "expected an integer, got '" + value + "'");
  return i;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

void assign(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "num_satellites") c.num_satellites = parse_int(key, value);
  else if (key == "num_ris_abs") c.num_ris_abs = parse_int(key, value);
  else if (key == "num_users") c.num_users = parse_int(key, value);
  else if (key == "rhs_elements") c.rhs_elements = parse_int(key, value);
  else if (key == "rhs_feeds") c.rhs_feeds = parse_int(key, value);
  else if (key == "tris_elements") c.tris_elements = parse_int(key, value);
  else if (key == "carrier_freq") c.carrier_freq = parse_number(key, value);
  else if (key == "bandwidth") c.bandwidth = parse_number(key, value);
  else if (key == "total_power") c.total_power = parse_number(key, value);
  else if (key == "orbit_altitude") c.orbit_altitude = parse_number(key, value);
  else if (key == "inter_satellite_distance") c.inter_satellite_distance = parse_number(key, value);
  else if (key == "ris_abs_height") c.ris_abs_height = parse_number(key, value);
  else if (key == "ris_abs_spacing") c.ris_abs_spacing = parse_number(key, value);
  else if (key == "user_distance_min") c.user_distance_min = parse_number(key, value);
  else if (key == "user_distance_max") c.user_distance_max = parse_number(key, value);
  else if (key == "rhs_element_spacing") c.rhs_element_spacing = parse_number(key, value);
  else if (key == "tris_element_spacing") c.tris_element_spacing = parse_number(key, value);
  else if (key == "guided_index") c.guided_index = parse_number(key, value);
  else if (key == "channel_case") c.channel_case = parse_channel_case(value);
  else if (key == "rician_k_los") c.rician_k_los = parse_number(key, value);
  else if (key == "noise_figure") c.noise_figure = parse_number(key, value);
  else if (key == "max_outer_iters") c.max_outer_iters = parse_int(key, value);
  else if (key == "rel_tol") c.rel_tol = parse_number(key, value);
  else if (key == "bisection_tol") c.bisection_tol = parse_number(key, value);
  else if (key == "master_seed") c.master_seed = static_cast<std::uint64_t>(parse_number(key, value));
  else if (key == "trials") c.trials = parse_int(key, value);
  else throw ConfigError(key, "unknown key");
}

}  // namespace

ScenarioConfig load_scenario(const std::string& document) {
  ScenarioConfig config;
  std::istringstream in(document);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value'");
    assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("", "override must be key=value, got '" + assignment + "'");
  assign(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string dump_scenario(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "num_satellites = " << c.num_satellites << "\n"
      << "num_ris_abs = " << c.num_ris_abs << "\n"
      << "num_users = " << c.num_users << "\n"
      << "rhs_elements = " << c.rhs_elements << "\n"
      << "rhs_feeds = " << c.rhs_feeds << "\n"
      << "tris_elements = " << c.tris_elements << "\n"
      << "carrier_freq = " << c.carrier_freq << "\n"
      << "bandwidth = " << c.bandwidth << "\n"
      << "total_power = " << c.total_power << "\n"
      << "orbit_altitude = " << c.orbit_altitude << "\n"
      << "inter_satellite_distance = " << c.inter_satellite_distance << "\n"
      << "ris_abs_height = " << c.ris_abs_height << "\n"
      << "ris_abs_spacing = " << c.ris_abs_spacing << "\n"
      << "user_distance_min = " << c.user_distance_min << "\n"
      << "user_distance_max = " << c.user_distance_max << "\n"
      << "rhs_element_spacing = " << c.rhs_element_spacing << "\n"
      << "tris_element_spacing = " << c.tris_element_spacing << "\n"
      << "guided_index = " << c.guided_index << "\n"
      << "channel_case = " << to_string(c.channel_case) << "\n"
      << "rician_k_los = " << c.rician_k_los << "\n"
      << "noise_figure = " << c.noise_figure << "\n"
      << "max_outer_iters = " << c.max_outer_iters << "\n"
      << "rel_tol = " << c.rel_tol << "\n"
      << "bisection_tol = " << c.bisection_tol << "\n"
      << "master_seed = " << c.master_seed << "\n"
      << "trials = " << c.trials << "\n";
  return out.str();
}

double wavelength(double carrier_freq) {
  if (!(carrier_freq > 0)) throw std::invalid_argument("wavelength: frequency must be > 0");
  return kSpeedOfLight / carrier_freq;
}

std::pair<int, int> grid_factor(int n) {
  int nx = 1;
  for (int d = 1; d * d <= n; ++d)
    if (n % d == 0) nx = d;
  return {nx, n / nx};
}

namespace {

// Orthonormal in-plane basis for a surface with the given boresight.
std::pair<Vec3, Vec3> plane_basis(const Vec3& boresight) {
  Vec3 b = boresight.normalized();
  Vec3 seed = std::abs(b.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  Vec3 e1 = b.cross(seed).normalized();
  Vec3 e2 = b.cross(e1).normalized();
  return {e1, e2};
}

}  // namespace

SurfaceSpec make_planar_grid(int num_elements, double spacing, const Vec3& boresight,
                             int num_feeds) {
  SurfaceSpec spec;
  spec.boresight = boresight.normalized();
  auto [e1, e2] = plane_basis(spec.boresight);
  auto [nx, ny] = grid_factor(num_elements);
  double x0 = -0.5 * (nx - 1) * spacing;
  double y0 = -0.5 * (ny - 1) * spacing;
  spec.element_positions.reserve(num_elements);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      spec.element_positions.push_back((x0 + ix * spacing) * e1 + (y0 + iy * spacing) * e2);
  if (num_feeds > 0) {
    // Feeds sit on the aperture edge at minimum e2, spanning the e1 extent.
    double span = (nx - 1) * spacing;
    for (int l = 0; l < num_feeds; ++l) {
      double x = num_feeds == 1 ? 0.0 : x0 + span * l / (num_feeds - 1);
      spec.feed_positions.push_back(x * e1 + y0 * e2);
    }
  }
  return spec;
}

SurfaceSpec make_user_spec() {
  SurfaceSpec spec;
  spec.boresight = Vec3::UnitZ();
  spec.element_positions.push_back(Vec3::Zero());
  return spec;
}

GeometryRealization build_geometry(const ScenarioConfig& config, std::mt19937_64& rng) {
  config.validate();
  GeometryRealization geo;
  double lambda = wavelength(config.carrier_freq);

  // RIS-ABS nodes on a line through the origin; cluster centroid at x = 0.
  for (int q = 0; q < config.num_ris_abs; ++q) {
    double x = (q - 0.5 * (config.num_ris_abs - 1)) * config.ris_abs_spacing;
    geo.ris_abs_positions.emplace_back(x, 0.0, config.ris_abs_height);
  }

  // Satellites centered above the RIS-ABS cluster centroid.
  for (int s = 0; s < config.num_satellites; ++s) {
    double x = (s - 0.5 * (config.num_satellites - 1)) * config.inter_satellite_distance;
    geo.satellite_positions.emplace_back(x, 0.0, config.orbit_altitude);
  }

  // Users: uniform horizontal distance and azimuth around their RIS-ABS
  // (user i belongs to RIS-ABS i mod Q), on the ground plane.
  std::uniform_real_distribution<double> dist_draw(config.user_distance_min,
                                                   config.user_distance_max);
  std::uniform_real_distribution<double> az_draw(0.0, 2.0 * kPi);
  for (int i = 0; i < config.num_users; ++i) {
    const Vec3& ris = geo.ris_abs_positions[i % config.num_ris_abs];
    double r = dist_draw(rng);
    double az = az_draw(rng);
    geo.user_positions.emplace_back(ris.x() + r * std::cos(az), ris.y() + r * std::sin(az), 0.0);
  }

  // RHS apertures: boresight nadir.
  for (int s = 0; s < config.num_satellites; ++s)
    geo.rhs.push_back(make_planar_grid(config.rhs_elements,
                                       config.rhs_element_spacing * lambda, -Vec3::UnitZ(),
                                       config.rhs_feeds));

  // T-RIS apertures: boresight toward the satellite cluster centroid.
  Vec3 sat_centroid = Vec3::Zero();
  for (const auto& p : geo.satellite_positions) sat_centroid += p;
  sat_centroid /= static_cast<double>(config.num_satellites);
  for (int q = 0; q < config.num_ris_abs; ++q) {
    Vec3 boresight = (sat_centroid - geo.ris_abs_positions[q]).normalized();
    geo.tris.push_back(make_planar_grid(config.tris_elements,
                                        config.tris_element_spacing * lambda, boresight));
  }
  return geo;
}

CVector steering_vector(const SurfaceSpec& spec, const Vec3& direction, double lambda) {
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("steering_vector: direction must be a unit vector");
  const double k = 2.0 * kPi / lambda;
  CVector a(spec.element_positions.size());
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    double phase = k * spec.element_positions[static_cast<std::size_t>(n)].dot(direction);
    a(n) = std::polar(1.0, phase);
  }
  return a;
}

}  // namespace hmimo
