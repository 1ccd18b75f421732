#pragma once

#include <cstdint>
#include <random>

namespace hmimo {

/// Stream purposes used to derive disjoint per-trial RNG streams.
enum class StreamPurpose : std::uint64_t {
  geometry = 1,
  channel = 2,
  beamformer_init = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

/// Deterministic stream derived from (master_seed, trial_index, purpose).
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t trial_index,
                                   StreamPurpose purpose) {
  std::uint64_t s = splitmix64(master_seed);
  s = hash_combine(s, trial_index);
  s = hash_combine(s, static_cast<std::uint64_t>(purpose));
  return std::mt19937_64(s);
}

}  // namespace hmimo
