#pragma once

#include <cstdint>
#include <random>

namespace aoii {

using Rng = std::mt19937_64;

// SplitMix64 mixing step, used to derive seeds for independent streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One base seed fans out into independent generators. The simulator keeps
// separate streams for source, channel and policy so that runs with the same
// seed share ground-truth trajectories and erasure draws across policies.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(splitmix64(splitmix64(seed) + 0xd1342543de82ef95ULL * (stream + 1)));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace aoii
