#pragma once

#include <cstdint>
#include <random>

namespace hrl {

/// Named sub-streams derived from one experiment seed. Each consumer draws from its own
/// stream so that adding a consumer never shifts the numbers another one sees.
enum class Stream : std::uint32_t {
  MainInit = 1,
  RewardInit = 2,
  MainSampling = 3,
  RewardSampling = 4,
  MainShuffle = 5,
  RewardShuffle = 6,
  Environment = 100,  // + actor index
  Evaluation = 1000,
};

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffULL),
                    static_cast<std::uint32_t>(seed >> 32U), stream, 0x5eedU};
  return std::mt19937_64(seq);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, Stream stream, std::uint32_t offset = 0) {
  return make_stream(seed, static_cast<std::uint32_t>(stream) + offset);
}

}  // namespace hrl
