#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hrl/nn/network.hpp"

namespace hrl::harness {

/// Named networks saved together. Binary layout (all integers and reals little-endian):
///
///   "HRLCKPT\0"  u32 version  u32 network_count
///   per network: u32 name_len, name bytes, u32 layer_count,
///                per layer (u32 input, u32 output, u8 activation), u32 log_std_len
///   then per network, per layer: weight (row-major) and bias as f64, then log_std as f64.
struct Checkpoint {
  std::vector<std::pair<std::string, nn::NetworkParameters>> networks;

  /// Throws InputError when no network has this name.
  [[nodiscard]] const nn::NetworkParameters& get(const std::string& name) const;
  [[nodiscard]] bool contains(const std::string& name) const;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
/// Throws InputError on a missing, truncated or otherwise corrupt file.
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(const std::string& bytes);

}  // namespace hrl::harness
