#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hrl/hierarchy/reward_agent.hpp"
#include "hrl/ppo/config.hpp"
#include "hrl/ppo/trainer.hpp"

namespace hrl::harness {

enum class Variant : std::uint8_t { Baseline, Hier };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant variant);

struct ExperimentConfig {
  Variant variant = Variant::Baseline;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::int64_t total_timesteps = 150000;
  ppo::PpoConfig ppo;
  ppo::GaeConfig gae;
  ppo::Architecture architecture{3, 64};
  hierarchy::HierarchyConfig hierarchy;  // depth is used only by the hier variant
  int eval_episodes = 100;
  std::uint64_t eval_seed = 0;
  int jobs = 1;  // seeds trained concurrently
  std::filesystem::path output_dir = "runs";

  /// Label written into the CSV variant column.
  [[nodiscard]] std::string variant_label() const;
  void validate() const;
};

/// Reads a flat JSON object; every key is optional and unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace hrl::harness
