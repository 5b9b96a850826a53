#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "hrl/harness/checkpoint.hpp"
#include "hrl/harness/config.hpp"
#include "hrl/harness/records.hpp"
#include "hrl/nn/network.hpp"
#include "hrl/ppo/trainer.hpp"

namespace hrl::harness {

std::unique_ptr<ppo::Trainer> make_trainer(const ExperimentConfig& config, std::uint64_t seed);

/// Outcome of training one seed to `total_timesteps`.
struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<RunRow> rows;
  std::vector<UpdateRow> updates;
  Checkpoint checkpoint;  // "actor", "critic" and, for hier, "reward_actor", "reward_critic"
};

/// Trains in memory; nothing is written.
SeedRun train_seed(const ExperimentConfig& config, std::uint64_t seed);

/// Paths written by run_train for one seed.
struct SeedFiles {
  std::filesystem::path run_csv;
  std::filesystem::path update_csv;
  std::filesystem::path checkpoint;
};
SeedFiles seed_files(const ExperimentConfig& config, std::uint64_t seed);

/// Trains every configured seed (up to `jobs` at a time) and writes, under output_dir,
/// config.json, one run CSV, update CSV and checkpoint per seed, and an atomically
/// renamed summary.csv. Throws InputError at startup if output_dir is not writable.
std::vector<SeedRun> run_train(const ExperimentConfig& config);

/// Mean-action rollouts of `actor` over `episodes` consecutive pendulum episodes whose
/// initial states come from `seed`. Returns global-reward episode returns.
EvalSummary evaluate_policy(const nn::NetworkParameters& actor, int episodes, std::uint64_t seed,
                            std::string label = "policy");

/// Loads a checkpoint and evaluates its "actor" network.
EvalSummary run_eval(const std::filesystem::path& checkpoint, int episodes, std::uint64_t seed);

}  // namespace hrl::harness
