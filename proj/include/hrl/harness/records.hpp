#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrl/ppo/rollout.hpp"
#include "hrl/ppo/update.hpp"

namespace hrl::harness {

inline constexpr int kMovingAverageWindow = 10;

/// One completed training episode.
struct RunRow {
  std::string variant;
  std::uint64_t seed = 0;
  std::int64_t env_step = 0;
  std::int64_t episode_index = 0;  // 0-based
  double episode_return_global = 0.0;
  double episode_return_shaped = 0.0;
  std::optional<double> moving_avg_10;  // empty for the first nine episodes
};

/// Fixed column order of run CSVs.
inline constexpr const char* kRunCsvHeader =
    "variant,seed,env_step,episode_index,episode_return_global_R,episode_return_shaped_r,"
    "moving_avg_10";

/// Trailing mean over `window` values; entry k is empty until k + 1 >= window.
std::vector<std::optional<double>> trailing_mean(std::span<const double> values, int window);

/// Appends episodes to `rows`, numbering them and filling in the moving average.
void append_episodes(std::vector<RunRow>& rows, const std::string& variant, std::uint64_t seed,
                     std::span<const ppo::EpisodeSummary> episodes);

/// Shortest round-trip decimal representation, so output bytes depend only on the value.
std::string format_double(double value);

void write_run_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows);
/// Throws InputError if the file is not a run CSV.
std::vector<RunRow> read_run_csv(const std::filesystem::path& path);
/// True if the first line of the file is the run CSV header.
bool is_run_csv(const std::filesystem::path& path);

struct UpdateRow {
  std::int64_t env_step = 0;
  ppo::UpdateStats main;
  std::optional<ppo::UpdateStats> reward;
};

void write_update_csv(const std::filesystem::path& path, const std::vector<UpdateRow>& rows);

/// Deterministic-policy evaluation of one checkpoint.
struct EvalSummary {
  std::string label;
  std::uint64_t seed = 0;
  std::vector<double> episode_returns;
  double mean_return = 0.0;
  double std_return = 0.0;  // population standard deviation
  double sum_return = 0.0;

  static EvalSummary from_returns(std::string label, std::uint64_t seed,
                                  std::vector<double> returns);
};

/// label,seed,episodes,mean_return,std_return,sum_return per summary plus an aggregate row
/// (label "aggregate") holding the mean of the per-seed means.
void write_eval_csv(const std::filesystem::path& path, const std::vector<EvalSummary>& summaries);
void write_eval_episodes_csv(const std::filesystem::path& path, const EvalSummary& summary);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace hrl::harness
