#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hrl::harness {

/// moving_avg_10 of one seed as a step function of env_step.
struct SeedCurve {
  std::uint64_t seed = 0;
  std::vector<std::int64_t> env_steps;  // strictly increasing
  std::vector<double> values;

  /// Value of the last point at or before `env_step`; NaN if there is none.
  [[nodiscard]] double value_at(std::int64_t env_step) const;
};

/// All seeds of one variant found in one run directory.
struct RunSeries {
  std::string label;
  std::filesystem::path directory;
  std::vector<SeedCurve> seeds;
};

/// Reads every run CSV in `directory`, one series per variant present. Throws InputError
/// naming the directory when it holds no run CSV.
std::vector<RunSeries> load_run_directory(const std::filesystem::path& directory);

struct ComparedSeries {
  std::string label;
  std::string color;
  std::vector<std::int64_t> env_steps;
  std::vector<double> mean;
  std::vector<double> std_dev;  // population std across seeds
  std::vector<int> seed_count;
};

struct Comparison {
  std::vector<ComparedSeries> series;
  std::vector<std::int64_t> grid;
  bool resampled = false;
  std::vector<std::string> warnings;
};

/// Puts every series on the coarsest step grid found among all seeds and averages across
/// seeds. When grids differ the others are resampled onto it and a warning is recorded.
Comparison compare_series(std::vector<RunSeries> inputs);

/// Loads the directories, compares them and writes comparison.csv and comparison.svg into
/// `output_dir`. Needs at least two directories.
Comparison run_compare(const std::vector<std::filesystem::path>& run_dirs,
                       const std::filesystem::path& output_dir);

std::string comparison_csv(const Comparison& comparison);
std::string comparison_svg(const Comparison& comparison);

}  // namespace hrl::harness
