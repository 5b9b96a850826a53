#include "hrl/harness/compare.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "hrl/errors.hpp"
#include "hrl/harness/records.hpp"
#include "hrl/harness/svg_plot.hpp"

namespace hrl::harness {

namespace {

constexpr const char* kPalette[] = {"#d1431f", "#2a9d3f", "#8e44ad", "#e69f00", "#009e9e"};

std::string pick_color(const std::string& label, std::size_t& palette_next, bool& used_blue,
                       bool& used_black) {
  if (label.rfind("hier", 0) == 0 && !used_blue) {
    used_blue = true;
    return "#1f4fd1";
  }
  if (label.rfind("baseline", 0) == 0 && !used_black) {
    used_black = true;
    return "#000000";
  }
  return kPalette[palette_next++ % std::size(kPalette)];
}

SeedCurve curve_from_rows(std::uint64_t seed, const std::vector<const RunRow*>& rows) {
  SeedCurve curve;
  curve.seed = seed;
  for (const RunRow* row : rows) {
    if (!row->moving_avg_10) {
      continue;
    }
    if (!curve.env_steps.empty() && curve.env_steps.back() == row->env_step) {
      curve.values.back() = *row->moving_avg_10;
    } else if (curve.env_steps.empty() || row->env_step > curve.env_steps.back()) {
      curve.env_steps.push_back(row->env_step);
      curve.values.push_back(*row->moving_avg_10);
    }
  }
  return curve;
}

}  // namespace

double SeedCurve::value_at(std::int64_t env_step) const {
  const auto it = std::upper_bound(env_steps.begin(), env_steps.end(), env_step);
  if (it == env_steps.begin()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return values[static_cast<std::size_t>(it - env_steps.begin() - 1)];
}

std::vector<RunSeries> load_run_directory(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw InputError("run directory '" + directory.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv" && is_run_csv(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw InputError("run directory '" + directory.string() + "' contains no run CSV files");
  }
  // variant -> seed -> rows
  std::map<std::string, std::map<std::uint64_t, std::vector<RunRow>>> grouped;
  for (const auto& file : files) {
    for (auto& row : read_run_csv(file)) {
      auto& bucket = grouped[row.variant][row.seed];
      bucket.push_back(std::move(row));
    }
  }
  std::vector<RunSeries> out;
  for (auto& [variant, seeds] : grouped) {
    RunSeries series;
    series.label = variant;
    series.directory = directory;
    for (auto& [seed, rows] : seeds) {
      std::stable_sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
        return a.episode_index < b.episode_index;
      });
      std::vector<const RunRow*> ptrs;
      for (const auto& r : rows) {
        ptrs.push_back(&r);
      }
      SeedCurve curve = curve_from_rows(seed, ptrs);
      if (!curve.env_steps.empty()) {
        series.seeds.push_back(std::move(curve));
      }
    }
    if (series.seeds.empty()) {
      throw InputError("run directory '" + directory.string() + "' has no episodes with a " +
                       "10-episode moving average for variant '" + variant + "'");
    }
    out.push_back(std::move(series));
  }
  return out;
}

Comparison compare_series(std::vector<RunSeries> inputs) {
  Comparison cmp;
  const std::vector<std::int64_t>* coarsest = nullptr;
  for (const auto& series : inputs) {
    for (const auto& seed : series.seeds) {
      if (coarsest == nullptr || seed.env_steps.size() < coarsest->size() ||
          (seed.env_steps.size() == coarsest->size() && seed.env_steps < *coarsest)) {
        coarsest = &seed.env_steps;
      }
    }
  }
  if (coarsest == nullptr) {
    throw InputError("nothing to compare");
  }
  cmp.grid = *coarsest;
  for (const auto& series : inputs) {
    for (const auto& seed : series.seeds) {
      if (seed.env_steps != cmp.grid) {
        cmp.resampled = true;
      }
    }
  }
  if (cmp.resampled) {
    cmp.warnings.push_back("step grids differ between runs; resampled onto the coarsest grid (" +
                           std::to_string(cmp.grid.size()) + " points)");
  }

  std::map<std::string, int> label_uses;
  std::size_t palette_next = 0;
  bool used_blue = false;
  bool used_black = false;
  for (const auto& series : inputs) {
    ComparedSeries out;
    const int use = ++label_uses[series.label];
    out.label = use == 1 ? series.label : series.label + " #" + std::to_string(use);
    out.color = pick_color(series.label, palette_next, used_blue, used_black);
    for (const std::int64_t step : cmp.grid) {
      double sum = 0.0;
      double sq = 0.0;
      int n = 0;
      for (const auto& seed : series.seeds) {
        const double v = seed.value_at(step);
        if (std::isnan(v)) {
          continue;
        }
        sum += v;
        sq += v * v;
        ++n;
      }
      if (n == 0) {
        continue;
      }
      const double mean = sum / n;
      out.env_steps.push_back(step);
      out.mean.push_back(mean);
      out.std_dev.push_back(std::sqrt(std::max(0.0, sq / n - mean * mean)));
      out.seed_count.push_back(n);
    }
    cmp.series.push_back(std::move(out));
  }
  return cmp;
}

std::string comparison_csv(const Comparison& comparison) {
  std::string text = "series,env_step,mean_moving_avg_10,std_moving_avg_10,num_seeds\n";
  for (const auto& s : comparison.series) {
    for (std::size_t k = 0; k < s.env_steps.size(); ++k) {
      text += s.label + "," + std::to_string(s.env_steps[k]) + "," + format_double(s.mean[k]) +
              "," + format_double(s.std_dev[k]) + "," + std::to_string(s.seed_count[k]) + "\n";
    }
  }
  return text;
}

std::string comparison_svg(const Comparison& comparison) {
  std::vector<PlotSeries> plot;
  for (const auto& s : comparison.series) {
    PlotSeries p;
    p.label = s.label;
    p.color = s.color;
    for (std::size_t k = 0; k < s.env_steps.size(); ++k) {
      p.x.push_back(static_cast<double>(s.env_steps[k]));
    }
    p.y = s.mean;
    p.spread = s.std_dev;
    plot.push_back(std::move(p));
  }
  PlotOptions options;
  options.title = "Average reward over a 10-episode window (mean ± std across seeds)";
  options.x_label = "environment steps";
  options.y_label = "episode return (global reward)";
  return render_line_plot(plot, options);
}

Comparison run_compare(const std::vector<std::filesystem::path>& run_dirs,
                       const std::filesystem::path& output_dir) {
  if (run_dirs.size() < 2) {
    throw ConfigurationError("compare needs at least two run directories");
  }
  std::vector<RunSeries> inputs;
  for (const auto& dir : run_dirs) {
    for (auto& series : load_run_directory(dir)) {
      inputs.push_back(std::move(series));
    }
  }
  Comparison cmp = compare_series(std::move(inputs));
  std::filesystem::create_directories(output_dir);
  write_file_atomically(output_dir / "comparison.csv", comparison_csv(cmp));
  write_file_atomically(output_dir / "comparison.svg", comparison_svg(cmp));
  return cmp;
}

}  // namespace hrl::harness
