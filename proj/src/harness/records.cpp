#include "hrl/harness/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hrl/errors.hpp"

namespace hrl::harness {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::filesystem::path& path, int line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": cannot parse '" + text + "'");
  }
  return value;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot write '" + path.string() + "'");
  }
  out << contents;
  if (!out) {
    throw InputError("failed writing '" + path.string() + "'");
  }
}

}  // namespace

std::vector<std::optional<double>> trailing_mean(std::span<const double> values, int window) {
  std::vector<std::optional<double>> out(values.size());
  const auto w = static_cast<std::size_t>(window);
  if (w == 0) {
    return out;
  }
  for (std::size_t k = w - 1; k < values.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = k + 1 - w; j <= k; ++j) {
      sum += values[j];
    }
    out[k] = sum / static_cast<double>(w);
  }
  return out;
}

void append_episodes(std::vector<RunRow>& rows, const std::string& variant, std::uint64_t seed,
                     std::span<const ppo::EpisodeSummary> episodes) {
  for (const auto& ep : episodes) {
    RunRow row;
    row.variant = variant;
    row.seed = seed;
    row.env_step = ep.env_step;
    row.episode_index = static_cast<std::int64_t>(rows.size());
    row.episode_return_global = ep.return_global;
    row.episode_return_shaped = ep.return_shaped;
    rows.push_back(std::move(row));
    const auto n = rows.size();
    if (n >= static_cast<std::size_t>(kMovingAverageWindow)) {
      double sum = 0.0;
      for (std::size_t j = n - kMovingAverageWindow; j < n; ++j) {
        sum += rows[j].episode_return_global;
      }
      rows.back().moving_avg_10 = sum / kMovingAverageWindow;
    }
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_run_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows) {
  std::string text = std::string(kRunCsvHeader) + "\n";
  for (const auto& row : rows) {
    text += row.variant + "," + std::to_string(row.seed) + "," + std::to_string(row.env_step) +
            "," + std::to_string(row.episode_index) + "," +
            format_double(row.episode_return_global) + "," +
            format_double(row.episode_return_shaped) + "," +
            (row.moving_avg_10 ? format_double(*row.moving_avg_10) : std::string()) + "\n";
  }
  write_text(path, text);
}

bool is_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string header;
  return in && std::getline(in, header) && header == kRunCsvHeader;
}

std::vector<RunRow> read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) {
    throw InputError("'" + path.string() + "' is not a run CSV (unexpected header)");
  }
  std::vector<RunRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 7) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 7 fields");
    }
    RunRow row;
    row.variant = fields[0];
    row.seed = parse_number<std::uint64_t>(fields[1], path, line_no);
    row.env_step = parse_number<std::int64_t>(fields[2], path, line_no);
    row.episode_index = parse_number<std::int64_t>(fields[3], path, line_no);
    row.episode_return_global = parse_number<double>(fields[4], path, line_no);
    row.episode_return_shaped = parse_number<double>(fields[5], path, line_no);
    if (!fields[6].empty()) {
      row.moving_avg_10 = parse_number<double>(fields[6], path, line_no);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_update_csv(const std::filesystem::path& path, const std::vector<UpdateRow>& rows) {
  std::string text =
      "env_step,surrogate,value_loss,entropy,clip_fraction,approx_kl,skipped_minibatches,"
      "reward_surrogate,reward_value_loss,reward_entropy\n";
  for (const auto& row : rows) {
    const auto& m = row.main;
    text += std::to_string(row.env_step) + "," + format_double(m.surrogate) + "," +
            format_double(m.value_loss) + "," + format_double(m.entropy) + "," +
            format_double(m.clip_fraction) + "," + format_double(m.approx_kl) + "," +
            std::to_string(m.skipped_minibatches) + ",";
    if (row.reward) {
      text += format_double(row.reward->surrogate) + "," + format_double(row.reward->value_loss) +
              "," + format_double(row.reward->entropy);
    } else {
      text += ",,";
    }
    text += "\n";
  }
  write_text(path, text);
}

EvalSummary EvalSummary::from_returns(std::string label, std::uint64_t seed,
                                      std::vector<double> returns) {
  EvalSummary s;
  s.label = std::move(label);
  s.seed = seed;
  s.episode_returns = std::move(returns);
  for (const double r : s.episode_returns) {
    s.sum_return += r;
  }
  const auto n = static_cast<double>(s.episode_returns.size());
  if (n > 0) {
    s.mean_return = s.sum_return / n;
    double sq = 0.0;
    for (const double r : s.episode_returns) {
      sq += (r - s.mean_return) * (r - s.mean_return);
    }
    s.std_return = std::sqrt(sq / n);
  }
  return s;
}

void write_eval_csv(const std::filesystem::path& path, const std::vector<EvalSummary>& summaries) {
  std::string text = "label,seed,episodes,mean_return,std_return,sum_return\n";
  double mean_of_means = 0.0;
  for (const auto& s : summaries) {
    text += s.label + "," + std::to_string(s.seed) + "," +
            std::to_string(s.episode_returns.size()) + "," + format_double(s.mean_return) + "," +
            format_double(s.std_return) + "," + format_double(s.sum_return) + "\n";
    mean_of_means += s.mean_return;
  }
  if (!summaries.empty()) {
    mean_of_means /= static_cast<double>(summaries.size());
    text += "aggregate,," + std::to_string(summaries.size()) + "," + format_double(mean_of_means) +
            ",,\n";
  }
  write_file_atomically(path, text);
}

void write_eval_episodes_csv(const std::filesystem::path& path, const EvalSummary& summary) {
  std::string text = "episode,return\n";
  for (std::size_t k = 0; k < summary.episode_returns.size(); ++k) {
    text += std::to_string(k) + "," + format_double(summary.episode_returns[k]) + "\n";
  }
  write_text(path, text);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  write_text(tmp, contents);
  std::filesystem::rename(tmp, path);
}

}  // namespace hrl::harness
