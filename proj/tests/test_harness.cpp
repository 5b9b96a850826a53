#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "hrl/errors.hpp"
#include "hrl/harness/checkpoint.hpp"
#include "hrl/harness/compare.hpp"
#include "hrl/harness/config.hpp"
#include "hrl/harness/experiment.hpp"
#include "hrl/harness/records.hpp"
#include "hrl/harness/svg_plot.hpp"
#include "hrl/ppo/trainer.hpp"

using namespace hrl;
using namespace hrl::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir =
      fs::temp_directory_path() / ("hrl_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Small but complete configuration: 12 episodes per seed in a few seconds.
ExperimentConfig tiny_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.seeds = {1, 2};
  cfg.total_timesteps = 2400;
  cfg.architecture = {2, 16};
  cfg.hierarchy.architecture = {2, 16};
  cfg.ppo.epochs = 2;
  cfg.eval_episodes = 3;
  cfg.output_dir = out;
  return cfg;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Columns 5 and 6 (global and shaped returns) of a run CSV.
std::vector<std::string> return_columns(const fs::path& csv) {
  std::vector<std::string> out;
  for (const auto& line : lines(slurp(csv))) {
    std::vector<std::string> f;
    std::stringstream in(line);
    std::string x;
    while (std::getline(in, x, ',')) f.push_back(x);
    out.push_back(f.at(2) + "," + f.at(3) + "," + f.at(4) + "," + f.at(5));
  }
  return out;
}

}  // namespace

TEST(Config, DefaultsAndMinimalDocument) {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({"variant":"baseline"})"));
  EXPECT_EQ(cfg.variant, Variant::Baseline);
  EXPECT_EQ(cfg.seeds.size(), 5U);
  EXPECT_EQ(cfg.total_timesteps, 150000);
  EXPECT_EQ(cfg.eval_episodes, 100);
  EXPECT_EQ(cfg.ppo.num_actors, 4);
  EXPECT_EQ(cfg.ppo.horizon, 128);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.variant_label(), "baseline");
}

TEST(Config, RoundTripAndOverrides) {
  const auto doc = nlohmann::json::parse(
      R"({"variant":"hier","depth":2,"seeds":[7,8],"gamma":0.9,"squash":"tanh11",
          "critic_target":"global","shaped_reward_normalization":"none","jobs":3})");
  const auto cfg = config_from_json(doc);
  EXPECT_EQ(cfg.variant, Variant::Hier);
  EXPECT_EQ(cfg.hierarchy.depth, 2);
  EXPECT_EQ(cfg.hierarchy.squash, hierarchy::Squash::Tanh11);
  EXPECT_EQ(cfg.hierarchy.critic_target, hierarchy::CriticTarget::Global);
  EXPECT_EQ(cfg.gae.gamma, 0.9);
  const auto again = config_from_json(config_to_json(cfg));
  EXPECT_EQ(config_to_json(again), config_to_json(cfg));
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"gama":0.9})")), ConfigurationError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"variant":"tla"})")), ConfigurationError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"gamma":"high"})")), ConfigurationError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1,2]")), ConfigurationError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"seeds":[]})")), ConfigurationError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"total_timesteps":100})")),
               ConfigurationError);
  ExperimentConfig cfg;
  cfg.seeds.clear();
  EXPECT_THROW(cfg.validate(), ConfigurationError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), InputError);
}

TEST(Records, MovingAverageMatchesRecomputation) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1600.0, 0.0);
  std::vector<ppo::EpisodeSummary> episodes;
  for (int k = 0; k < 57; ++k) episodes.push_back({k % 4, 200 * (k + 1), u(rng), u(rng)});
  std::vector<RunRow> rows;
  append_episodes(rows, "baseline", 3, std::span(episodes).first(20));
  append_episodes(rows, "baseline", 3, std::span(episodes).subspan(20));
  ASSERT_EQ(rows.size(), episodes.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].episode_index, static_cast<std::int64_t>(k));
    if (k < 9) {
      EXPECT_FALSE(rows[k].moving_avg_10.has_value());
      continue;
    }
    double sum = 0.0;
    for (std::size_t j = k - 9; j <= k; ++j) sum += episodes[j].return_global;
    ASSERT_TRUE(rows[k].moving_avg_10.has_value());
    EXPECT_NEAR(*rows[k].moving_avg_10, sum / 10.0, 1e-9);
  }
}

TEST(Records, TrailingMean) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto m = trailing_mean(v, 3);
  EXPECT_FALSE(m[1].has_value());
  EXPECT_EQ(*m[2], 2.0);
  EXPECT_EQ(*m[3], 3.0);
}

TEST(Records, FormatDoubleRoundTrips) {
  for (const double x : {0.1, -1234.5678901234567, 1e-300, 3.0, -0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(Records, RunCsvSchemaAndRoundTrip) {
  const auto dir = scratch("csv");
  std::vector<ppo::EpisodeSummary> episodes;
  for (int k = 0; k < 12; ++k) episodes.push_back({0, 200 * (k + 1), -100.0 - k, -50.25 * k});
  std::vector<RunRow> rows;
  append_episodes(rows, "hier3", 9, episodes);
  write_run_csv(dir / "run.csv", rows);
  const auto text = slurp(dir / "run.csv");
  const auto ls = lines(text);
  EXPECT_EQ(ls.front(), kRunCsvHeader);
  EXPECT_EQ(ls.front(),
            "variant,seed,env_step,episode_index,episode_return_global_R,episode_return_shaped_r,"
            "moving_avg_10");
  EXPECT_EQ(ls.size(), 13U);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(ls[1], "hier3,9,200,0,-100,-0,");
  EXPECT_TRUE(is_run_csv(dir / "run.csv"));
  const auto back = read_run_csv(dir / "run.csv");
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].episode_return_global, rows[k].episode_return_global);
    EXPECT_EQ(back[k].moving_avg_10, rows[k].moving_avg_10);
  }
  std::ofstream(dir / "other.csv") << "a,b\n1,2\n";
  EXPECT_FALSE(is_run_csv(dir / "other.csv"));
  EXPECT_THROW(read_run_csv(dir / "other.csv"), InputError);
  fs::remove_all(dir);
}

TEST(Records, EvalSummaryStatistics) {
  const auto s = EvalSummary::from_returns("x", 1, {-100.0, -200.0, -300.0});
  EXPECT_EQ(s.mean_return, -200.0);
  EXPECT_EQ(s.sum_return, -600.0);
  EXPECT_NEAR(s.std_return, std::sqrt(20000.0 / 3.0), 1e-9);
}

namespace {

Checkpoint sample_checkpoint() {
  std::mt19937_64 rng(3);
  const auto agent = ppo::make_main_agent({2, 5}, 1, rng);
  Checkpoint c;
  c.networks.emplace_back("actor", agent.actor);
  c.networks.emplace_back("critic", agent.critic);
  return c;
}

}  // namespace

TEST(CheckpointTest, RoundTripIsExact) {
  const auto c = sample_checkpoint();
  const auto back = decode_checkpoint(encode_checkpoint(c));
  ASSERT_EQ(back.networks.size(), 2U);
  EXPECT_TRUE(back.get("actor") == c.get("actor"));
  EXPECT_TRUE(back.get("critic") == c.get("critic"));
  EXPECT_EQ(encode_checkpoint(back), encode_checkpoint(c));
  EXPECT_THROW((void)back.get("reward_actor"), InputError);
}

TEST(CheckpointTest, LayoutHeader) {
  const auto bytes = encode_checkpoint(sample_checkpoint());
  EXPECT_EQ(bytes.substr(0, 8), std::string("HRLCKPT\0", 8));
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), kCheckpointVersion);
  EXPECT_EQ(bytes[9], 0);
}

TEST(CheckpointTest, CorruptionIsRejected) {
  const auto bytes = encode_checkpoint(sample_checkpoint());
  for (std::size_t cut = 0; cut < bytes.size(); cut += 7) {
    EXPECT_THROW(decode_checkpoint(bytes.substr(0, cut)), InputError) << cut;
  }
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_checkpoint(bad_magic), InputError);
  auto bad_version = bytes;
  bad_version[8] = 9;
  EXPECT_THROW(decode_checkpoint(bad_version), InputError);
  EXPECT_THROW(decode_checkpoint(bytes + "x"), InputError);
  auto nan_value = bytes;
  const std::uint64_t nan_bits = 0x7ff8000000000000ULL;
  std::memcpy(nan_value.data() + nan_value.size() - 8, &nan_bits, 8);
  EXPECT_THROW(decode_checkpoint(nan_value), InputError);
  EXPECT_THROW(load_checkpoint("/nonexistent.ckpt"), InputError);
}

TEST(Eval, UntrainedPolicyWithinBoundsAndDeterministic) {
  std::mt19937_64 rng(8);
  const auto agent = ppo::make_main_agent({2, 16}, 1, rng);
  const auto a = evaluate_policy(agent.actor, 10, 5);
  const auto b = evaluate_policy(agent.actor, 10, 5);
  EXPECT_EQ(a.episode_returns.size(), 10U);
  EXPECT_EQ(a.episode_returns, b.episode_returns);
  EXPECT_LE(a.mean_return, 0.0);
  EXPECT_GE(a.mean_return, -3254.72);
  for (const double r : a.episode_returns) {
    EXPECT_LE(r, 0.0);
    EXPECT_GE(r, -200 * env::PendulumPhysics::max_cost);
  }
  EXPECT_NE(evaluate_policy(agent.actor, 10, 6).episode_returns, a.episode_returns);
  EXPECT_THROW(evaluate_policy(agent.actor, 0, 5), ConfigurationError);
}

TEST(Train, MinimalRunAndFiles) {
  const auto dir = scratch("minimal");
  ExperimentConfig cfg = tiny_config(dir);
  cfg.seeds = {1};
  cfg.total_timesteps = cfg.ppo.batch_size();
  const auto runs = run_train(cfg);
  ASSERT_EQ(runs.size(), 1U);
  EXPECT_EQ(runs[0].updates.size(), 1U);
  const auto files = seed_files(cfg, 1);
  EXPECT_TRUE(fs::exists(files.run_csv));
  EXPECT_TRUE(fs::exists(files.update_csv));
  EXPECT_TRUE(fs::exists(dir / "config.json"));
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_EQ(lines(slurp(files.run_csv)).front(), kRunCsvHeader);
  const auto summary = run_eval(files.checkpoint, 4, 0);
  EXPECT_EQ(summary.episode_returns.size(), 4U);
  EXPECT_EQ(summary.episode_returns, run_eval(files.checkpoint, 4, 0).episode_returns);
  fs::remove_all(dir);
}

TEST(Train, UnwritableOutputFailsAtStartup) {
  const auto dir = scratch("unwritable");
  std::ofstream(dir / "file") << "x";
  ExperimentConfig cfg = tiny_config(dir / "file" / "sub");
  EXPECT_THROW(run_train(cfg), InputError);
  fs::remove_all(dir);
}

TEST(Train, IdenticalConfigGivesIdenticalBytes) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  auto cfg = tiny_config(a);
  cfg.variant = Variant::Hier;
  cfg.jobs = 2;
  run_train(cfg);
  cfg.output_dir = b;
  cfg.jobs = 1;
  run_train(cfg);
  for (const std::uint64_t seed : cfg.seeds) {
    cfg.output_dir = a;
    const auto fa = seed_files(cfg, seed);
    cfg.output_dir = b;
    const auto fb = seed_files(cfg, seed);
    EXPECT_EQ(slurp(fa.run_csv), slurp(fb.run_csv));
    EXPECT_EQ(slurp(fa.update_csv), slurp(fb.update_csv));
    EXPECT_EQ(slurp(fa.checkpoint), slurp(fb.checkpoint));
  }
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Train, DepthZeroMatchesBaselineColumns) {
  const auto a = scratch("d0_base");
  const auto b = scratch("d0_hier");
  auto cfg = tiny_config(a);
  run_train(cfg);
  auto hier = tiny_config(b);
  hier.variant = Variant::Hier;
  hier.hierarchy.depth = 0;
  run_train(hier);
  for (const std::uint64_t seed : cfg.seeds) {
    const auto base_cols = return_columns(seed_files(cfg, seed).run_csv);
    const auto hier_cols = return_columns(seed_files(hier, seed).run_csv);
    EXPECT_GT(base_cols.size(), 10U);
    EXPECT_EQ(base_cols, hier_cols);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

namespace {

void write_rows(const fs::path& path, const std::string& variant, std::uint64_t seed,
                const std::vector<std::pair<std::int64_t, double>>& points) {
  std::vector<ppo::EpisodeSummary> episodes;
  for (const auto& [step, ret] : points) episodes.push_back({0, step, ret, ret});
  std::vector<RunRow> rows;
  append_episodes(rows, variant, seed, episodes);
  write_run_csv(path, rows);
}

std::vector<std::pair<std::int64_t, double>> ramp(int n, std::int64_t stride, double start,
                                                  double slope) {
  std::vector<std::pair<std::int64_t, double>> out;
  for (int k = 0; k < n; ++k) out.emplace_back(stride * (k + 1), start + slope * k);
  return out;
}

}  // namespace

TEST(Compare, SelfComparisonGivesIdenticalSeries) {
  const auto dir = scratch("cmp_self");
  fs::create_directories(dir / "run");
  write_rows(dir / "run" / "baseline_seed1.csv", "baseline", 1, ramp(30, 200, -1200, 20));
  write_rows(dir / "run" / "baseline_seed2.csv", "baseline", 2, ramp(30, 200, -1000, 15));
  const auto cmp = run_compare({dir / "run", dir / "run"}, dir / "out");
  ASSERT_EQ(cmp.series.size(), 2U);
  EXPECT_EQ(cmp.series[0].mean, cmp.series[1].mean);
  EXPECT_EQ(cmp.series[0].std_dev, cmp.series[1].std_dev);
  EXPECT_EQ(cmp.series[0].env_steps, cmp.series[1].env_steps);
  EXPECT_FALSE(cmp.resampled);
  EXPECT_EQ(cmp.series[0].seed_count.front(), 2);
  // First moving average lands on the 10th episode.
  EXPECT_EQ(cmp.series[0].env_steps.front(), 2000);
  double expected = 0.0;
  for (int k = 0; k < 10; ++k) expected += ((-1200.0 + 20 * k) + (-1000.0 + 15 * k)) / 20.0;
  EXPECT_NEAR(cmp.series[0].mean.front(), expected, 1e-9);
  const auto csv = slurp(dir / "out" / "comparison.csv");
  EXPECT_EQ(lines(csv).front(), "series,env_step,mean_moving_avg_10,std_moving_avg_10,num_seeds");
  const auto svg = slurp(dir / "out" / "comparison.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 10, true);
  fs::remove_all(dir);
}

TEST(Compare, EmptyDirectoryIsNamed) {
  const auto dir = scratch("cmp_empty");
  fs::create_directories(dir / "run");
  fs::create_directories(dir / "nothing_here");
  write_rows(dir / "run" / "baseline_seed1.csv", "baseline", 1, ramp(12, 200, -900, 1));
  try {
    run_compare({dir / "run", dir / "nothing_here"}, dir / "out");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("nothing_here"), std::string::npos);
  }
  EXPECT_THROW(run_compare({dir / "run"}, dir / "out"), ConfigurationError);
  fs::remove_all(dir);
}

TEST(Compare, SymmetricUnderPermutation) {
  const auto dir = scratch("cmp_sym");
  fs::create_directories(dir / "b");
  fs::create_directories(dir / "h");
  for (std::uint64_t s = 1; s <= 3; ++s) {
    write_rows(dir / "b" / ("baseline_seed" + std::to_string(s) + ".csv"), "baseline", s,
               ramp(25, 200, -1300.0 + 10.0 * s, 30));
    write_rows(dir / "h" / ("hier3_seed" + std::to_string(s) + ".csv"), "hier3", s,
               ramp(25, 200, -1250.0 - 5.0 * s, 33));
  }
  const auto ab = run_compare({dir / "b", dir / "h"}, dir / "ab");
  const auto ba = run_compare({dir / "h", dir / "b"}, dir / "ba");
  ASSERT_EQ(ab.series.size(), 2U);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& x = ab.series[k];
    const auto& y = ba.series[1 - k];
    EXPECT_EQ(x.label, y.label);
    EXPECT_EQ(x.color, y.color);
    EXPECT_EQ(x.mean, y.mean);
    EXPECT_EQ(x.std_dev, y.std_dev);
  }
  EXPECT_EQ(ab.series[0].color, "#000000");
  EXPECT_EQ(ab.series[1].color, "#1f4fd1");
  fs::remove_all(dir);
}

TEST(Compare, MismatchedGridsResampleToCoarser) {
  const auto dir = scratch("cmp_grid");
  fs::create_directories(dir / "fine");
  fs::create_directories(dir / "coarse");
  write_rows(dir / "fine" / "baseline_seed1.csv", "baseline", 1, ramp(40, 100, -1000, 10));
  write_rows(dir / "coarse" / "hier3_seed1.csv", "hier3", 1, ramp(20, 200, -1000, 20));
  const auto cmp = run_compare({dir / "fine", dir / "coarse"}, dir / "out");
  EXPECT_TRUE(cmp.resampled);
  EXPECT_FALSE(cmp.warnings.empty());
  EXPECT_EQ(cmp.grid.size(), 11U);
  for (const auto& s : cmp.series) EXPECT_EQ(s.env_steps, cmp.grid);
  fs::remove_all(dir);
}

TEST(SvgPlot, NiceTicksCoverRange) {
  const auto ticks = nice_ticks(-1234.0, -87.0);
  ASSERT_GE(ticks.size(), 3U);
  EXPECT_GE(ticks.front(), -1234.0);
  EXPECT_LE(ticks.back(), -87.0);
  const auto empty = render_line_plot({}, PlotOptions{});
  EXPECT_NE(empty.find("</svg>"), std::string::npos);
}
