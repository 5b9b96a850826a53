// Command-line driver: train, eval, compare, tree.
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hrl/errors.hpp"
#include "hrl/graph/reward_tree.hpp"
#include "hrl/harness/compare.hpp"
#include "hrl/harness/config.hpp"
#include "hrl/harness/experiment.hpp"
#include "hrl/harness/records.hpp"

namespace {

using nlohmann::json;
using namespace hrl;

enum class Kind { Text, Number, Flag, SeedList };

struct ConfigFlag {
  const char* key;
  Kind kind;
  const char* help;
};

constexpr ConfigFlag kConfigFlags[] = {
    {"variant", Kind::Text, "baseline or hier"},
    {"depth", Kind::Number, "number of reward signals (hier)"},
    {"seeds", Kind::SeedList, "comma separated seed list"},
    {"total_timesteps", Kind::Number, "environment steps per seed"},
    {"output_dir", Kind::Text, "directory for CSVs and checkpoints"},
    {"gamma", Kind::Number, "discount factor"},
    {"lam", Kind::Number, "GAE lambda"},
    {"clip_epsilon", Kind::Number, "PPO clip range"},
    {"c1", Kind::Number, "value loss coefficient"},
    {"c2", Kind::Number, "entropy coefficient"},
    {"learning_rate", Kind::Number, "Adam step size"},
    {"num_actors", Kind::Number, "parallel environments N"},
    {"horizon", Kind::Number, "rollout length T"},
    {"minibatch_size", Kind::Number, "minibatch size m"},
    {"epochs", Kind::Number, "epochs per update K"},
    {"max_grad_norm", Kind::Number, "gradient norm clip"},
    {"normalize_advantages", Kind::Flag, "true or false"},
    {"squash", Kind::Text, "sigmoid01, tanh11 or linear_clip"},
    {"shaped_reward_normalization", Kind::Text, "none or running_std"},
    {"critic_target", Kind::Text, "global or shaped"},
    {"hidden_layers", Kind::Number, "main network hidden layers"},
    {"hidden_width", Kind::Number, "main network hidden width"},
    {"reward_hidden_layers", Kind::Number, "reward network hidden layers"},
    {"reward_hidden_width", Kind::Number, "reward network hidden width"},
    {"eval_episodes", Kind::Number, "evaluation episodes per seed"},
    {"eval_seed", Kind::Number, "evaluation seed"},
    {"jobs", Kind::Number, "seeds trained concurrently"},
};

std::string dashed(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

json flag_value(const ConfigFlag& flag, const std::string& text) {
  switch (flag.kind) {
    case Kind::Text:
      return text;
    case Kind::Flag:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ConfigurationError(std::string("--") + dashed(flag.key) + " expects true or false");
    case Kind::Number:
      try {
        return json::parse(text);
      } catch (const json::exception&) {
        throw ConfigurationError(std::string("--") + dashed(flag.key) + " expects a number");
      }
    case Kind::SeedList: {
      json seeds = json::array();
      std::string item;
      std::stringstream in(text);
      while (std::getline(in, item, ',')) {
        try {
          std::size_t used = 0;
          seeds.push_back(std::stoull(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw ConfigurationError("--seeds expects a comma separated list of integers");
        }
      }
      return seeds;
    }
  }
  return nullptr;
}

std::string format_number(double v) { return harness::format_double(v); }

int fail(const char* category, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  std::cerr << "error: " << category << ": " << flat << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical reward shaping experiments on the pendulum"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train every configured seed and evaluate it");
  std::string config_path;
  train->add_option("--config", config_path, "JSON config; flags override its fields");
  std::map<std::string, std::string> overrides;
  for (const auto& flag : kConfigFlags) {
    train->add_option_function<std::string>(
        "--" + dashed(flag.key), [&overrides, &flag](const std::string& v) { overrides[flag.key] = v; },
        flag.help);
  }
  bool skip_eval = false;
  train->add_flag("--no-eval", skip_eval, "skip the evaluation after training");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate checkpoints with the mean action");
  std::vector<std::string> checkpoints;
  int eval_episodes = 100;
  std::uint64_t eval_seed = 0;
  std::string eval_out;
  eval->add_option("checkpoints", checkpoints, "checkpoint files")->required();
  eval->add_option("--episodes", eval_episodes, "episodes per checkpoint");
  eval->add_option("--seed", eval_seed, "seed for the initial states");
  eval->add_option("--out", eval_out, "summary CSV path");

  // compare
  auto* compare = app.add_subcommand("compare", "plot run directories against each other");
  std::vector<std::string> run_dirs;
  std::string compare_out = ".";
  compare->add_option("run_dirs", run_dirs, "run directories")->required();
  compare->add_option("--out", compare_out, "directory for comparison.csv and comparison.svg");

  // tree
  auto* tree = app.add_subcommand("tree", "evaluate a reward tree file");
  std::string tree_path;
  tree->add_option("file", tree_path, "lines of `node_id parent_id value`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return 2;
  }

  try {
    if (train->parsed()) {
      json doc = json::object();
      if (!config_path.empty()) {
        doc = harness::config_to_json(harness::load_config(config_path));
      }
      for (const auto& flag : kConfigFlags) {
        if (const auto it = overrides.find(flag.key); it != overrides.end()) {
          doc[flag.key] = flag_value(flag, it->second);
        }
      }
      const harness::ExperimentConfig config = harness::config_from_json(doc);
      const auto runs = harness::run_train(config);
      std::vector<harness::EvalSummary> summaries;
      for (const auto& run : runs) {
        std::cout << config.variant_label() << " seed " << run.seed << ": " << run.rows.size()
                  << " episodes";
        if (!run.rows.empty() && run.rows.back().moving_avg_10) {
          std::cout << ", final moving_avg_10 " << format_number(*run.rows.back().moving_avg_10);
        }
        if (!skip_eval) {
          auto summary = harness::evaluate_policy(run.checkpoint.get("actor"), config.eval_episodes,
                                                  config.eval_seed,
                                                  config.variant_label() + "_seed" +
                                                      std::to_string(run.seed));
          summary.seed = run.seed;
          std::cout << ", eval mean " << format_number(summary.mean_return);
          summaries.push_back(std::move(summary));
        }
        std::cout << "\n";
      }
      if (!skip_eval) {
        harness::write_eval_csv(config.output_dir / "eval.csv", summaries);
      }
    } else if (eval->parsed()) {
      std::vector<harness::EvalSummary> summaries;
      for (const auto& path : checkpoints) {
        auto summary = harness::run_eval(path, eval_episodes, eval_seed);
        std::cout << summary.label << ": mean " << format_number(summary.mean_return) << ", std "
                  << format_number(summary.std_return) << ", sum "
                  << format_number(summary.sum_return) << "\n";
        summaries.push_back(std::move(summary));
      }
      if (!eval_out.empty()) {
        harness::write_eval_csv(eval_out, summaries);
      }
    } else if (compare->parsed()) {
      std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
      const auto cmp = harness::run_compare(dirs, compare_out);
      for (const auto& w : cmp.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      for (const auto& s : cmp.series) {
        std::cout << s.label << ": " << s.env_steps.size() << " points";
        if (!s.mean.empty()) {
          std::cout << ", final mean " << format_number(s.mean.back());
        }
        std::cout << "\n";
      }
    } else if (tree->parsed()) {
      const auto parsed = graph::RewardTree::parse_file(tree_path);
      std::cout << format_number(graph::evaluate(parsed)) << "\n";
      for (const auto& trace : graph::leaf_traces(parsed)) {
        std::cout << "trace";
        for (const double v : trace) {
          std::cout << " " << format_number(v);
        }
        std::cout << "\n";
      }
    }
  } catch (const graph::TreeError& e) {
    return fail("tree", e.what());
  } catch (const ConfigurationError& e) {
    return fail("config", e.what());
  } catch (const InputError& e) {
    return fail("input", e.what());
  } catch (const NumericalError& e) {
    return fail("numerical", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
