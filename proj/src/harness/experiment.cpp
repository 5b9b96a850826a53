#include "hrl/harness/experiment.hpp"

#include <fstream>
#include <future>
#include <system_error>

#include "hrl/env/pendulum.hpp"
#include "hrl/errors.hpp"
#include "hrl/hierarchy/dual_trainer.hpp"
#include "hrl/random.hpp"

namespace hrl::harness {

std::unique_ptr<ppo::Trainer> make_trainer(const ExperimentConfig& config, std::uint64_t seed) {
  if (config.variant == Variant::Baseline) {
    return std::make_unique<ppo::BaselineTrainer>(seed, config.ppo, config.gae, config.architecture);
  }
  return std::make_unique<hierarchy::DualTrainer>(seed, config.ppo, config.gae,
                                                  config.architecture, config.hierarchy);
}

SeedRun train_seed(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  auto trainer = make_trainer(config, seed);
  SeedRun run;
  run.seed = seed;
  const std::string label = config.variant_label();
  while (trainer->env_steps() < config.total_timesteps) {
    ppo::IterationResult result = trainer->iterate();
    append_episodes(run.rows, label, seed, result.episodes);
    run.updates.push_back({trainer->env_steps(), std::move(result.main_stats),
                           std::move(result.reward_stats)});
  }
  run.checkpoint.networks.emplace_back("actor", trainer->main_agent().actor);
  run.checkpoint.networks.emplace_back("critic", trainer->main_agent().critic);
  if (const ppo::Agent* reward = trainer->reward_agent()) {
    run.checkpoint.networks.emplace_back("reward_actor", reward->actor);
    run.checkpoint.networks.emplace_back("reward_critic", reward->critic);
  }
  return run;
}

SeedFiles seed_files(const ExperimentConfig& config, std::uint64_t seed) {
  const std::string stem = config.variant_label() + "_seed" + std::to_string(seed);
  return {config.output_dir / (stem + ".csv"), config.output_dir / (stem + "_updates.csv"),
          config.output_dir / (stem + ".ckpt")};
}

std::vector<SeedRun> run_train(const ExperimentConfig& config) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  {
    std::ofstream probe(config.output_dir / "config.json", std::ios::trunc);
    if (ec || !probe) {
      throw InputError("output directory '" + config.output_dir.string() + "' is not writable");
    }
    probe << config_to_json(config).dump(2) << "\n";
  }

  std::vector<SeedRun> runs(config.seeds.size());
  const auto train_and_write = [&config](std::uint64_t seed) {
    SeedRun run = train_seed(config, seed);
    const SeedFiles files = seed_files(config, seed);
    write_run_csv(files.run_csv, run.rows);
    write_update_csv(files.update_csv, run.updates);
    save_checkpoint(files.checkpoint, run.checkpoint);
    return run;
  };
  const auto jobs = static_cast<std::size_t>(config.jobs);
  for (std::size_t start = 0; start < config.seeds.size(); start += jobs) {
    const std::size_t stop = std::min(config.seeds.size(), start + jobs);
    std::vector<std::future<SeedRun>> pending;
    for (std::size_t k = start; k < stop; ++k) {
      pending.push_back(std::async(std::launch::async, train_and_write, config.seeds[k]));
    }
    for (std::size_t k = start; k < stop; ++k) {
      runs[k] = pending[k - start].get();
    }
  }

  std::string summary = "variant,seed,episodes,env_steps,final_moving_avg_10\n";
  for (const auto& run : runs) {
    summary += config.variant_label() + "," + std::to_string(run.seed) + "," +
               std::to_string(run.rows.size()) + "," +
               std::to_string(run.updates.empty() ? 0 : run.updates.back().env_step) + ",";
    if (!run.rows.empty() && run.rows.back().moving_avg_10) {
      summary += format_double(*run.rows.back().moving_avg_10);
    }
    summary += "\n";
  }
  write_file_atomically(config.output_dir / "summary.csv", summary);
  return runs;
}

EvalSummary evaluate_policy(const nn::NetworkParameters& actor, int episodes, std::uint64_t seed,
                            std::string label) {
  if (episodes < 1) {
    throw ConfigurationError("evaluation needs at least one episode");
  }
  if (actor.input_width() != env::Observation::width || actor.output_width() != 1) {
    throw ConfigurationError("actor is not shaped for the pendulum");
  }
  auto rng = make_stream(seed, Stream::Evaluation);
  std::vector<double> returns;
  returns.reserve(static_cast<std::size_t>(episodes));
  for (int ep = 0; ep < episodes; ++ep) {
    env::PendulumState state = env::reset(rng);
    double total = 0.0;
    for (int t = 0; t < env::PendulumPhysics::episode_steps; ++t) {
      const Eigen::VectorXd mean = nn::predict(actor, Eigen::VectorXd(env::observe(state).to_vector()));
      auto [next, result] = env::step(state, mean[0]);
      state = next;
      total += result.reward;
      if (result.done) {
        break;
      }
    }
    returns.push_back(total);
  }
  return EvalSummary::from_returns(std::move(label), seed, std::move(returns));
}

EvalSummary run_eval(const std::filesystem::path& checkpoint, int episodes, std::uint64_t seed) {
  const Checkpoint ckpt = load_checkpoint(checkpoint);
  return evaluate_policy(ckpt.get("actor"), episodes, seed, checkpoint.stem().string());
}

}  // namespace hrl::harness
