#include "hrl/harness/config.hpp"

#include <fstream>
#include <set>

#include "hrl/env/pendulum.hpp"
#include "hrl/errors.hpp"

namespace hrl::harness {

using nlohmann::json;

Variant parse_variant(std::string_view name) {
  if (name == "baseline") return Variant::Baseline;
  if (name == "hier") return Variant::Hier;
  throw ConfigurationError("unknown variant '" + std::string(name) + "' (expected baseline|hier)");
}

std::string_view to_string(Variant variant) {
  return variant == Variant::Baseline ? "baseline" : "hier";
}

std::string ExperimentConfig::variant_label() const {
  return std::string(to_string(variant));
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) {
    throw ConfigurationError("at least one seed is required");
  }
  ppo.validate(env::PendulumPhysics::episode_steps);
  gae.validate();
  hierarchy.validate();
  if (total_timesteps < ppo.batch_size()) {
    throw ConfigurationError("total_timesteps must be at least num_actors * horizon");
  }
  if (eval_episodes < 1) {
    throw ConfigurationError("eval_episodes must be positive");
  }
  if (jobs < 1) {
    throw ConfigurationError("jobs must be positive");
  }
  if (architecture.hidden_layers < 0 || architecture.hidden_width < 1) {
    throw ConfigurationError("invalid main network architecture");
  }
}

namespace {

template <typename T>
void read(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) {
    try {
      out = doc.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigurationError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "variant", "depth", "seeds", "total_timesteps", "output_dir", "gamma", "lam",
      "clip_epsilon", "c1", "c2", "learning_rate", "num_actors", "horizon", "minibatch_size",
      "epochs", "max_grad_norm", "normalize_advantages", "squash", "shaped_reward_normalization",
      "critic_target", "hidden_layers", "hidden_width", "reward_hidden_layers",
      "reward_hidden_width", "eval_episodes", "eval_seed", "jobs"};
  return keys;
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ConfigurationError("config must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) {
      throw ConfigurationError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  std::string text;
  if (doc.contains("variant")) {
    read(doc, "variant", text);
    cfg.variant = parse_variant(text);
  }
  read(doc, "depth", cfg.hierarchy.depth);
  read(doc, "seeds", cfg.seeds);
  read(doc, "total_timesteps", cfg.total_timesteps);
  if (doc.contains("output_dir")) {
    read(doc, "output_dir", text);
    cfg.output_dir = text;
  }
  read(doc, "gamma", cfg.gae.gamma);
  read(doc, "lam", cfg.gae.lam);
  read(doc, "clip_epsilon", cfg.ppo.clip_epsilon);
  read(doc, "c1", cfg.ppo.c1);
  read(doc, "c2", cfg.ppo.c2);
  read(doc, "learning_rate", cfg.ppo.learning_rate);
  read(doc, "num_actors", cfg.ppo.num_actors);
  read(doc, "horizon", cfg.ppo.horizon);
  read(doc, "minibatch_size", cfg.ppo.minibatch_size);
  read(doc, "epochs", cfg.ppo.epochs);
  read(doc, "max_grad_norm", cfg.ppo.max_grad_norm);
  read(doc, "normalize_advantages", cfg.ppo.normalize_advantages);
  if (doc.contains("squash")) {
    read(doc, "squash", text);
    cfg.hierarchy.squash = hierarchy::parse_squash(text);
  }
  if (doc.contains("shaped_reward_normalization")) {
    read(doc, "shaped_reward_normalization", text);
    cfg.hierarchy.shaped_reward_normalization = hierarchy::parse_normalization(text);
  }
  if (doc.contains("critic_target")) {
    read(doc, "critic_target", text);
    cfg.hierarchy.critic_target = hierarchy::parse_critic_target(text);
  }
  read(doc, "hidden_layers", cfg.architecture.hidden_layers);
  read(doc, "hidden_width", cfg.architecture.hidden_width);
  read(doc, "reward_hidden_layers", cfg.hierarchy.architecture.hidden_layers);
  read(doc, "reward_hidden_width", cfg.hierarchy.architecture.hidden_width);
  read(doc, "eval_episodes", cfg.eval_episodes);
  read(doc, "eval_seed", cfg.eval_seed);
  read(doc, "jobs", cfg.jobs);
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return json{
      {"variant", std::string(to_string(cfg.variant))},
      {"depth", cfg.hierarchy.depth},
      {"seeds", cfg.seeds},
      {"total_timesteps", cfg.total_timesteps},
      {"output_dir", cfg.output_dir.string()},
      {"gamma", cfg.gae.gamma},
      {"lam", cfg.gae.lam},
      {"clip_epsilon", cfg.ppo.clip_epsilon},
      {"c1", cfg.ppo.c1},
      {"c2", cfg.ppo.c2},
      {"learning_rate", cfg.ppo.learning_rate},
      {"num_actors", cfg.ppo.num_actors},
      {"horizon", cfg.ppo.horizon},
      {"minibatch_size", cfg.ppo.minibatch_size},
      {"epochs", cfg.ppo.epochs},
      {"max_grad_norm", cfg.ppo.max_grad_norm},
      {"normalize_advantages", cfg.ppo.normalize_advantages},
      {"squash", std::string(hierarchy::to_string(cfg.hierarchy.squash))},
      {"shaped_reward_normalization",
       std::string(hierarchy::to_string(cfg.hierarchy.shaped_reward_normalization))},
      {"critic_target", std::string(hierarchy::to_string(cfg.hierarchy.critic_target))},
      {"hidden_layers", cfg.architecture.hidden_layers},
      {"hidden_width", cfg.architecture.hidden_width},
      {"reward_hidden_layers", cfg.hierarchy.architecture.hidden_layers},
      {"reward_hidden_width", cfg.hierarchy.architecture.hidden_width},
      {"eval_episodes", cfg.eval_episodes},
      {"eval_seed", cfg.eval_seed},
      {"jobs", cfg.jobs},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open config file '" + path.string() + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigurationError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace hrl::harness
