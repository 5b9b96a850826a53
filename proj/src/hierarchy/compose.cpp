#include "hrl/hierarchy/compose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hrl/errors.hpp"

namespace hrl::hierarchy {

double compose(double global_reward, std::span<const double> signals) {
  double h = 1.0;
  for (auto it = signals.rbegin(); it != signals.rend(); ++it) {
    h = *it * h + 1.0;
  }
  return global_reward * h;
}

double compose_oracle(double global_reward, std::span<const double> signals) {
  double total = global_reward;
  double prefix = global_reward;
  for (const double s : signals) {
    prefix *= s;
    total += prefix;
  }
  return total;
}

double squash(Squash kind, double raw) {
  switch (kind) {
    case Squash::Sigmoid01:
      // Split by sign so exp never overflows; result stays strictly inside (0, 1) except
      // where double precision runs out.
      if (raw >= 0.0) {
        return 1.0 / (1.0 + std::exp(-raw));
      } else {
        const double e = std::exp(raw);
        return e / (1.0 + e);
      }
    case Squash::Tanh11:
      return std::tanh(raw);
    case Squash::LinearClip:
      return std::clamp(raw, -1.0, 1.0);
  }
  return raw;
}

Eigen::VectorXd squash(Squash kind, const Eigen::VectorXd& raw) {
  Eigen::VectorXd out(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    out[i] = squash(kind, raw[i]);
  }
  return out;
}

Squash parse_squash(std::string_view name) {
  if (name == "sigmoid01") return Squash::Sigmoid01;
  if (name == "tanh11") return Squash::Tanh11;
  if (name == "linear_clip") return Squash::LinearClip;
  throw ConfigurationError("unknown squash '" + std::string(name) + "'");
}

std::string_view to_string(Squash kind) {
  switch (kind) {
    case Squash::Sigmoid01:
      return "sigmoid01";
    case Squash::Tanh11:
      return "tanh11";
    case Squash::LinearClip:
      return "linear_clip";
  }
  return "unknown";
}

}  // namespace hrl::hierarchy
