#include "hrl/ppo/loss.hpp"

#include <algorithm>

namespace hrl::ppo {

double clipped_surrogate(double ratio, double advantage, double clip_epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

double clipped_surrogate_slope(double ratio, double advantage, double clip_epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
  // The unclipped branch is active whenever it is the smaller one; inside the clip range both
  // branches coincide and the clamp passes the gradient through.
  if (ratio * advantage <= clipped * advantage) {
    return advantage;
  }
  return 0.0;
}

double combined_loss(double surrogate_mean, double value_mse, double entropy_mean, double c1,
                     double c2) {
  return surrogate_mean - c1 * value_mse + c2 * entropy_mean;
}

}  // namespace hrl::ppo
