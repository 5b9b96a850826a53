#pragma once

namespace hrl::ppo {

/// min(ratio * A, clip(ratio, 1 - eps, 1 + eps) * A)
double clipped_surrogate(double ratio, double advantage, double clip_epsilon);

/// Derivative of clipped_surrogate with respect to the ratio.
double clipped_surrogate_slope(double ratio, double advantage, double clip_epsilon);

/// Objective to maximize: surrogate - c1 * value_mse + c2 * entropy.
double combined_loss(double surrogate_mean, double value_mse, double entropy_mean, double c1,
                     double c2);

}  // namespace hrl::ppo
