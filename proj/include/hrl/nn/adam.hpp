#pragma once

#include <cstdint>

#include "hrl/nn/network.hpp"

namespace hrl::nn {

struct AdamState {
  NetworkParameters first_moment;
  NetworkParameters second_moment;
  std::uint64_t step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Fresh optimizer state whose moments mirror `params`.
  static AdamState for_parameters(const NetworkParameters& params);
};

/// One bias-corrected Adam update, in place. log_std is clamped afterwards.
/// Rejects (throws NumericalError, nothing modified) non-finite gradients and
/// ConfigurationError on shape mismatches or a negative learning rate.
void adam_step(NetworkParameters& params, const ParameterGradients& gradients, AdamState& state,
               double learning_rate);

}  // namespace hrl::nn
