#include "hrl/nn/adam.hpp"

#include <cmath>

#include "hrl/errors.hpp"

namespace hrl::nn {

namespace {

template <typename Param, typename Grad, typename Moment>
void update_block(Param& param, const Grad& grad, Moment& m, Moment& v, const AdamState& s,
                  double step_size, double bias2) {
  m = s.beta1 * m + (1.0 - s.beta1) * grad;
  v = s.beta2 * v + (1.0 - s.beta2) * grad.cwiseProduct(grad);
  param.array() -= step_size * m.array() / ((v.array() / bias2).sqrt() + s.epsilon);
}

}  // namespace

AdamState AdamState::for_parameters(const NetworkParameters& params) {
  AdamState state;
  state.first_moment = params.zeros_like();
  state.second_moment = params.zeros_like();
  return state;
}

void adam_step(NetworkParameters& params, const ParameterGradients& gradients, AdamState& state,
               double learning_rate) {
  if (!(learning_rate >= 0.0)) {
    throw ConfigurationError("learning rate must be non-negative");
  }
  if (!params.same_shape(gradients) || !params.same_shape(state.first_moment) ||
      !params.same_shape(state.second_moment)) {
    throw ConfigurationError("adam: gradient or moment shapes do not mirror the parameters");
  }
  if (!gradients.all_finite()) {
    throw NumericalError("adam: non-finite gradient entries, update rejected");
  }
  state.step_count += 1;
  const auto t = static_cast<double>(state.step_count);
  const double bias1 = 1.0 - std::pow(state.beta1, t);
  const double bias2 = 1.0 - std::pow(state.beta2, t);
  const double step_size = learning_rate / bias1;

  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    update_block(params.layers[k].weight, gradients.layers[k].weight,
                 state.first_moment.layers[k].weight, state.second_moment.layers[k].weight, state,
                 step_size, bias2);
    update_block(params.layers[k].bias, gradients.layers[k].bias,
                 state.first_moment.layers[k].bias, state.second_moment.layers[k].bias, state,
                 step_size, bias2);
  }
  if (params.has_log_std()) {
    update_block(params.log_std, gradients.log_std, state.first_moment.log_std,
                 state.second_moment.log_std, state, step_size, bias2);
    params.clamp_log_std();
  }
}

}  // namespace hrl::nn
