#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace hrl::nn {

enum class Activation : std::uint8_t { Tanh = 0, Identity = 1 };

struct LayerSpec {
  int input_width = 1;
  int output_width = 1;
  Activation activation = Activation::Tanh;
};

/// One affine map followed by an elementwise activation. `weight` is output_width x input_width.
struct DenseLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
  Activation activation = Activation::Identity;

  [[nodiscard]] LayerSpec spec() const {
    return {static_cast<int>(weight.cols()), static_cast<int>(weight.rows()), activation};
  }
};

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

/// Weights of a dense network. Actor networks additionally carry a state-independent
/// log standard deviation per action dimension; critics leave `log_std` empty.
///
/// The same type doubles as the gradient container: a gradient is a NetworkParameters
/// whose entries are partial derivatives (see ParameterGradients).
struct NetworkParameters {
  std::vector<DenseLayer> layers;
  Eigen::VectorXd log_std;

  [[nodiscard]] int input_width() const;
  [[nodiscard]] int output_width() const;
  [[nodiscard]] std::vector<LayerSpec> specs() const;
  [[nodiscard]] bool has_log_std() const { return log_std.size() > 0; }
  [[nodiscard]] std::size_t parameter_count() const;

  /// All-zero parameters of identical shape.
  [[nodiscard]] NetworkParameters zeros_like() const;
  [[nodiscard]] bool all_finite() const;
  [[nodiscard]] bool same_shape(const NetworkParameters& other) const;

  /// Euclidean norm over every entry including log_std.
  [[nodiscard]] double norm() const;
  NetworkParameters& operator*=(double scale);
  NetworkParameters& operator+=(const NetworkParameters& other);

  /// Clamp log_std into [kLogStdMin, kLogStdMax].
  void clamp_log_std();

  friend bool operator==(const NetworkParameters& a, const NetworkParameters& b);
};

using ParameterGradients = NetworkParameters;

/// Checks that widths are positive, chain consistently and that the last layer is linear.
void validate_specs(const std::vector<LayerSpec>& specs);

/// Hidden tanh layers of `hidden_width` followed by a linear output layer.
std::vector<LayerSpec> mlp_specs(int input_width, int hidden_layers, int hidden_width,
                                 int output_width);

struct InitOptions {
  double hidden_gain = 1.4142135623730951;  // sqrt(2)
  double output_gain = 1.0;
  /// Number of Gaussian log_std entries to allocate (0 for critics).
  int log_std_width = 0;
  double initial_log_std = 0.0;
};

/// Orthogonal weights scaled by the gains in `options`, zero biases.
NetworkParameters initialize_network(const std::vector<LayerSpec>& specs,
                                     const InitOptions& options, std::mt19937_64& rng);

/// Activations recorded by a forward pass. Column j of every matrix belongs to sample j.
/// `layer_inputs[k]` is what layer k consumed and `layer_outputs[k]` what it produced.
struct GradientTape {
  std::vector<Eigen::MatrixXd> layer_inputs;
  std::vector<Eigen::MatrixXd> layer_outputs;

  [[nodiscard]] Eigen::Index batch_size() const {
    return layer_inputs.empty() ? 0 : layer_inputs.front().cols();
  }
};

struct ForwardResult {
  Eigen::MatrixXd output;
  GradientTape tape;
};

/// Batched forward pass; `input` holds one sample per column.
/// Throws ConfigurationError on a width mismatch and InputError on non-finite input.
ForwardResult forward(const NetworkParameters& params, const Eigen::MatrixXd& input);

/// Forward pass without a tape, for rollouts and evaluation.
Eigen::MatrixXd predict(const NetworkParameters& params, const Eigen::MatrixXd& input);
Eigen::VectorXd predict(const NetworkParameters& params, const Eigen::VectorXd& input);

/// Reverse-mode sweep. `output_gradient` is dL/d(output) with the same shape as the forward
/// output; gradients are summed over the batch. The returned log_std slot is zero-filled
/// (log_std does not enter the forward pass) so callers can add the distribution terms.
ParameterGradients backward(const NetworkParameters& params, const GradientTape& tape,
                            const Eigen::MatrixXd& output_gradient);

}  // namespace hrl::nn
