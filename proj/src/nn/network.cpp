#include "hrl/nn/network.hpp"

#include <cmath>
#include <sstream>

#include "hrl/errors.hpp"

namespace hrl::nn {

namespace {

void apply_activation(Activation activation, Eigen::MatrixXd& values) {
  if (activation == Activation::Tanh) {
    values = values.array().tanh().matrix();
  }
}

Eigen::MatrixXd orthogonal(int rows, int cols, double gain, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int tall = std::max(rows, cols);
  const int wide = std::min(rows, cols);
  Eigen::MatrixXd draw(tall, wide);
  for (Eigen::Index c = 0; c < draw.cols(); ++c) {
    for (Eigen::Index r = 0; r < draw.rows(); ++r) {
      draw(r, c) = normal(rng);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(draw);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(tall, wide);
  // Fix the sign ambiguity of QR so the result is uniformly distributed.
  const Eigen::MatrixXd r = qr.matrixQR().topRows(wide).triangularView<Eigen::Upper>();
  for (int k = 0; k < wide; ++k) {
    if (r(k, k) < 0.0) {
      q.col(k) *= -1.0;
    }
  }
  Eigen::MatrixXd w = rows >= cols ? q : Eigen::MatrixXd(q.transpose());
  return gain * w;
}

}  // namespace

int NetworkParameters::input_width() const {
  return layers.empty() ? 0 : static_cast<int>(layers.front().weight.cols());
}

int NetworkParameters::output_width() const {
  return layers.empty() ? 0 : static_cast<int>(layers.back().weight.rows());
}

std::vector<LayerSpec> NetworkParameters::specs() const {
  std::vector<LayerSpec> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) {
    out.push_back(layer.spec());
  }
  return out;
}

std::size_t NetworkParameters::parameter_count() const {
  std::size_t count = static_cast<std::size_t>(log_std.size());
  for (const auto& layer : layers) {
    count += static_cast<std::size_t>(layer.weight.size() + layer.bias.size());
  }
  return count;
}

NetworkParameters NetworkParameters::zeros_like() const {
  NetworkParameters out;
  out.layers.reserve(layers.size());
  for (const auto& layer : layers) {
    out.layers.push_back({Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()),
                          Eigen::VectorXd::Zero(layer.bias.size()), layer.activation});
  }
  out.log_std = Eigen::VectorXd::Zero(log_std.size());
  return out;
}

bool NetworkParameters::all_finite() const {
  for (const auto& layer : layers) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      return false;
    }
  }
  return log_std.allFinite();
}

bool NetworkParameters::same_shape(const NetworkParameters& other) const {
  if (layers.size() != other.layers.size() || log_std.size() != other.log_std.size()) {
    return false;
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& a = layers[k];
    const auto& b = other.layers[k];
    if (a.weight.rows() != b.weight.rows() || a.weight.cols() != b.weight.cols() ||
        a.bias.size() != b.bias.size()) {
      return false;
    }
  }
  return true;
}

double NetworkParameters::norm() const {
  double sum = log_std.squaredNorm();
  for (const auto& layer : layers) {
    sum += layer.weight.squaredNorm() + layer.bias.squaredNorm();
  }
  return std::sqrt(sum);
}

NetworkParameters& NetworkParameters::operator*=(double scale) {
  for (auto& layer : layers) {
    layer.weight *= scale;
    layer.bias *= scale;
  }
  log_std *= scale;
  return *this;
}

NetworkParameters& NetworkParameters::operator+=(const NetworkParameters& other) {
  if (!same_shape(other)) {
    throw ConfigurationError("cannot add parameter sets of different shapes");
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    layers[k].weight += other.layers[k].weight;
    layers[k].bias += other.layers[k].bias;
  }
  log_std += other.log_std;
  return *this;
}

void NetworkParameters::clamp_log_std() {
  log_std = log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
}

bool operator==(const NetworkParameters& a, const NetworkParameters& b) {
  if (!a.same_shape(b) || a.log_std != b.log_std) {
    return false;
  }
  for (std::size_t k = 0; k < a.layers.size(); ++k) {
    if (a.layers[k].activation != b.layers[k].activation ||
        a.layers[k].weight != b.layers[k].weight || a.layers[k].bias != b.layers[k].bias) {
      return false;
    }
  }
  return true;
}

void validate_specs(const std::vector<LayerSpec>& specs) {
  if (specs.empty()) {
    throw ConfigurationError("a network needs at least one layer");
  }
  for (std::size_t k = 0; k < specs.size(); ++k) {
    if (specs[k].input_width < 1 || specs[k].output_width < 1) {
      std::ostringstream msg;
      msg << "layer " << k << " has a non-positive width";
      throw ConfigurationError(msg.str());
    }
    if (k > 0 && specs[k].input_width != specs[k - 1].output_width) {
      std::ostringstream msg;
      msg << "layer " << k << " expects width " << specs[k].input_width << " but layer "
          << k - 1 << " produces " << specs[k - 1].output_width;
      throw ConfigurationError(msg.str());
    }
  }
  if (specs.back().activation != Activation::Identity) {
    throw ConfigurationError("the output layer must be linear");
  }
}

std::vector<LayerSpec> mlp_specs(int input_width, int hidden_layers, int hidden_width,
                                 int output_width) {
  std::vector<LayerSpec> specs;
  int width = input_width;
  for (int k = 0; k < hidden_layers; ++k) {
    specs.push_back({width, hidden_width, Activation::Tanh});
    width = hidden_width;
  }
  specs.push_back({width, output_width, Activation::Identity});
  validate_specs(specs);
  return specs;
}

NetworkParameters initialize_network(const std::vector<LayerSpec>& specs,
                                     const InitOptions& options, std::mt19937_64& rng) {
  validate_specs(specs);
  NetworkParameters params;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const bool is_output = k + 1 == specs.size();
    const double gain = is_output ? options.output_gain : options.hidden_gain;
    params.layers.push_back({orthogonal(specs[k].output_width, specs[k].input_width, gain, rng),
                             Eigen::VectorXd::Zero(specs[k].output_width), specs[k].activation});
  }
  params.log_std = Eigen::VectorXd::Constant(options.log_std_width, options.initial_log_std);
  params.clamp_log_std();
  return params;
}

ForwardResult forward(const NetworkParameters& params, const Eigen::MatrixXd& input) {
  if (params.layers.empty()) {
    throw ConfigurationError("forward on an empty network");
  }
  if (input.rows() != params.input_width()) {
    std::ostringstream msg;
    msg << "input width " << input.rows() << " does not match network input width "
        << params.input_width();
    throw ConfigurationError(msg.str());
  }
  if (!input.allFinite()) {
    throw InputError("non-finite network input");
  }
  ForwardResult result;
  result.tape.layer_inputs.reserve(params.layers.size());
  result.tape.layer_outputs.reserve(params.layers.size());
  Eigen::MatrixXd current = input;
  for (const auto& layer : params.layers) {
    result.tape.layer_inputs.push_back(current);
    Eigen::MatrixXd next = layer.weight * current;
    next.colwise() += layer.bias;
    apply_activation(layer.activation, next);
    result.tape.layer_outputs.push_back(next);
    current = std::move(next);
  }
  result.output = std::move(current);
  return result;
}

Eigen::MatrixXd predict(const NetworkParameters& params, const Eigen::MatrixXd& input) {
  if (params.layers.empty() || input.rows() != params.input_width()) {
    throw ConfigurationError("input width does not match network input width");
  }
  if (!input.allFinite()) {
    throw InputError("non-finite network input");
  }
  Eigen::MatrixXd current = input;
  for (const auto& layer : params.layers) {
    Eigen::MatrixXd next = layer.weight * current;
    next.colwise() += layer.bias;
    apply_activation(layer.activation, next);
    current = std::move(next);
  }
  return current;
}

Eigen::VectorXd predict(const NetworkParameters& params, const Eigen::VectorXd& input) {
  return predict(params, Eigen::MatrixXd(input)).col(0);
}

ParameterGradients backward(const NetworkParameters& params, const GradientTape& tape,
                            const Eigen::MatrixXd& output_gradient) {
  if (tape.layer_inputs.size() != params.layers.size() ||
      tape.layer_outputs.size() != params.layers.size()) {
    throw ConfigurationError("tape was recorded on a network with a different depth");
  }
  if (output_gradient.rows() != params.output_width() ||
      output_gradient.cols() != tape.batch_size()) {
    throw ConfigurationError("output gradient shape does not match the recorded forward pass");
  }
  ParameterGradients grads = params.zeros_like();
  Eigen::MatrixXd upstream = output_gradient;
  for (std::size_t idx = params.layers.size(); idx-- > 0;) {
    const auto& layer = params.layers[idx];
    if (layer.activation == Activation::Tanh) {
      const auto& y = tape.layer_outputs[idx];
      upstream = (upstream.array() * (1.0 - y.array().square())).matrix();
    }
    grads.layers[idx].weight.noalias() = upstream * tape.layer_inputs[idx].transpose();
    grads.layers[idx].bias = upstream.rowwise().sum();
    if (idx > 0) {
      upstream = layer.weight.transpose() * upstream;
    }
  }
  return grads;
}

}  // namespace hrl::nn
