#include "hrl/nn/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "hrl/errors.hpp"

namespace hrl::nn {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * ln(2 pi)

void check_lengths(Eigen::Index mean_rows, Eigen::Index log_std_size, Eigen::Index action_rows) {
  if (mean_rows != log_std_size || mean_rows != action_rows) {
    throw ConfigurationError("gaussian: mean, log_std and action lengths differ");
  }
}

}  // namespace

double gaussian_log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& action) {
  check_lengths(mean.size(), log_std.size(), action.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double z = (action[i] - mean[i]) / std::exp(log_std[i]);
    total += -0.5 * z * z - log_std[i] - kHalfLog2Pi;
  }
  return total;
}

Eigen::VectorXd gaussian_log_prob(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                                  const Eigen::MatrixXd& actions) {
  check_lengths(means.rows(), log_std.size(), actions.rows());
  if (means.cols() != actions.cols()) {
    throw ConfigurationError("gaussian: batch sizes of means and actions differ");
  }
  const Eigen::ArrayXd inv_std = (-log_std.array()).exp();
  const double offset = log_std.sum() + kHalfLog2Pi * static_cast<double>(log_std.size());
  Eigen::VectorXd out(means.cols());
  for (Eigen::Index j = 0; j < means.cols(); ++j) {
    const Eigen::ArrayXd z = (actions.col(j) - means.col(j)).array() * inv_std;
    out[j] = -0.5 * z.square().sum() - offset;
  }
  return out;
}

Eigen::VectorXd gaussian_sample(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                                std::mt19937_64& rng) {
  check_lengths(mean.size(), log_std.size(), mean.size());
  std::normal_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd action(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    action[i] = mean[i] + std::exp(log_std[i]) * unit(rng);
  }
  return action;
}

double gaussian_entropy(const Eigen::VectorXd& log_std) {
  const double per_dim = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
  return log_std.sum() + per_dim * static_cast<double>(log_std.size());
}

LogProbGradient gaussian_log_prob_gradient(const Eigen::MatrixXd& means,
                                           const Eigen::VectorXd& log_std,
                                           const Eigen::MatrixXd& actions) {
  check_lengths(means.rows(), log_std.size(), actions.rows());
  const Eigen::ArrayXd inv_var = (-2.0 * log_std.array()).exp();
  LogProbGradient grad;
  const Eigen::ArrayXXd diff = (actions - means).array();
  grad.d_mean = (diff.colwise() * inv_var).matrix();
  grad.d_log_std = ((diff.square().colwise() * inv_var) - 1.0).matrix();
  return grad;
}

}  // namespace hrl::nn
