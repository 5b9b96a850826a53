#pragma once

#include <random>

#include <Eigen/Dense>

namespace hrl::nn {

/// log N(action; mean, diag(exp(log_std))^2), summed over dimensions.
double gaussian_log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                         const Eigen::VectorXd& action);

/// Column-wise log-probabilities for a batch (one sample per column).
Eigen::VectorXd gaussian_log_prob(const Eigen::MatrixXd& means, const Eigen::VectorXd& log_std,
                                  const Eigen::MatrixXd& actions);

/// mean + exp(log_std) * z, z drawn from `rng` one dimension at a time.
Eigen::VectorXd gaussian_sample(const Eigen::VectorXd& mean, const Eigen::VectorXd& log_std,
                                std::mt19937_64& rng);

double gaussian_entropy(const Eigen::VectorXd& log_std);

/// Partial derivatives of the log-probability of one batch.
struct LogProbGradient {
  Eigen::MatrixXd d_mean;     // same shape as the means
  Eigen::MatrixXd d_log_std;  // log_std.size() x batch
};

LogProbGradient gaussian_log_prob_gradient(const Eigen::MatrixXd& means,
                                           const Eigen::VectorXd& log_std,
                                           const Eigen::MatrixXd& actions);

}  // namespace hrl::nn
