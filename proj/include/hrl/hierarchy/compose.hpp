#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace hrl::hierarchy {

/// Shaped reward from the global reward R and the signals r_1..r_n, ordered from the level
/// closest to R outwards:
///
///   r = R * h(1),  h(k) = r_k * h(k+1) + 1,  h(n+1) = 1
///
/// n = 1 gives R*r_1 + R and n = 3 gives R(r_1(r_2 r_3 + r_2) + r_1) + R. With no signals
/// (or all signals zero) the result is R exactly.
double compose(double global_reward, std::span<const double> signals);

inline double compose(double global_reward, const Eigen::VectorXd& signals) {
  return compose(global_reward,
                 std::span<const double>(signals.data(), static_cast<std::size_t>(signals.size())));
}

/// Same value expanded as a sum of prefix products: sum_{k=0..n} R * prod_{i<=k} r_i.
double compose_oracle(double global_reward, std::span<const double> signals);

/// Maps the reward agent's raw Gaussian outputs into signal range.
enum class Squash : std::uint8_t {
  Sigmoid01,   // (0, 1)
  Tanh11,      // (-1, 1)
  LinearClip,  // [-1, 1]
};

double squash(Squash kind, double raw);
Eigen::VectorXd squash(Squash kind, const Eigen::VectorXd& raw);

Squash parse_squash(std::string_view name);
std::string_view to_string(Squash kind);

}  // namespace hrl::hierarchy
