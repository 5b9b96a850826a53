#pragma once

#include <stdexcept>
#include <string>

namespace hrl {

/// Shapes, sizes or settings that do not fit together.
class ConfigurationError : public std::invalid_argument {
 public:
  explicit ConfigurationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Values handed to an operation that it cannot accept (non-finite numbers, bad files).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical update that was refused because it would poison the parameters.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hrl
