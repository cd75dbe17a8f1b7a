#pragma once

#include <stdexcept>
#include <string>

namespace icas {

/// Input outside the domain of a physical formula (negative time, net gain, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed: quadrature did not converge, a trajectory blew up.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace icas
