#pragma once

#include <stdexcept>
#include <string>

namespace specbound {

// Argument outside the mathematical domain of a function (a <= 0 for log-gamma,
// p < 1 for an exponent, non-PSD covariance, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Shapes that do not compose: vector length vs matrix columns, layer chains, ...
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// The requested quantity is -infinity or otherwise undefined for this input.
class UnboundedError : public std::domain_error {
 public:
  explicit UnboundedError(const std::string& what) : std::domain_error(what) {}
};

// Valid input for which the library deliberately has no implementation.
class UnsupportedError : public std::invalid_argument {
 public:
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace specbound
