#pragma once

#include <stdexcept>
#include <string>

namespace pbergman {

/// Invalid argument: bad orders, degrees, exponents outside the supported range.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A point lies outside the domain where an interior point is required.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Exponent below the range where the variational theory applies (p < 1).
class UnsupportedExponent : public ParameterError {
 public:
  explicit UnsupportedExponent(const std::string& what) : ParameterError(what) {}
};

}  // namespace pbergman
