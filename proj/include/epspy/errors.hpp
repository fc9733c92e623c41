#pragma once

#include <stdexcept>
#include <string>

namespace epspy {

/// Invalid model or distribution parameter (alpha, theta, epsilon, shape, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (e.g. Zolotarev function at x >= pi).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure gave up: rejection cap reached, truncation too long, ...
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epspy

namespace epspy {

/// Invalid experiment configuration (CLI flags or config file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace epspy
