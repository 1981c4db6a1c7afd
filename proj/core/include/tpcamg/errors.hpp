#pragma once

#include <stdexcept>
#include <string>

namespace tpcamg {

/// Sizes or lengths of arguments are inconsistent.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A model parameter lies outside its admissible range.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A model configuration cannot be discretized (e.g. the stencil does not fit).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A zero pivot or zero diagonal entry was met.
class SingularError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The operator is already as small as the coarsening allows.
class CoarsestLevelReached : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested analysis needs a variant the input does not have (e.g. SPD).
class UnsupportedVariant : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tpcamg
