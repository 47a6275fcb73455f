#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Invalid user input: scenario files, flags, geometric configuration.
class ConfigurationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the supported domain of a numerical kernel.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A solver or kernel failed to produce a trustworthy result.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Not enough separated modes were computed to certify a requested index.
class CompletenessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace steklov
