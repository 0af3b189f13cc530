// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <stdexcept>
#include <string>

namespace hcs {

/// Argument outside the mathematical domain of an operation (negative
/// factorial, |m| > l, r < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unsupported or inconsistent configuration (unknown family name, node
/// counts below an exactness threshold, malformed input file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its stated accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated expansion or series does not meet its tail-adequacy rule.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Division by a vanishing normalization (M^2(u) == 0).
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hcs
