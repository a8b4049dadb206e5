// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ipk {

/// An argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature failed to reach the requested relative tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error)
      : std::runtime_error(what), achieved_(achieved_rel_error) {}
  double achieved_rel_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Bracketed inversion of the impact-angle map did not shrink below tolerance.
class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid solver or CLI configuration. `field()` holds the offending path,
/// e.g. "s_list[1]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The explicit time integrator blew up.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ipk
