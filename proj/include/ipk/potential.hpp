// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ipk/errors.hpp"

#include <cmath>
#include <string>

namespace ipk {

/// Softness s of the inverse power potential U(r) = r^{-1/s}. The relative
/// velocity exponent gamma = 1 - 4s is derived, never stored separately.
class PotentialParam {
 public:
  explicit PotentialParam(double s) : s_(s) {
    if (!(s > 0.0 && s < 1.0)) {
      throw DomainError("softness s must lie in (0,1), got " + std::to_string(s));
    }
  }

  double s() const noexcept { return s_; }
  double gamma() const noexcept { return 1.0 - 4.0 * s_; }

  friend bool operator==(const PotentialParam&, const PotentialParam&) = default;

 private:
  double s_;
};

}  // namespace ipk
