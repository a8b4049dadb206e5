// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>

namespace ipk {

struct InequalityCheck {
  std::string name;
  std::string param_grid;
  double worst_ratio = 0.0;  // max over the grid of LHS / RHS
  std::map<std::string, double> worst_point;
  double slack = 1e-6;
  bool passed = true;  // worst_ratio <= 1 + slack
  std::size_t n_points = 0;
  /// Quantity measured alongside the ratio, e.g. the empirical constant
  /// sup |b - 1/4| theta^{2+2s} / s. NaN when not applicable.
  double empirical = std::numeric_limits<double>::quiet_NaN();
};

struct CheckPair {
  InequalityCheck first;
  InequalityCheck second;
};

}  // namespace ipk
