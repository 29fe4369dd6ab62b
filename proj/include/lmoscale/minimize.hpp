// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <utility>

namespace lmoscale {

/// Golden-section search for a unimodal function on [lo, hi].
/// Returns the argmin and the function value there.
template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, int iterations = 100) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations && b - a > 0; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Golden-section search over log(x) for x in [lo, hi], lo > 0.
template <typename F>
std::pair<double, double> golden_section_log(F&& f, double lo, double hi, int iterations = 100) {
  auto [u, v] = golden_section([&](double u) { return f(std::exp(u)); }, std::log(lo), std::log(hi), iterations);
  return {std::exp(u), v};
}

}  // namespace lmoscale
