// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Iso-performance curves of the eta-tuned bound in the (b, K) plane:
//   u(b, K) = c_det/sqrt(K) + c_burn/(K sqrt(b)) + c_floor/sqrt(b).

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmoscale/proxy.hpp"

namespace lmoscale {

struct ContourConstants {
  double alpha;
  double c_det;    // 2 sqrt(D0 L (7/2 + 2/alpha))
  double c_burn;   // 2 rho sigma/alpha
  double c_floor;  // 2 rho sigma sqrt(alpha)
  // Split of c_det needed when the tuned step size is floored.
  double delta0;
  double eta_coefficient;  // L (7/2 + 2/alpha)

  static ContourConstants from(const BoundConstants<>& c, double alpha);
};

/// The exact bound minimized over eta at fixed (alpha, b, K); b >= 1, K >= 1.
double u_eta(const ContourConstants& cc, double b, double k);

/// As u_eta but with eta restricted to eta >= eta_floor.
double u_eta_floored(const ContourConstants& cc, double b, double k, double eta_floor);

/// Minimum of the bound over a list of step sizes at fixed (alpha, b, K).
double u_eta_on_grid(const ContourConstants& cc, double b, double k, std::span<const double> etas);

enum class ContourRegime { IterationLimited, Intermediate, BatchLimited };

std::string to_string(ContourRegime r);

struct ContourSample {
  double k;
  double b;
  double u;
  // shares of u carried by the three terms
  double frac_det;
  double frac_burn;
  double frac_floor;
  ContourRegime regime;  // the dominant term
};

struct LevelSet {
  double target;
  double k_min;  // (c_det/target)^2, asymptote as b grows
  double b_min;  // (c_floor/target)^2, asymptote as K grows
  double k0;     // representative iteration scale for the hyperbola approximation
  std::vector<ContourSample> samples;
};

/// Solves u(b, K) = target for b at every K of the grid with K > k_min, by
/// 80 bisection steps in log b. Grid points whose solution has b < 1 are
/// skipped. k0 defaults to the geometric mean of the K grid.
LevelSet level_set(const ContourConstants& cc, double target, std::span<const double> k_grid,
                   std::optional<double> k0 = std::nullopt);

/// |(c sqrt K - c_det)(c sqrt b - F(K)) - c_det F(k0)| / (c_det F(k0)) with
/// F(K) = c_floor + c_burn/K, for every sample of the level set.
std::vector<double> hyperbola_residuals(const ContourConstants& cc, const LevelSet& ls);

}  // namespace lmoscale
