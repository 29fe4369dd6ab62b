// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Power-law rate calculus for hyperparameter schedules b ~ T^phi,
// alpha ~ T^-gamma, eta ~ T^-delta under the token-budget bound.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lmoscale {

/// Exponents of a power-law schedule. batch_exp is the batch-growth exponent
/// phi in [0, 1] (not the momentum coefficient).
struct PowerLawSchedule {
  double batch_exp = 0.0;  // b ~ T^{phi}
  double alpha_exp = 0.0;  // alpha ~ T^{-gamma}
  double eta_exp = 0.0;    // eta ~ T^{-delta}
};

void validate(const PowerLawSchedule& s);

/// Decay exponents of the five bound terms; the bound decays like T^{-overall}.
struct RateExponents {
  std::array<double, 5> r{};
  double overall = 0.0;
  /// Zero-based indices of terms with r_i <= 0 (non-decaying or diverging).
  std::vector<int> non_decaying;

  bool all_decay() const { return non_decaying.empty(); }
};

RateExponents rate_exponents(const PowerLawSchedule& s);

struct AggressiveCeiling {
  double delta_star;     // balancing eta exponent (1 - phi)/2
  double rate_exponent;  // bound ~ T^{-(1 - phi)/2}
  double k_exponent;     // K ~ T^{1 - phi}
  double rate_in_k;      // the same rate expressed as K^{-1/2}
};

/// Rate ceiling for batch growth faster than sqrt(T); phi must lie in (1/2, 1).
AggressiveCeiling aggressive_ceiling(double phi);

/// Mini-batch noise model E||g_b - grad f||_* <~ sigma_q / b^q.
struct NoiseModel {
  double q = 0.5;
  double sigma_q = 1.0;
  std::optional<double> heavy_tail_p;  // p-moment model, forces q = 1 - 1/p
  std::optional<double> e0;            // initial momentum error for non-matched init

  static NoiseModel heavy_tailed(double p, double sigma_q = 1.0);
};

void validate(const NoiseModel& n);

enum class BatchPreference { Flat, PushSmallBatch, PushLargeBatch };

std::string to_string(BatchPreference p);

struct SensitivityReport {
  // alpha* ~ b^{alpha_b_exp} K^{alpha_k_exp}, eta* ~ b^{eta_b_exp} K^{eta_k_exp}
  double alpha_b_exp;
  double alpha_k_exp;
  double eta_b_exp;
  double eta_k_exp;
  // tuned bound ~ T^{perf_t_exp} b^{perf_b_exp}
  double perf_b_exp;
  double perf_t_exp;
  // the same laws evaluated with unit constants at the requested (b, T)
  double alpha_scale;
  double eta_scale;
  double perf_scale;
  BatchPreference preference;
  // E0 / K: coefficient of 1/alpha in the burn-in term under non-matched init
  std::optional<double> burn_in_coefficient;
};

SensitivityReport sensitivity_q(const NoiseModel& n, double b, double t);

/// Separable tuned step size eta*(b, K) ~ b^kappa K^-lambda measured along a
/// batch-growth path b(T) ~ T^p.
struct PathExponents {
  double kappa = 0.0;
  double lambda = 0.0;
  double p = 0.0;
};

struct EffectiveEtaReport {
  double q_eff;
  std::optional<double> threshold_p;  // q_eff > 0 iff p > threshold; none when kappa + lambda == 0
  bool fixed_batch_instantiation;     // (kappa, lambda) == (1/4, 3/4), where q_eff = p - 3/4
  bool alpha_saturates;               // induced alpha ~ T^{p - 1/2} grows past 1
};

EffectiveEtaReport effective_eta_exponent(const PathExponents& path);

}  // namespace lmoscale
