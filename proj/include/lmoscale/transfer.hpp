// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Extrapolating a configuration tuned at budget T0 to a larger budget T1.

#pragma once

#include <optional>
#include <string>

#include "lmoscale/proxy.hpp"

namespace lmoscale {

enum class TransferRegime {
  A_FixedB_FixedAlpha,
  B_FixedB_TunedAlpha,
  C_TunedB_FixedAlpha,
  D_Joint,
  SGD,
};

std::string to_string(TransferRegime r);
TransferRegime transfer_regime_from_string(const std::string& s);

/// The best configuration found at budget t0.
struct TunedConfig {
  double t0;
  double b0;
  double eta0;
  double alpha0;
};

void validate(const TunedConfig& cfg);

struct TransferFlags {
  bool alpha_above_one = false;
  bool batch_below_one = false;
  bool batch_above_cap = false;

  bool any() const { return alpha_above_one || batch_below_one || batch_above_cap; }
};

/// Quantities that stay constant along a transfer; empty where a setting does not define one.
struct CalibratedInvariants {
  std::optional<double> c_eta;
  std::optional<double> c_alpha;
};

struct TransferResult {
  HyperParams<> params;  // clamped to alpha <= 1 and 1 <= b <= b_max
  HyperParams<> raw;     // unclamped power-law extrapolation
  TransferFlags flags;
  CalibratedInvariants invariants;
};

/// Rescales (eta, alpha, b) from cfg.t0 to t1 by the regime's power laws:
///   A: eta ~ T^{-1/2}
///   B: alpha ~ T^{-1/2}, eta ~ T^{-3/4}
///   C: b ~ T^{1/2}, eta ~ T^{-1/4}
///   D: b ~ T^{1/6}, alpha ~ T^{-1/3}, eta ~ T^{-7/12}
///   SGD: eta ~ T^{-1/2}
/// Requires t1 >= t0. Infeasible values are clamped and flagged, not rejected.
TransferResult transfer(const TunedConfig& cfg, double t1, TransferRegime regime,
                        std::optional<double> b_max = std::nullopt);

enum class BatchChangeSetting { LmoFixedAlpha, LmoTunedAlpha, Sgd };

std::string to_string(BatchChangeSetting s);
BatchChangeSetting batch_change_setting_from_string(const std::string& s);

/// Transfer to (t1, b1) with the batch chosen by the caller:
///   LMO fixed alpha: eta1 = eta0 sqrt(b1/b0) sqrt(T0/T1)
///   LMO tuned alpha: alpha1 = alpha0 (b1/b0) sqrt(T0/T1), eta1 = eta0 (b1/b0) (T0/T1)^{3/4}
///   SGD:             eta1 = eta0 (b1/b0) sqrt(T0/T1)
TransferResult transfer_with_batch_change(const TunedConfig& cfg, double t1, double b1, BatchChangeSetting setting);

}  // namespace lmoscale
