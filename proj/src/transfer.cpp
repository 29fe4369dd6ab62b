// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/transfer.hpp"

#include <algorithm>
#include <cmath>

namespace lmoscale {

std::string to_string(TransferRegime r) {
  switch (r) {
    case TransferRegime::A_FixedB_FixedAlpha:
      return "A";
    case TransferRegime::B_FixedB_TunedAlpha:
      return "B";
    case TransferRegime::C_TunedB_FixedAlpha:
      return "C";
    case TransferRegime::D_Joint:
      return "D";
    case TransferRegime::SGD:
      return "sgd";
  }
  return "unknown";
}

TransferRegime transfer_regime_from_string(const std::string& s) {
  if (s == "A") return TransferRegime::A_FixedB_FixedAlpha;
  if (s == "B") return TransferRegime::B_FixedB_TunedAlpha;
  if (s == "C") return TransferRegime::C_TunedB_FixedAlpha;
  if (s == "D") return TransferRegime::D_Joint;
  if (s == "sgd") return TransferRegime::SGD;
  throw DomainError("unknown transfer regime '" + s + "' (expected A, B, C, D or sgd)");
}

std::string to_string(BatchChangeSetting s) {
  switch (s) {
    case BatchChangeSetting::LmoFixedAlpha:
      return "lmo-fixed-alpha";
    case BatchChangeSetting::LmoTunedAlpha:
      return "lmo-tuned-alpha";
    case BatchChangeSetting::Sgd:
      return "sgd";
  }
  return "unknown";
}

BatchChangeSetting batch_change_setting_from_string(const std::string& s) {
  if (s == "lmo-fixed-alpha") return BatchChangeSetting::LmoFixedAlpha;
  if (s == "lmo-tuned-alpha") return BatchChangeSetting::LmoTunedAlpha;
  if (s == "sgd") return BatchChangeSetting::Sgd;
  throw DomainError("unknown batch-change setting '" + s + "'");
}

void validate(const TunedConfig& cfg) {
  auto pos = [](double v) { return std::isfinite(v) && v > 0; };
  detail::require(pos(cfg.t0), "t0 must be positive");
  detail::require(pos(cfg.b0), "b0 must be positive");
  detail::require(pos(cfg.eta0), "eta0 must be positive");
  detail::require(pos(cfg.alpha0) && cfg.alpha0 <= 1, "alpha0 must lie in (0, 1]");
}

namespace {

void require_t1(const TunedConfig& cfg, double t1) {
  detail::require(std::isfinite(t1) && t1 >= cfg.t0, "t1 must be finite and >= t0");
}

TransferResult finish(const HyperParams<>& raw, std::optional<double> b_max) {
  TransferResult out{};
  out.raw = raw;
  out.params = raw;
  if (raw.alpha > 1.0) {
    out.flags.alpha_above_one = true;
    out.params.alpha = 1.0;
  }
  if (raw.batch < 1.0) {
    out.flags.batch_below_one = true;
    out.params.batch = 1.0;
  }
  if (b_max && raw.batch > *b_max) {
    out.flags.batch_above_cap = true;
    out.params.batch = std::max(1.0, *b_max);
  }
  return out;
}

}  // namespace

TransferResult transfer(const TunedConfig& cfg, double t1, TransferRegime regime, std::optional<double> b_max) {
  validate(cfg);
  require_t1(cfg, t1);
  if (b_max) detail::require(std::isfinite(*b_max) && *b_max > 0, "b_max must be positive");
  const double r = cfg.t0 / t1;
  HyperParams<> p{cfg.eta0, cfg.alpha0, cfg.b0};
  switch (regime) {
    case TransferRegime::A_FixedB_FixedAlpha:
    case TransferRegime::SGD:
      p.eta = cfg.eta0 * std::sqrt(r);
      break;
    case TransferRegime::B_FixedB_TunedAlpha:
      p.alpha = cfg.alpha0 * std::sqrt(r);
      p.eta = cfg.eta0 * std::pow(r, 0.75);
      break;
    case TransferRegime::C_TunedB_FixedAlpha:
      p.batch = cfg.b0 / std::sqrt(r);
      p.eta = cfg.eta0 * std::pow(r, 0.25);
      break;
    case TransferRegime::D_Joint:
      p.batch = cfg.b0 * std::pow(r, -1.0 / 6.0);
      p.alpha = cfg.alpha0 * std::cbrt(r);
      p.eta = cfg.eta0 * std::pow(r, 7.0 / 12.0);
      break;
  }
  TransferResult out = finish(p, b_max);
  switch (regime) {
    case TransferRegime::A_FixedB_FixedAlpha:
    case TransferRegime::SGD:
      out.invariants.c_eta = cfg.eta0 * std::sqrt(cfg.t0);
      break;
    case TransferRegime::B_FixedB_TunedAlpha:
      out.invariants.c_alpha = cfg.alpha0 * std::sqrt(cfg.t0);
      out.invariants.c_eta = cfg.eta0 * std::pow(cfg.t0, 0.75);
      break;
    case TransferRegime::C_TunedB_FixedAlpha:
      out.invariants.c_eta = cfg.eta0 * std::pow(cfg.t0, 0.25);
      break;
    case TransferRegime::D_Joint:
      out.invariants.c_alpha = cfg.alpha0 * std::cbrt(cfg.t0);
      out.invariants.c_eta = cfg.eta0 * std::pow(cfg.t0, 7.0 / 12.0);
      break;
  }
  return out;
}

TransferResult transfer_with_batch_change(const TunedConfig& cfg, double t1, double b1, BatchChangeSetting setting) {
  validate(cfg);
  require_t1(cfg, t1);
  detail::require(std::isfinite(b1) && b1 >= 1, "b1 must be >= 1");
  const double r = cfg.t0 / t1;
  const double rb = b1 / cfg.b0;
  HyperParams<> p{cfg.eta0, cfg.alpha0, b1};
  CalibratedInvariants inv;
  switch (setting) {
    case BatchChangeSetting::LmoFixedAlpha:
      p.eta = cfg.eta0 * std::sqrt(rb) * std::sqrt(r);
      inv.c_eta = cfg.eta0 * std::sqrt(cfg.t0 / cfg.b0);
      break;
    case BatchChangeSetting::LmoTunedAlpha:
      p.alpha = cfg.alpha0 * rb * std::sqrt(r);
      p.eta = cfg.eta0 * rb * std::pow(r, 0.75);
      inv.c_alpha = cfg.alpha0 * std::sqrt(cfg.t0) / cfg.b0;
      inv.c_eta = cfg.eta0 * std::pow(cfg.t0, 0.75) / cfg.b0;
      break;
    case BatchChangeSetting::Sgd:
      p.eta = cfg.eta0 * rb * std::sqrt(r);
      inv.c_eta = cfg.eta0 * std::sqrt(cfg.t0) / cfg.b0;
      break;
  }
  TransferResult out = finish(p, std::nullopt);
  out.invariants = inv;
  return out;
}

}  // namespace lmoscale
