// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "lmoscale/proxy.hpp"
#include "oracles.hpp"

namespace lmoscale {
namespace {

using C = BoundConstants<>;
using H = HyperParams<>;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(BoundConstants, DerivedProxyConstants) {
  const C c(2.0, 3.0, 0.5, 4.0);
  EXPECT_EQ(c.c1(), 2.0);
  EXPECT_EQ(c.c2(), 4.0);
  EXPECT_EQ(c.c3(), 12.0);
  const C p = C::from_proxy(1.0, 1.0, 1.0);
  EXPECT_EQ(p.c1(), 1.0);
  EXPECT_EQ(p.c2(), 1.0);
  EXPECT_EQ(p.c3(), 1.0);
}

TEST(BoundConstants, RejectsInvalid) {
  EXPECT_THROW(C(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(C(1.0, -1.0, 1.0), DomainError);
  EXPECT_THROW(C(1.0, 1.0, -1.0), DomainError);
  EXPECT_THROW(C(1.0, 1.0, 1.0, 0.5), DomainError);
  EXPECT_NO_THROW(C(1.0, 1.0, 0.0));
}

TEST(HyperParams, RejectsInvalid) {
  const C c(1, 1, 1);
  EXPECT_THROW(bound_rhs(c, H{0.0, 0.5, 1}, 1.0), DomainError);
  EXPECT_THROW(bound_rhs(c, H{1.0, 0.0, 1}, 1.0), DomainError);
  EXPECT_THROW(bound_rhs(c, H{1.0, 1.5, 1}, 1.0), DomainError);
  EXPECT_THROW(bound_rhs(c, H{1.0, 1.0, 0.5}, 1.0), DomainError);
  EXPECT_THROW(bound_rhs(c, H{1.0, 1.0, 1.0}, 0.5), DomainError);
  EXPECT_NO_THROW(bound_rhs(c, H{1.0, 1.0, 1.0}, 1.0));
}

TEST(BoundRhs, AllOnesWithHalfNoise) {
  // rho sigma = 0.5: 1 + 1 + 1 + 3.5 + 2
  EXPECT_DOUBLE_EQ(bound_rhs(C(1, 1, 0.5), H{1, 1, 1}, 1.0), 8.5);
}

TEST(BoundRhs, MatchesHighPrecisionSum) {
  const double v = bound_rhs(C(1, 1, 1), H{0.01, 0.1, 100}, 1e4);
  EXPECT_LT(rel(v, 0.30844555320336759), 1e-14);
  const double o = oracle::bound(1, 1, 1, oracle::mp("0.01"), oracle::mp("0.1"), 100, 10000).convert_to<double>();
  EXPECT_LT(rel(v, o), 1e-14);
}

TEST(BoundRhs, GrowsWithoutBoundInEta) {
  const C c(1, 1, 1);
  double prev = bound_rhs(c, H{1.0, 0.5, 4}, 10.0);
  for (double eta = 2.0; eta < 1e6; eta *= 2) {
    const double v = bound_rhs(c, H{eta, 0.5, 4}, 10.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 3.5 * 5e5);
}

TEST(RiskK, AllOnes) {
  const C c = C::from_proxy(1, 1, 1);
  EXPECT_DOUBLE_EQ(risk_k(c, H{1, 1, 1}, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(risk_k(c, H{1, 1, 4}, 1.0), 4.0);
}

TEST(RiskK, MatchesHighPrecisionSum) {
  const double v = risk_k(C::from_proxy(1, 1, 1), H{0.01, 0.1, 64}, 1e6);
  EXPECT_LT(rel(v, 0.14962972075210474), 1e-14);
  const double o = oracle::proxy(1, 1, 1, oracle::mp("0.01"), oracle::mp("0.1"), 64, 1000000).convert_to<double>();
  EXPECT_LT(rel(v, o), 1e-14);
}

TEST(RiskT, AllOnesAndBudgetGuard) {
  const C c = C::from_proxy(1, 1, 1);
  EXPECT_DOUBLE_EQ(risk_t(c, H{1, 1, 1}, 1.0), 5.0);
  EXPECT_THROW(risk_t(c, H{1, 1, 8}, 4.0), BudgetTooSmall);
}

TEST(RiskT, NearTheFixedMomentumOptimum) {
  // The burn-in term adds ~1e-5 relative at this point.
  const double v = risk_t(C::from_proxy(1, 1, 1), H{0.0042, 1, 3536}, 1e8);
  EXPECT_LT(rel(v, std::pow(2.0, 1.75) * 1e-2), 1e-4);
}

TEST(RiskSimplified, AllOnesAndGap) {
  const C c = C::from_proxy(1, 1, 1);
  EXPECT_DOUBLE_EQ(risk_simplified(c, 1.0, 1.0, Budget<>::iterations(1), 1.0), 4.0);
  const H h{1e-3, 1e-3, 100};
  const double k = 1e9;
  const double full = risk_k(c, h, k);
  const double simp = risk_simplified(c, h.eta, h.batch, Budget<>::iterations(k), h.alpha);
  EXPECT_LT((full - simp) / full, 1e-5);
  EXPECT_LT(rel(full - simp, simplified_gap(c, h, k)), 1e-6);
}

TEST(RiskSimplified, TokenFormUsesKEqualsTOverB) {
  const C c = C::from_proxy(2, 3, 5);
  const double a = risk_simplified(c, 0.1, 16.0, Budget<>::tokens(1600), 0.2);
  const double b = risk_simplified(c, 0.1, 16.0, Budget<>::iterations(100), 0.2);
  EXPECT_LT(rel(a, b), 1e-15);
}

TEST(UTokenExact, AllOnes) { EXPECT_DOUBLE_EQ(u_token_exact(C(1, 1, 1), H{1, 1, 1}, 1.0), 10.5); }

TEST(Identities, RandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 2000; ++i) {
    const C c(std::pow(10, 3 * u(rng)), std::pow(10, 3 * u(rng)), std::pow(10, 3 * u(rng)),
              1 + 9 * (u(rng) + 1) / 2);
    const double b = std::pow(10, 3 + 3 * u(rng));
    const H h{std::pow(10, 4 * u(rng) - 2), std::pow(10, 5 * (u(rng) - 1) / 2), b};
    const double t = b * std::pow(10, 4 + 4 * u(rng));
    EXPECT_LT(rel(risk_t(c, h, t), risk_k(c, h, t / b)), 1e-12);
    EXPECT_LT(rel(u_token_exact(c, h, t), bound_rhs(c, h, t / b)), 1e-12);
    const double gap = risk_k(c, h, t / b) - risk_simplified(c, h.eta, h.batch, Budget<>::iterations(t / b), h.alpha);
    EXPECT_GE(gap, -1e-12 * risk_k(c, h, t / b));
    EXPECT_LT(std::abs(gap - simplified_gap(c, h, t / b)), 1e-11 * risk_k(c, h, t / b));
  }
}

TEST(Monotonicity, RiskKDecreasesInBatch) {
  const C c = C::from_proxy(1, 2, 3);
  double prev = risk_k(c, H{0.01, 0.3, 1}, 100.0);
  for (double b = 2; b < 1e6; b *= 3) {
    const double v = risk_k(c, H{0.01, 0.3, b}, 100.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Templates, LongDoubleAgreesWithDouble) {
  const BoundConstants<long double> cl(1.5L, 0.7L, 0.3L, 2.0L);
  const HyperParams<long double> hl{0.02L, 0.05L, 32.0L};
  const double vd = bound_rhs(C(1.5, 0.7, 0.3, 2.0), H{0.02, 0.05, 32.0}, 500.0);
  const long double vl = bound_rhs(cl, hl, 500.0L);
  EXPECT_LT(std::abs(static_cast<double>(vl) - vd) / vd, 1e-14);
}

TEST(Templates, MultiprecisionScalar) {
  using oracle::mp;
  const BoundConstants<mp> c(mp(1), mp(1), mp(1));
  const HyperParams<mp> h{mp("0.01"), mp("0.1"), mp(100)};
  const mp v = bound_rhs(c, h, mp(10000));
  const mp o = oracle::bound(1, 1, 1, mp("0.01"), mp("0.1"), 100, 10000);
  EXPECT_LT(static_cast<double>(abs(v - o) / o), 1e-40);
}

}  // namespace
}  // namespace lmoscale
