// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Linear minimization oracle over the unit ball of a norm, and the dual norms
// the bound measures gradients in. Parameters are Eigen matrices; vectors are
// n x 1 matrices.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "lmoscale/errors.hpp"

namespace lmoscale {

enum class NormKind { Euclidean, MaxNorm, Spectral };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Norm of `x` in the given norm (l2, l-infinity, spectral).
template <typename Derived>
typename Derived::Scalar primal_norm(const Eigen::MatrixBase<Derived>& x, NormKind kind) {
  switch (kind) {
    case NormKind::Euclidean:
      return x.norm();
    case NormKind::MaxNorm:
      return x.cwiseAbs().maxCoeff();
    case NormKind::Spectral:
      return Eigen::JacobiSVD<MatrixX<typename Derived::Scalar>>(x).singularValues()(0);
  }
  throw DomainError("unknown norm");
}

/// Dual norm: l2 for l2, l1 for l-infinity, nuclear for spectral.
template <typename Derived>
typename Derived::Scalar dual_norm(const Eigen::MatrixBase<Derived>& x, NormKind kind) {
  switch (kind) {
    case NormKind::Euclidean:
      return x.norm();
    case NormKind::MaxNorm:
      return x.cwiseAbs().sum();
    case NormKind::Spectral:
      return Eigen::JacobiSVD<MatrixX<typename Derived::Scalar>>(x).singularValues().sum();
  }
  throw DomainError("unknown norm");
}

template <typename Scalar>
struct PolarFactor {
  MatrixX<Scalar> u;
  int iterations = 0;
  bool used_fallback = false;
};

/// Orthogonal polar factor U V^T from a thin SVD.
template <typename Derived>
MatrixX<typename Derived::Scalar> polar_exact(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

namespace detail {

// Weights of the dynamically weighted Halley step for a lower bound l on the
// smallest singular value of an iterate with largest singular value <= 1.
template <typename Scalar>
void halley_weights(Scalar l, Scalar& a, Scalar& b, Scalar& c) {
  using std::cbrt;
  using std::sqrt;
  const Scalar l2 = l * l;
  const Scalar d = cbrt(Scalar(4) * (Scalar(1) - l2) / (l2 * l2));
  a = sqrt(Scalar(1) + d) + sqrt(Scalar(8) - Scalar(4) * d + Scalar(8) * (Scalar(2) - l2) / (l2 * sqrt(Scalar(1) + d))) / Scalar(2);
  b = (a - Scalar(1)) * (a - Scalar(1)) / Scalar(4);
  c = a + b - Scalar(1);
}

template <typename Scalar>
PolarFactor<Scalar> polar_tall(MatrixX<Scalar> x, int max_iterations, Scalar tolerance) {
  using std::sqrt;
  const Eigen::Index n = x.cols();
  const MatrixX<Scalar> eye = MatrixX<Scalar>::Identity(n, n);
  PolarFactor<Scalar> out;

  x /= x.norm();  // Frobenius norm bounds the spectral norm
  MatrixX<Scalar> gram = x.transpose() * x;
  Eigen::LDLT<MatrixX<Scalar>> ldlt(gram);
  bool ok = ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.vectorD().minCoeff() > Scalar(0);
  Scalar l = 0;
  if (ok) {
    const MatrixX<Scalar> inv = ldlt.solve(eye);
    l = Scalar(1) / sqrt(inv.norm());  // sigma_min^2 >= 1/||(X^T X)^{-1}||_F
    ok = std::isfinite(static_cast<double>(l)) && l > Scalar(0);
  }
  if (ok) {
    l = std::min(l, Scalar(1));
    for (int it = 0; it < max_iterations; ++it) {
      Scalar a, b, c;
      if (l >= Scalar(1) - Scalar(1e-15)) {
        a = 3;
        b = 1;
        c = 3;
      } else {
        halley_weights(l, a, b, c);
      }
      gram = x.transpose() * x;
      const MatrixX<Scalar> lhs = eye + c * gram;
      Eigen::LLT<MatrixX<Scalar>> llt(lhs);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      // X (a I + b G)(I + c G)^{-1} = (b/c) X + (a - b/c) X (I + c G)^{-1}
      const MatrixX<Scalar> xt = llt.solve(x.transpose());
      x = (b / c) * x + (a - b / c) * xt.transpose();
      l = std::min(Scalar(1), l * (a + b * l * l) / (Scalar(1) + c * l * l));
      out.iterations = it + 1;
      if ((x.transpose() * x - eye).norm() < Scalar(1e-14)) break;
    }
  }
  if (ok) {
    const Scalar residual = (x.transpose() * x - eye).norm();
    ok = std::isfinite(static_cast<double>(residual)) && residual <= tolerance;
  }
  if (!ok) {
    out.used_fallback = true;
    return out;
  }
  // one Newton-Schulz polish step
  x = x * (Scalar(1.5) * eye - Scalar(0.5) * (x.transpose() * x));
  out.u = std::move(x);
  return out;
}

}  // namespace detail

/// Orthogonal polar factor by at most `max_iterations` dynamically weighted
/// Halley steps; falls back to an SVD when the iterate's orthogonality
/// residual ||X^T X - I||_F stays above `tolerance`.
template <typename Derived>
PolarFactor<typename Derived::Scalar> polar_factor(const Eigen::MatrixBase<Derived>& m, int max_iterations = 5,
                                                   typename Derived::Scalar tolerance = 1e-4) {
  using Scalar = typename Derived::Scalar;
  const bool wide = m.rows() < m.cols();
  MatrixX<Scalar> x = wide ? MatrixX<Scalar>(m.transpose()) : MatrixX<Scalar>(m);
  PolarFactor<Scalar> out = detail::polar_tall<Scalar>(std::move(x), max_iterations, tolerance);
  if (out.used_fallback) out.u = polar_exact(m.derived());
  else if (wide) out.u.transposeInPlace();
  return out;
}

template <typename Scalar>
struct LmoDirection {
  MatrixX<Scalar> d;
  bool zero_input = false;     // m == 0: every point of the ball is a minimizer, d = 0
  bool used_fallback = false;  // spectral only: exact decomposition was used
};

/// argmin over ||d|| <= 1 of <m, d>. For m != 0, ||d|| = 1 and <m, d> = -||m||_*.
template <typename Derived>
LmoDirection<typename Derived::Scalar> lmo_direction(const Eigen::MatrixBase<Derived>& m, NormKind kind) {
  using Scalar = typename Derived::Scalar;
  LmoDirection<Scalar> out;
  if (m.size() == 0 || m.isZero(0)) {
    out.d = MatrixX<Scalar>::Zero(m.rows(), m.cols());
    out.zero_input = true;
    return out;
  }
  switch (kind) {
    case NormKind::Euclidean:
      out.d = -m / m.norm();
      break;
    case NormKind::MaxNorm:
      out.d = -m.unaryExpr([](Scalar v) { return Scalar((v > 0) - (v < 0)); });
      break;
    case NormKind::Spectral: {
      auto p = polar_factor(m);
      out.d = -p.u;
      out.used_fallback = p.used_fallback;
      break;
    }
  }
  return out;
}

/// Momentum recursion m <- (1 - alpha) m + alpha g.
template <typename Derived, typename OtherDerived>
void momentum_update(Eigen::MatrixBase<Derived>& m, const Eigen::MatrixBase<OtherDerived>& g,
                     typename Derived::Scalar alpha) {
  m = (typename Derived::Scalar(1) - alpha) * m + alpha * g;
}

}  // namespace lmoscale
