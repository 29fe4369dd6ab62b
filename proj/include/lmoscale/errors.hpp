// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lmoscale {

// Exit codes used by the command-line tool; each error class maps onto one.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidConfig = 2,
  kInfeasible = 3,
  kNumerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An input violates a type invariant (negative step size, alpha outside (0,1], ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kInvalidConfig, what) {}
};

/// The token budget cannot cover a single step at the requested batch size.
class BudgetTooSmall : public Error {
 public:
  explicit BudgetTooSmall(const std::string& what) : Error(ErrorCode::kInfeasible, what) {}
};

/// The request has no feasible answer (empty grid, unattainable level set, ...).
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(ErrorCode::kInfeasible, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCode::kNumerical, what) {}
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail

}  // namespace lmoscale
