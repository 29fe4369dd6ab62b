// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace lmoscale {

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 ok, 2 invalid configuration, 3 infeasible request, 4 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lmoscale
