// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "lmoscale/cli.hpp"

int main(int argc, char** argv) { return lmoscale::run_cli(argc, argv, std::cout, std::cerr); }
