// Copyright 2026 The symred Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symred::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kNonConvergence = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Documents go to the --out file when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symred::cli
