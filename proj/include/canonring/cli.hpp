// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "canonring/io.hpp"

namespace canonring::cli {

enum ExitCode : int {
    kOk = 0,
    kFalse = 1,       // computed, and the asked-for property does not hold
    kInputError = 2,  // bad arguments or input files
    kBudget = 3,      // a configured budget was exhausted
};

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Randomized invariant checks used by the `selfcheck` command.
[[nodiscard]] io::Json selfcheck(std::uint64_t seed, std::size_t cases);

}  // namespace canonring::cli
