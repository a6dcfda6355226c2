// Copyright (c) canonring contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace canonring {

enum class ErrorKind {
    Disconnected,
    IndexOutOfRange,
    SizeMismatch,
    EmptyOrFullSubset,
    NotMember,
    DegreeOverflow,
    BudgetExceeded,
    NonIntegralRefinement,
    InvalidPL,
    EmptySubgraph,
    NotCanonical,
    HypothesisFailure,
    DegenerateCone,
    InvalidInput,
    // An internal certificate failed to re-verify. Never expected.
    VerificationFailure,
};

[[nodiscard]] const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Budget-type failures map to their own CLI exit code.
[[nodiscard]] inline bool is_budget_error(ErrorKind kind) {
    return kind == ErrorKind::BudgetExceeded || kind == ErrorKind::DegreeOverflow;
}

}  // namespace canonring
