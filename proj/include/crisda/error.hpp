// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <stdexcept>
#include <string>

namespace crisda {

/// Invalid configuration or a violated experiment invariant. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad function argument (out-of-range fraction, k < 1, mismatched lengths).
/// Treated as a config/validation failure at the CLI boundary.
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Unreadable, malformed, or inconsistent data at run time. CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace crisda
