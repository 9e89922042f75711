#pragma once

#include <stdexcept>
#include <string>

namespace kac {

/// Invalid user-supplied configuration; maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A hard numerical limit tripped (cap or resource guard); CLI exit code 3.
struct NumericalGuard : std::runtime_error {
    explicit NumericalGuard(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kac
