#pragma once

#include <stdexcept>
#include <string>

namespace ppide {

/// Invalid user-facing configuration: unknown keys, out-of-range parameters,
/// violated scheme preconditions. Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine cannot continue: singular pivot, non-finite values
/// produced mid-march. Maps to CLI exit code 1.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ppide
