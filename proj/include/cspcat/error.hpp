#pragma once

#include <stdexcept>
#include <string>

namespace cspcat {

// Bad user-supplied data (out-of-range index, size mismatch, parse failure).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A query needs more simplicial degrees than the object stores.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated internal invariant (should be unreachable from valid inputs).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace cspcat
