#pragma once

#include <stdexcept>
#include <string>

namespace pegstab {

// Bad input: malformed files, schema violations, invalid configuration.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation that could not complete on otherwise-valid input
// (rank deficiency, degenerate fits, non-finite intermediates).
// The CLI maps this to exit code 1.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pegstab
