#pragma once

#include <stdexcept>
#include <string>

namespace markoff {

// Violated precondition (bad input, off-surface point, wrong ring, ...).
// The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A configured search bound was exhausted before the answer was found
// (slope bound, orbit depth, node budget, factor bound). Exit code 3.
class bound_error : public std::runtime_error {
public:
    explicit bound_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace markoff
