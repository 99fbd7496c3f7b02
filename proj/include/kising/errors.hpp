#pragma once

#include <stdexcept>
#include <string>

namespace kising {

/// Input text that cannot be parsed (edge lists, CSV, angle expressions).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value that violates a documented precondition or invariant.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request that exceeds a configured resource limit (e.g. the qubit cap).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kising
