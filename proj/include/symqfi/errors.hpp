#pragma once

#include <stdexcept>
#include <string>

namespace symqfi {

// Precondition or shape violation by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not produce a trustworthy answer
// (non-convergence, flat likelihood, too many estimator failures).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace symqfi
