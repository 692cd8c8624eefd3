#pragma once

#include <stdexcept>

namespace sampspec {

// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure diverged or could not reach its accuracy target.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sampspec
