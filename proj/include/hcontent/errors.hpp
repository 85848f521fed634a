#pragma once

#include <stdexcept>
#include <string>

namespace hcontent {

/// A parameter lies outside the documented range of an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data violates an operation's precondition (non-finite values,
/// support outside the allowed region, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A power-type preset was asked to evaluate at its own origin.
class SingularityError : public InputError {
public:
    using InputError::InputError;
};

/// The grid is too coarse to represent a requested object.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked mathematical property failed at runtime.
class ViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The greedy ball cover ran out of iterations; the value accumulated so far
/// is kept so callers can still report it.
class IncompleteCoverError : public std::runtime_error {
public:
    IncompleteCoverError(double partial_value, std::size_t uncovered);

    double partial_value() const noexcept { return partial_value_; }
    std::size_t uncovered_cells() const noexcept { return uncovered_; }

private:
    double partial_value_;
    std::size_t uncovered_;
};

} // namespace hcontent
