#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfde {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the 0-based character position.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string reason)
        : Error("offset " + std::to_string(offset) + ": " + reason),
          offset_(offset), reason_(std::move(reason)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

/// Expression evaluated outside its domain, or overflowed.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a numerical routine (e.g. x outside [-1,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Adaptive Chebyshev construction did not converge at the maximum degree.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Invalid problem data (ranges, tolerances, file schema).
class InputError : public Error {
public:
    using Error::Error;
};

/// A theorem hypothesis does not hold, or a derived quantity is undefined.
class ConditionError : public Error {
public:
    using Error::Error;
};

/// A Picard iterate left the invariant ball.
class BallEscapeError : public Error {
public:
    using Error::Error;
};

}  // namespace gfde
