#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace macnf {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Wrong sizes, out-of-range indices, invalid degree tuples.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed polynomial text or system file. `position()` is a 0-based
/// offset into the offending expression.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Non-finite matrix entries.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Zero pivot in a triangular solve.
class SingularBlockError : public Error {
public:
    SingularBlockError(const std::string& what, std::size_t index)
        : Error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The input system numerically fails the genericity assumptions: a pivot of
/// the inverted triangular block is negligible.
class GenericityError : public Error {
public:
    GenericityError(const std::string& what, std::size_t pivot)
        : Error(what), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// A fixed monomial basis that cannot be used (wrong size, duplicates,
/// monomials of degree t).
class InvalidBasisError : public Error {
public:
    using Error::Error;
};

/// Root extraction failed: every random combination gave an ill-conditioned
/// eigenvector matrix (suspected multiple roots).
class ExtractionError : public Error {
public:
    using Error::Error;
};

/// The dense eigensolver did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace macnf
