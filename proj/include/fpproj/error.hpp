#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpproj {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad range, mismatched
/// ambient spaces, trivial subspace where a proper one is required...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An exact integer computation would not fit in 64 bits.
class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An enumeration or table would exceed the configured size budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Size limits for exhaustive work. Defaults keep desk-scale runs short.
struct Budget {
    std::uint64_t max_points = 100000;     // p^n for bit arrays and spectral tables
    std::uint64_t max_subspaces = 200000;  // |G(n,k)| for enumeration
};

}  // namespace fpproj
