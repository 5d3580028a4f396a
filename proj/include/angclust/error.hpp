#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace angclust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A data row has (numerically) zero norm and cannot be projected on the sphere.
class ZeroRow : public Error {
public:
    explicit ZeroRow(std::size_t row)
        : Error("row " + std::to_string(row) + " is the zero vector"), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// An angle set is too small to estimate a mean and a variance.
class TooFewAngles : public Error {
public:
    using Error::Error;
};

/// The input cannot be clustered at all (for instance fewer than three points).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a special function or density.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The sufficient sample count diverges (psi <= 1).
class NoFiniteT : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace angclust
