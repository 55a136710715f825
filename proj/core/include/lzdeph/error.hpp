#pragma once

#include <stdexcept>
#include <string>

namespace lzdeph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad parameter, empty grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Hermitian matrix whose two eigenvalues coincide; projections undefined.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

/// Vanishing denominator in the transport solution (zero gap and zero dephasing).
class SingularTransport : public Error {
public:
    using Error::Error;
};

/// Quadrature exceeded its subdivision budget.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// Evolved state violated a physical post-condition (trace, Hermiticity, positivity).
class NumericalQualityError : public Error {
public:
    using Error::Error;
};

}  // namespace lzdeph
