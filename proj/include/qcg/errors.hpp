#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function being evaluated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// |mu| is within the degeneracy margin of 1.
class DegenerateCoefficientError : public Error {
public:
    using Error::Error;
};

/// A dilatation below 1 was supplied.
class InvalidDilatationError : public Error {
public:
    using Error::Error;
};

/// A value would exceed the representable or configured range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// The weight integral I(R) is not strictly positive and finite.
class ConditionViolationError : public Error {
public:
    using Error::Error;
};

/// A hypothesis of a bound is violated by the supplied parameters.
class HypothesisViolationError : public Error {
public:
    using Error::Error;
};

/// The condenser areas do not satisfy m(A) > m(C) > 0.
class DegenerateCondenserError : public Error {
public:
    using Error::Error;
};

/// Quantity is undefined at the center of a radial map.
class UndefinedAtCenterError : public Error {
public:
    using Error::Error;
};

/// A reported grid is too short to estimate a liminf.
class InsufficientGridError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or run configuration.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A test function fails the normalization  int eta >= 1.
class AdmissibilityError : public Error {
public:
    AdmissibilityError(std::size_t index, double integral)
        : Error("test function #" + std::to_string(index) +
                " is not admissible: integral = " + std::to_string(integral)),
          index_(index),
          integral_(integral) {}

    std::size_t index() const noexcept { return index_; }
    double integral() const noexcept { return integral_; }

private:
    std::size_t index_;
    double integral_;
};

/// Adaptive quadrature exhausted its budget before meeting the tolerance.
/// Carries the best available estimate together with its error bound.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace qcg
