#pragma once

#include <stdexcept>
#include <string>

namespace disloc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the mathematical operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration text or field data failed validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed `key = value` line; carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(int line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A field file does not sample the expected grid.
class GridMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Two runs that should share grid, parameters and record times do not.
class MismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Too few samples (or non-positive data) for a fit.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Failure of the numerics themselves: blow-up, contamination, calibration.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InstabilityError : public NumericalError {
public:
    InstabilityError(double time, const std::string& what)
        : NumericalError("t=" + std::to_string(time) + ": " + what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class BoundaryContaminationError : public NumericalError {
public:
    BoundaryContaminationError(double time, const std::string& what)
        : NumericalError("t=" + std::to_string(time) + ": " + what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class CalibrationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace disloc
