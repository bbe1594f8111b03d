#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace petra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (non-positive frequency, notch above Nyquist, y <= 0 in a log fit, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Too few points or samples for the requested estimate.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Record does not hold enough drive cycles for a periodic analysis.
class InsufficientRecordError : public Error {
public:
    using Error::Error;
};

/// Least-squares problem has no identifiable solution.
class FitDegenerateError : public Error {
public:
    using Error::Error;
};

/// SNR cannot be defined (e.g. an all-zero record).
class UndefinedSnrError : public Error {
public:
    using Error::Error;
};

/// Regression never reaches the SNR threshold inside the admissible range.
class NoCrossingError : public Error {
public:
    using Error::Error;
};

/// Noise calibration could not hit its target.
class CalibrationError : public Error {
public:
    using Error::Error;
};

/// Two records that must share a time base do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries the 1-based line number of the offending line
/// (0 when the problem is not tied to a line, e.g. an empty file).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace petra
