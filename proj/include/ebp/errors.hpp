#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ebp {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A model object violates its own invariants (masses off, bad parameter).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Requested calibration target cannot be met by the family.
class CalibrationError : public Error {
public:
    using Error::Error;
};

// Operation called outside its domain (bad day index, argument out of range).
class DomainError : public Error {
public:
    using Error::Error;
};

// Input data is structurally valid but unusable for the computation.
class DataError : public Error {
public:
    using Error::Error;
};

// Exact enumeration ran out of support; carries the unaccounted mass.
class TruncationError : public Error {
public:
    TruncationError(const std::string& msg, double deficit)
        : Error(msg), deficit_(deficit) {}
    double deficit() const { return deficit_; }

private:
    double deficit_;
};

// Simulated population exceeded the configured cap. day() is -1 when the
// failing day is not known at the throw site.
class ExplosionError : public Error {
public:
    explicit ExplosionError(const std::string& msg, int day = -1)
        : Error(msg), day_(day) {}
    int day() const { return day_; }

private:
    int day_;
};

// Estimator or proportion undefined at the requested day (zero denominator).
class UndefinedEstimateError : public Error {
public:
    using Error::Error;
};

// Too little usable data to finish (short series, too few bootstrap draws).
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Text input could not be parsed; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace ebp
