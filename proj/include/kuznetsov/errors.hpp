#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kuznetsov {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation hit a pole of a meromorphic function.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, std::complex<double> location)
        : std::domain_error(what), location_(location) {}
    std::complex<double> location() const { return location_; }

private:
    std::complex<double> location_;
};

// Quadrature could not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// Parameters coincide so that a formula degenerates (e.g. colliding poles).
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed external data.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotImplementedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace kuznetsov
