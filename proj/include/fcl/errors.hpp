#pragma once

#include <stdexcept>
#include <string>

namespace fcl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input; `field()` names the offending parameter.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A computed quantity left its physically allowed range (e.g. a correlation
/// eigenvalue outside [0, 1] by more than the tolerance).
class NumericalHealthError : public Error {
public:
    using Error::Error;
};

/// A brute-force computation would exceed its hard size guard.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, long long dimension)
        : Error(what + " (dimension " + std::to_string(dimension) + ")"), dimension_(dimension) {}

    long long dimension() const noexcept { return dimension_; }

private:
    long long dimension_;
};

}  // namespace fcl
