#pragma once

#include <stdexcept>
#include <string>

namespace keycap {

/// A numeric argument lies outside the mathematical domain of an operation
/// (negative entropy argument, unphysical covariance matrix, eta outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Structurally invalid call: wrong dimensions, bad permutation, empty input,
/// inconsistent configuration.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A conditioning step would divide by a zero variance.
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace keycap
