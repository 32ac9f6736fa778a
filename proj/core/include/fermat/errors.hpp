#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

/// Raised when an argument lies outside the domain of a formula
/// (negative radicand, non-positive length, point outside a validity interval).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative or adaptive procedure fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fermat
