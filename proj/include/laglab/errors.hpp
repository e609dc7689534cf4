#ifndef LAGLAB_ERRORS_HPP
#define LAGLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace laglab {

// Domain violations use std::domain_error / std::invalid_argument directly.
// The types below mark numerical failures that a caller may want to retry
// with different tolerances or budgets.

/// A series or quadrature could not reach the requested accuracy.
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

/// An infinite sum could not be certified (tail bound never fell below tol).
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace laglab

#endif
