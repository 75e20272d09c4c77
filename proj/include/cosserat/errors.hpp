#pragma once

#include <stdexcept>
#include <string>

namespace cosserat {

/// An input lies outside the domain of a map (degenerate axis, sqrt of a
/// non-positive constant term, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operand mismatch that indicates a programming error (jets over
/// different bases, wrong vector sizes, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid physical or numerical configuration (non-positive dimensions,
/// under-constrained structure, ...).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The perturbation solve could not satisfy the static equations within the
/// ansatz-degree cap.
class ShapeSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time integration failed; last_good_time is the last accepted time.
class IntegratorError : public std::runtime_error {
public:
    IntegratorError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time(last_good_time) {}
    double last_good_time;
};

}  // namespace cosserat
