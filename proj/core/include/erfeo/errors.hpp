#pragma once

#include <stdexcept>
#include <string>

namespace erfeo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters outside the regime where a reduction or formula applies.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Negative radicand or indefinite quadratic form.
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace erfeo
