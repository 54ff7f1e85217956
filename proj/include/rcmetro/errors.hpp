#pragma once

#include <stdexcept>
#include <string>

namespace rcmetro {

/// Invalid argument or a formula evaluated outside its domain of validity.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested matrix would exceed the configured dimension cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fock-space truncation did not converge before the cap was reached.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigensolver failure, root bracketing failure, failed consistency check.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Dicke-model routine called in the wrong thermodynamic phase.
class PhaseError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sweep configuration violates the schema. `field` is the dotted key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace rcmetro
