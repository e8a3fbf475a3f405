#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace exle {

/// Input outside the mathematical domain of an operation (invalid exponents,
/// non-positive parameters, s below its admissible range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Grid or solver configuration that cannot be honoured.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative method failed to deliver its post-condition.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::vector<double> trace = {})
        : std::runtime_error(what), trace_(std::move(trace)) {}

    /// Iterate history (eigenvalue estimates, bracket widths, ...) up to the failure.
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

/// A post-processing diagnostic lacks the data it needs (e.g. too few branch points).
class DiagnosticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace exle
