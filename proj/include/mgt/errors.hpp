#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgt {

// Temperature (or another state variable) outside a correlation's declared range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Unknown species or table key.
class LookupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input that violates an operation's preconditions.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Fuel-rich mixtures are outside the complete-combustion model.
class UnsupportedMixtureError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative solve that failed to converge or to bracket a root.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> residual_history = {})
        : std::runtime_error(what), history_(std::move(residual_history)) {}

    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace mgt
