#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dispersive {

// Mismatched grids, bad shapes, violated exponent ordering.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SymbolEvaluationError : std::domain_error {
    using std::domain_error::domain_error;
};

struct OutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct UnsupportedScaleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateEquationError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct CostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace dispersive
