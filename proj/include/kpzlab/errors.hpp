#pragma once

#include <stdexcept>
#include <string>

namespace kpz {

// Argument outside the mathematical domain of an operation (z > 0 for the
// lower-tail rate, non-finite Airy argument, beta <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inconsistent configuration: path length vs grid, wrong boundary, beta != 2
// where the identity requires it.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Caller broke a documented precondition on its input data (unsorted list,
// asymmetric matrix).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A refinement check did not converge.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A spectrum does not reach far enough for the requested functional.
class IncompletenessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every Monte-Carlo sample underflowed; the estimate carries no information.
class UnderflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kpz
