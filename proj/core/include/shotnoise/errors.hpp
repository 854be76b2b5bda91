#pragma once

#include <stdexcept>
#include <string>

namespace shotnoise {

// Two families: bad input (maps to CLI exit 1) and failures that only
// surface while running a simulation (exit 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NetProfitError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NoRootError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class HorizonRequired : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MaxEventsExceeded : public SimulationError {
public:
    using SimulationError::SimulationError;
};

class PathNotRuined : public SimulationError {
public:
    using SimulationError::SimulationError;
};

} // namespace shotnoise
