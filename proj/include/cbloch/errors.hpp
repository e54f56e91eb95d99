#pragma once

#include <stdexcept>
#include <string>

namespace cbloch {

// Every failure raised by the library derives from Error. The two branches
// map onto the CLI exit codes: ConfigError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Invalid inputs and contract violations.
class ShapeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class DegenerateField : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RegimeMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TruncationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Failures detected while integrating or analysing a run.
class NormDrift : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class EdgeOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NumericalInconsistency : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace cbloch
