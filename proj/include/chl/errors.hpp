#pragma once

#include <stdexcept>
#include <string>

namespace chl {

/// Base class for everything this library throws deliberately.
/// The CLI maps these onto process exit codes (config = 1, numerical = 2,
/// internal inconsistency = 3).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user-supplied parameters (grids, exponents, datum specs, CLI flags).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical operation could not be completed (solver underflow of dt,
/// non-finite values, unusable sample sets).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Two independent computation paths that must agree did not.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

// -- named conditions used across module contracts --------------------------

struct BadExponent : ConfigError { using ConfigError::ConfigError; };
struct GridMismatch : ConfigError { using ConfigError::ConfigError; };
struct GridTooCoarse : ConfigError { using ConfigError::ConfigError; };
struct SymmetryViolation : NumericalError { using NumericalError::NumericalError; };
struct NegativeTime : ConfigError { using ConfigError::ConfigError; };
struct OutOfRange : ConfigError { using ConfigError::ConfigError; };
struct ExponentOutOfRange : ConfigError { using ConfigError::ConfigError; };
struct NonPositive : ConfigError { using ConfigError::ConfigError; };
struct NTooSmall : ConfigError { using ConfigError::ConfigError; };
struct ProbeBelowTk : ConfigError { using ConfigError::ConfigError; };
struct ResolutionError : ConfigError { using ConfigError::ConfigError; };
struct InsufficientSamples : ConfigError { using ConfigError::ConfigError; };
struct IncompatibleLambda : ConfigError { using ConfigError::ConfigError; };
struct NonPositiveDelta : ConfigError { using ConfigError::ConfigError; };
struct NegativeK : ConfigError { using ConfigError::ConfigError; };

} // namespace chl
