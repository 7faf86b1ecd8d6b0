#pragma once

#include <stdexcept>
#include <string>

namespace somlab {

/// Base class for all somlab-specific errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by the config parser and by guarded run parameters (e.g. the
/// lambda stability window without the override flag).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Raised when a 1-D weight sequence is not strictly monotone where an
/// estimator requires it.
class TopologicalDefectError : public Error {
public:
    explicit TopologicalDefectError(const std::string& msg) : Error(msg) {}
};

/// Raised when the regressor has no variance (e.g. uniform density makes
/// ln p constant, so the exponent is unidentifiable).
class DegenerateRegressorError : public Error {
public:
    explicit DegenerateRegressorError(const std::string& msg) : Error(msg) {}
};

/// Raised when a finite-difference probe would move a Voronoi border
/// across a stimulus point.
class BorderCrossingError : public Error {
public:
    explicit BorderCrossingError(const std::string& msg) : Error(msg) {}
};

/// Raised when an operation is asked of a distribution variant that does
/// not support it (e.g. density_at on a discrete set).
class UnsupportedOperationError : public Error {
public:
    explicit UnsupportedOperationError(const std::string& msg) : Error(msg) {}
};

}  // namespace somlab
