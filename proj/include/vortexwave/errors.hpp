#ifndef VORTEXWAVE_ERRORS_HPP
#define VORTEXWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vortexwave {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation (NaN, x<0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Angle or parameter outside the validity range of the selected formula.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Parameter regime for which no formula exists (e.g. eta >= 1/2 classically).
class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

/// Nonpositive transverse energy and similar kinematic inconsistencies.
class KinematicsError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested exactly at a non-removable singularity.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Requested tolerance unreachable within the term budget. Carries the
/// partial sum and the running error estimate so callers can decide.
class TruncationError : public Error {
public:
    TruncationError(const std::string& msg, double partial_re, double partial_im,
                    double estimate)
        : Error(msg), partial_real(partial_re), partial_imag(partial_im),
          error_estimate(estimate) {}
    double partial_real;
    double partial_imag;
    double error_estimate;
};

/// A "cannot happen" condition; indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Config parse or validation failure (carries a 1-based line when known).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}
    int line_number;
};

} // namespace vortexwave

#endif
