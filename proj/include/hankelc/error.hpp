#pragma once

#include <stdexcept>
#include <string>

namespace hankelc {

/// Root of every library exception. Each subclass maps to one failure
/// category of the command-line contract (usage, numeric, hypothesis).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. Γ(x), x ≤ 0).
class DomainError : public Error {
public:
    using Error::Error;
};

class ComponentExceeds : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A supremum or transform needs a Gaussian factor (decay > 0).
class DecayRequired : public Error {
public:
    using Error::Error;
};

class LimitExceeded : public Error {
public:
    using Error::Error;
};

class ExtrapolationDiverged : public Error {
public:
    using Error::Error;
};

/// A pairing functional does not vanish away from the origin.
class SupportViolation : public Error {
public:
    using Error::Error;
};

/// The polynomial symbol fails the same-sign / nonvanishing condition.
class HypothesisFailed : public Error {
public:
    HypothesisFailed(const std::string& what, int axis = -1) : Error(what), axis_(axis) {}
    /// Axis (0-based) lacking a pure power, or -1 when the failure is not axis-specific.
    int axis() const noexcept { return axis_; }

private:
    int axis_;
};

/// Malformed problem document or command-line input.
class SpecError : public Error {
public:
    using Error::Error;
};

}  // namespace hankelc
