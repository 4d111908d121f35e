#pragma once

#include <stdexcept>
#include <string>

namespace tatedr {

/// Base class for every mathematical failure mode: callers that only care about
/// "the computation could not produce a trustworthy answer" catch this one.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation needed to certify an element nonzero but could only see
/// IndistinguishableAtPrecision (e.g. inverting a scalar that vanishes to the
/// working precision).
struct InexactZeroError : MathError {
    explicit InexactZeroError(const std::string& what) : MathError(what) {}
};

/// Unit inversion was requested for an element outside the certified-unit class
/// (no scalar c with |P/c - 1| < 1).
struct NotAUnitError : MathError {
    explicit NotAUnitError(const std::string& what) : MathError(what) {}
};

/// Cyclic-to-connection conversion needs the leading d-coefficient to be a unit
/// of the coordinate ring.
struct LeadingCoefficientNotUnitError : MathError {
    explicit LeadingCoefficientNotUnitError(const std::string& what) : MathError(what) {}
};

/// A truncated computation was asked to run on a window too small to hold even
/// its boundary slack.
struct WindowTooSmallError : MathError {
    explicit WindowTooSmallError(const std::string& what) : MathError(what) {}
};

/// Residue-field reduction requested for a connection with no certified
/// integral model.
struct NoModelAvailableError : MathError {
    explicit NoModelAvailableError(const std::string& what) : MathError(what) {}
};

/// Neither analysis route (unit inversion in the completed algebra / companion
/// conversion) applies to the given operator.
struct InconclusiveRouteError : MathError {
    explicit InconclusiveRouteError(const std::string& what) : MathError(what) {}
};

/// Operator expression text failed to parse; `position` is a 0-based byte
/// offset into the input.
struct SyntaxError : MathError {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : MathError(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

/// A variable or derivation index fell outside 1..varCount.
struct IndexOutOfRangeError : MathError {
    explicit IndexOutOfRangeError(const std::string& what) : MathError(what) {}
};

/// An exact computation (holonomicity / characteristic variety) was asked to
/// run on coefficients that are not certified exact polynomials in x over
/// Laurent polynomials in t.
struct UnsupportedCoefficientsError : MathError {
    explicit UnsupportedCoefficientsError(const std::string& what) : MathError(what) {}
};

}  // namespace tatedr
