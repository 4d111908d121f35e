#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tatedr/laurent.hpp"
#include "tatedr/rational.hpp"

namespace tatedr {

/// Dense polynomial over Q in the uniformizer t. Backs the exact
/// rational-function coefficients used by the Groebner layer, where truncation
/// is not an option.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rational& c);
    static QPoly t();
    static QPoly tPower(int k);
    static QPoly fromCoefficients(std::vector<Rational> coeffs);

    bool isZero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Index of the lowest nonzero coefficient (kInfValuation for 0).
    int tValuation() const;
    Rational coefficient(int i) const;
    Rational leadingCoefficient() const;
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly scaledBy(const Rational& r) const;

    /// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
    static std::pair<QPoly, QPoly> divRem(const QPoly& a, const QPoly& b);
    /// Monic gcd (gcd(0,0) = 0).
    static QPoly gcd(QPoly a, QPoly b);

    QPoly derivative() const;
    Rational evaluate(const Rational& x) const;

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string toString() const;

private:
    std::vector<Rational> coeffs_;  // coeffs_[i] multiplies t^i; high zeros trimmed
};

/// Element of k(t) as a reduced fraction with monic denominator. The exact
/// scalar field for symbol/Groebner computations; converts to a truncated
/// LaurentScalar by power-series expansion at t = 0.
class RatFun {
public:
    RatFun() = default;  // zero
    RatFun(QPoly numerator, QPoly denominator);  // reduces; denominator must be nonzero
    explicit RatFun(QPoly p);
    static RatFun constant(const Rational& c);
    static RatFun t();
    /// t^k for any integer k (negative allowed).
    static RatFun tPower(int k);

    bool isZero() const { return num_.isZero(); }
    const QPoly& numerator() const { return num_; }
    const QPoly& denominator() const { return den_; }
    /// v(num) - v(den); kInfValuation for 0.
    int tValuation() const;
    /// True when the value is a rational number (denominator 1, degree-0 numerator).
    bool isRationalConstant() const;
    Rational asRational() const;

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun inverse() const;  // throws std::domain_error on zero
    RatFun scaledBy(const Rational& r) const;

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Laurent expansion at t = 0 carried to `cap` unit digits. Exact when the
    /// division terminates (denominator a monomial times a unit dividing the
    /// numerator); otherwise flagged inexact at the matching absolute precision.
    LaurentScalar expandAt0(int cap = kDefaultTPrecision) const;

    /// Value at t = 0 of a function regular there (den(0) != 0); the residue
    /// reduction map. Throws std::domain_error when the function has a pole.
    Rational valueAt0() const;

    std::string toString() const;

private:
    QPoly num_;
    QPoly den_ = QPoly(Rational(1));
};

}  // namespace tatedr
