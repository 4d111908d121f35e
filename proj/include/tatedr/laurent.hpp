#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tatedr/errors.hpp"
#include "tatedr/rational.hpp"

namespace tatedr {

/// Default working t-adic precision (number of known unit digits); overridable
/// everywhere precision enters.
inline constexpr int kDefaultTPrecision = 8;

/// Sentinel for "+infinity" valuations / absolute precisions.
inline constexpr int kInfValuation = std::numeric_limits<int>::max() / 2;

/// Three-valued zero test: exact arithmetic can certify Zero or NonZero;
/// truncated arithmetic may only be able to say "zero as far as the retained
/// digits can see".
enum class ZeroStatus { Zero, NonZero, IndistinguishableAtPrecision };

/// Valuation v with |a| = |t|^v. For elements indistinguishable from zero the
/// value is only a lower bound (the absolute-precision exponent), flagged as
/// such; exact zero reports kInfValuation.
struct ValuationBound {
    int value = 0;
    bool isLowerBound = false;
};

/// Element of K = k((t)) at capped relative precision.
///
/// Nonzero: t^val * (unit[0] + unit[1] t + ...) with unit[0] != 0 and at most
/// `cap` known unit digits. Zero-at-precision: empty unit part plus the
/// absolute-precision exponent (the element is congruent to 0 mod t^absPrec);
/// such an element compares equal to anything of valuation >= that exponent.
/// The `exact` bit records that no arithmetic step has discarded digits, in
/// which case the stored digits are the complete value.
class LaurentScalar {
public:
    /// Exact zero.
    LaurentScalar() : LaurentScalar(kDefaultTPrecision) {}
    explicit LaurentScalar(int cap) : val_(kInfValuation), relPrec_(0), cap_(cap), exact_(true) {}

    static LaurentScalar zero(int cap = kDefaultTPrecision) { return LaurentScalar(cap); }
    static LaurentScalar inexactZero(int absPrec, int cap = kDefaultTPrecision);
    static LaurentScalar fromRational(const Rational& r, int cap = kDefaultTPrecision);
    static LaurentScalar fromLong(long n, int cap = kDefaultTPrecision);
    /// t^k (exact).
    static LaurentScalar tPower(int k, int cap = kDefaultTPrecision);
    static LaurentScalar one(int cap = kDefaultTPrecision) { return fromLong(1, cap); }

    /// Builds t^val * sum coeffs[i] t^i. When `exact` the coefficient list is
    /// the whole value; otherwise it is known modulo t^(val + coeffs.size()).
    static LaurentScalar fromCoefficients(int val, std::vector<Rational> coeffs, int cap,
                                          bool exact);

    ZeroStatus zeroStatus() const;
    bool isZeroAtPrecision() const { return unit_.empty(); }
    bool isExact() const { return exact_; }
    int cap() const { return cap_; }

    ValuationBound valuation() const;
    /// Exponent N such that the element is known modulo t^N (kInfValuation for
    /// exact elements).
    int absolutePrecision() const;
    /// Known unit digits for a nonzero element (0 for zeros).
    int relativePrecision() const { return unit_.empty() ? 0 : relPrec_; }

    /// Unit digit at offset i (0 <= i < relativePrecision window).
    Rational unitCoefficient(int i) const;
    /// Coefficient of t^k in the Laurent expansion.
    Rational coefficientAt(int k) const;
    const std::vector<Rational>& storedUnit() const { return unit_; }
    int valuationRaw() const { return val_; }

    LaurentScalar operator-() const;
    friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b);
    friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b);
    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);

    /// Multiplicative inverse; throws InexactZeroError when the element cannot
    /// be certified nonzero.
    LaurentScalar inverse() const;
    LaurentScalar dividedBy(const LaurentScalar& b) const { return *this * b.inverse(); }
    LaurentScalar pow(int k) const;
    LaurentScalar scaledBy(const Rational& r) const;
    /// Multiply by t^k (exactness-preserving).
    LaurentScalar timesTPower(int k) const;

    /// a == b up to the joint precision (difference indistinguishable from 0).
    static bool equalAtPrecision(const LaurentScalar& a, const LaurentScalar& b);
    /// Structural identity (same digits, same precision bookkeeping).
    bool identicalTo(const LaurentScalar& other) const;

    std::string toString() const;

private:
    static LaurentScalar make(int val, std::vector<Rational> coeffs, int cap, bool exact,
                              int absPrecLimit);

    int val_;                     // valuation, or absolute-precision bound for inexact zero,
                                  // or kInfValuation for exact zero
    std::vector<Rational> unit_;  // empty for zeros; trailing zeros trimmed
    int relPrec_;                 // known unit digits (nonzero elements, <= cap_)
    int cap_;                     // working relative-precision cap
    bool exact_;
};

inline bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    return LaurentScalar::equalAtPrecision(a, b);
}

}  // namespace tatedr
