#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tatedr/laurent.hpp"

namespace tatedr {

/// Exponent vector of a monomial in x_1..x_n (and, in operator contexts,
/// d_1..d_n).
using MultiIndex = std::vector<int>;

int totalDegree(const MultiIndex& a);
/// Strict weak order: graded reverse lexicographic. Shared between element
/// storage and the Groebner engine.
bool degrevlexLess(const MultiIndex& a, const MultiIndex& b);
bool dividesComponentwise(const MultiIndex& a, const MultiIndex& b);  // a <= b everywhere

struct DegrevlexCompare {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return degrevlexLess(a, b); }
};

/// Element of the Tate algebra K<x_1..x_n> at t-precision p.
///
/// Stored as t^scale * sum_alpha c_alpha(t) x^alpha with each c_alpha a
/// polynomial in k[t]/(t^p) and, unless the element is an (in)exact zero, some
/// c_alpha of t-valuation 0. At fixed precision this is a finite object: an
/// element of o_K<x>/(t^p) is a genuine polynomial. No x-degree cap is imposed
/// here; only the cohomology solvers impose degree windows.
class TateElement {
public:
    using Body = std::map<MultiIndex, std::vector<Rational>, DegrevlexCompare>;

    static TateElement zero(int varCount, int prec = kDefaultTPrecision);
    static TateElement inexactZero(int varCount, int absPrec, int prec = kDefaultTPrecision);
    static TateElement fromScalar(const LaurentScalar& s, int varCount);
    static TateElement constant(const Rational& r, int varCount, int prec = kDefaultTPrecision);
    /// x_i (1-based index).
    static TateElement variable(int i, int varCount, int prec = kDefaultTPrecision);
    static TateElement monomial(const MultiIndex& alpha, const LaurentScalar& coeff, int varCount);
    /// Assembles t^scale * sum raw[alpha](t) x^alpha, normalizing scale and
    /// precision bookkeeping. When `exact`, the data is the complete value.
    static TateElement fromBody(int varCount, int scale, Body raw, int prec, bool exact);

    int varCount() const { return varCount_; }
    int tPrecision() const { return prec_; }
    bool isExact() const { return exact_; }
    ZeroStatus zeroStatus() const;

    /// Log Gauss norm: v with |f| = |t|^v (= scale once normalized); flagged
    /// lower bound for zeros.
    ValuationBound gaussNorm() const;
    int scale() const { return scale_; }
    int absolutePrecision() const;

    bool isScalar() const;
    LaurentScalar asScalar() const;
    /// Coefficient of x^alpha as a scalar.
    LaurentScalar coefficientOf(const MultiIndex& alpha) const;

    int termCount() const { return static_cast<int>(body_.size()); }
    void forEachTerm(const std::function<void(const MultiIndex&, const LaurentScalar&)>& fn) const;
    /// Largest exponent of x_i in the support (0 when absent).
    int maxDegree(int i) const;
    int maxTotalDegree() const;

    TateElement operator-() const;
    friend TateElement operator+(const TateElement& a, const TateElement& b);
    friend TateElement operator-(const TateElement& a, const TateElement& b);
    friend TateElement operator*(const TateElement& a, const TateElement& b);

    TateElement scaledBy(const LaurentScalar& s) const;
    TateElement scaledByRational(const Rational& r) const;

    /// Formal partial derivative with respect to x_i (1-based).
    TateElement derivative(int i) const;
    /// The antiderivative along x_i with zero constant term; norm-preserving
    /// because the residue characteristic is zero.
    TateElement integrate(int i) const;

    /// Inverse for elements of the form c(1 + h) with c a scalar and |h| < 1
    /// (geometric series); throws NotAUnitError otherwise.
    TateElement invertUnit() const;

    /// The same value marked as known only modulo t^absPrec (exactness cleared,
    /// digits at or beyond the bound discarded). Used by truncated-series
    /// constructions to record their error term honestly.
    TateElement truncatedTo(int absPrec) const;

    static bool equalAtPrecision(const TateElement& a, const TateElement& b);

    std::string toString(const std::string& varPrefix = "x") const;

private:
    TateElement(int varCount, int prec) : varCount_(varCount), scale_(kInfValuation), prec_(prec), exact_(true) {}

    /// Shared normalizer behind every constructor and ring operation:
    /// `absLimit` is the exponent below which digits are known (kInfValuation
    /// when `exact`), `cap` the working precision.
    static TateElement make(int varCount, int scale, Body raw, int cap, bool exact, int absLimit);

    int varCount_;
    int scale_;  // normalized global t-exponent; abs-prec bound for inexact zero; kInfValuation for exact zero
    Body body_;
    int prec_;
    bool exact_;
};

inline bool operator==(const TateElement& a, const TateElement& b) {
    return TateElement::equalAtPrecision(a, b);
}

}  // namespace tatedr
