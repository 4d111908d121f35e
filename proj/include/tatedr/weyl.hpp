#pragma once

#include <functional>
#include <map>
#include <string>

#include "tatedr/tate.hpp"

namespace tatedr {

/// Differential operator Σ f_α ∂^α over the Tate algebra, in normal form with
/// coefficients on the left of the ∂-monomials. One representation serves both
/// polynomial-coefficient operators and truncations of the operator-norm
/// completion: modulo t^p the two coincide (coefficients below t^p vanish, so
/// finite ∂-order is automatic at fixed precision).
class WeylOperator {
public:
    using Terms = std::map<MultiIndex, TateElement, DegrevlexCompare>;

    static WeylOperator zero(int varCount, int prec = kDefaultTPrecision);
    static WeylOperator one(int varCount, int prec = kDefaultTPrecision);
    static WeylOperator fromCoefficient(const TateElement& f);
    static WeylOperator fromScalar(const LaurentScalar& s, int varCount);
    /// The derivation ∂_i (1-based).
    static WeylOperator derivation(int i, int varCount, int prec = kDefaultTPrecision);
    /// coeff * ∂^alpha.
    static WeylOperator term(const MultiIndex& alpha, const TateElement& coeff);

    int varCount() const { return varCount_; }
    int tPrecision() const { return prec_; }
    ZeroStatus zeroStatus() const;

    int termCount() const { return static_cast<int>(terms_.size()); }
    /// Coefficient of ∂^alpha (exact zero when absent).
    TateElement coefficientOf(const MultiIndex& alpha) const;
    void forEachTerm(const std::function<void(const MultiIndex&, const TateElement&)>& fn) const;

    /// Max total ∂-degree over the support (-1 for an operator with no terms).
    int order() const;
    /// Top-order part with ∂_i replaced by a commuting variable ξ_i: returned
    /// as an element in 2n variables laid out x_1..x_n, ξ_1..ξ_n. Throws
    /// InexactZeroError when no coefficient is certified nonzero.
    TateElement symbol() const;

    /// Operator log-norm: min over coefficients of the Gauss log-norm (the
    /// max-coefficient norm); flagged lower bound when only attained by
    /// coefficients indistinguishable from zero.
    ValuationBound operatorNorm() const;

    WeylOperator operator-() const;
    friend WeylOperator operator+(const WeylOperator& a, const WeylOperator& b);
    friend WeylOperator operator-(const WeylOperator& a, const WeylOperator& b);
    /// Normal-form product via the Leibniz commutation
    /// ∂^α f = Σ_{β≤α} binom(α,β) (∂^β f) ∂^(α−β).
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);

    WeylOperator scaledBy(const LaurentScalar& s) const;
    WeylOperator scaledByCoefficient(const TateElement& f) const;

    /// The natural action on the coefficient algebra.
    TateElement apply(const TateElement& f) const;

    /// Formal adjoint Σ (−1)^|α| ∂^α ∘ f_α, renormalized; an involutive
    /// anti-homomorphism.
    WeylOperator transpose() const;

    /// Inverse for P = c(1 − Q) with c a nonzero scalar and operatorNorm(Q) ≥ 1
    /// (strict contraction in the completed algebra): truncated geometric
    /// series (Σ_{k<p} Q^k) c^-1, self-checked by multiplication against
    /// 1 mod t^p on both sides. Throws NotAUnitError otherwise.
    WeylOperator invertUnit() const;

    /// Coefficientwise truncation to "known modulo t^absPrec". Equality modulo
    /// t^k is (a - b).truncatedTo(k) being indistinguishable from zero.
    WeylOperator truncatedTo(int absPrec) const;

    static bool equalAtPrecision(const WeylOperator& a, const WeylOperator& b);

    std::string toString() const;

private:
    WeylOperator(int varCount, int prec) : varCount_(varCount), prec_(prec) {}

    /// Drops exact-zero coefficients (coefficients indistinguishable from zero
    /// are kept: they carry precision information).
    static WeylOperator make(int varCount, int prec, Terms terms);

    int varCount_;
    int prec_;
    Terms terms_;
};

inline bool operator==(const WeylOperator& a, const WeylOperator& b) {
    return WeylOperator::equalAtPrecision(a, b);
}

/// Renders a symbol polynomial (2n-variable layout from WeylOperator::symbol)
/// with x_1..x_n and xi_1..xi_n names.
std::string symbolToString(const TateElement& symbolPoly);

}  // namespace tatedr
