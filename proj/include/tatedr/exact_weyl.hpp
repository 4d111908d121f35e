#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "tatedr/ratfun.hpp"
#include "tatedr/tate.hpp"
#include "tatedr/weyl.hpp"

namespace tatedr {

/// Total degree of the ∂-block (second half) of a concatenated [x | ∂]
/// exponent vector: the filtration weight.
int dBlockDegree(const MultiIndex& key);

/// Monomial order on [x | ∂] keys: ∂-weight first, graded reverse
/// lexicographic on the full vector as tie-break. The order refines the
/// filtration, so leading monomials of a basis are the monomials of its
/// symbols; shared with the Groebner engine.
struct WeylOrderCompare {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Differential operator Σ c_{a,b}(t) x^a ∂^b with exact k(t) coefficients, in
/// normal form (x before ∂). Keys are concatenated [x-block | ∂-block]
/// exponent vectors of length 2n. This is the representation the parser
/// evaluates into and the Groebner layer divides in; truncated analytic
/// questions go through toTruncated.
class ExactWeyl {
public:
    using Terms = std::map<MultiIndex, RatFun, WeylOrderCompare>;

    static ExactWeyl zero(int varCount);
    static ExactWeyl one(int varCount);
    static ExactWeyl fromRatFun(const RatFun& c, int varCount);
    /// x_i (1-based).
    static ExactWeyl x(int i, int varCount);
    /// ∂_i (1-based).
    static ExactWeyl d(int i, int varCount);
    /// c * x^a ∂^b with key = [a | b].
    static ExactWeyl term(const MultiIndex& key, const RatFun& c);

    int varCount() const { return varCount_; }
    bool isZero() const { return terms_.empty(); }
    int termCount() const { return static_cast<int>(terms_.size()); }
    RatFun coefficientOf(const MultiIndex& key) const;
    void forEachTerm(const std::function<void(const MultiIndex&, const RatFun&)>& fn) const;

    /// Max ∂-block total degree (-1 for zero).
    int order() const;
    /// Max x-block total degree (-1 for zero).
    int xDegree() const;

    /// True when the operator is a pure scalar c(t) (single exponent-0 term or
    /// zero).
    bool isScalar() const;
    RatFun asRatFun() const;

    /// Largest key in the ∂-weight order (nullopt for zero).
    std::optional<MultiIndex> leadingKey() const;
    RatFun leadingCoefficient() const;

    ExactWeyl operator-() const;
    friend ExactWeyl operator+(const ExactWeyl& a, const ExactWeyl& b);
    friend ExactWeyl operator-(const ExactWeyl& a, const ExactWeyl& b);
    /// Normal-form product: ∂^b x^c = Σ_γ binom(b,γ)·(c)_γ · x^(c−γ) ∂^(b−γ)
    /// componentwise, with (c)_γ the falling factorial.
    friend ExactWeyl operator*(const ExactWeyl& a, const ExactWeyl& b);
    ExactWeyl scaledBy(const RatFun& c) const;
    /// Non-negative exponent only.
    ExactWeyl pow(int k) const;

    /// Formal adjoint Σ (−1)^|b| ∂^b ∘ (c_{a,b} x^a), renormalized.
    ExactWeyl transpose() const;

    /// Truncated image: coefficients expanded as Laurent series at t = 0 to
    /// `prec` digits and attached to x-monomials.
    WeylOperator toTruncated(int prec = kDefaultTPrecision) const;

    std::string toString() const;

    friend bool operator==(const ExactWeyl& a, const ExactWeyl& b) {
        return a.varCount_ == b.varCount_ && a.terms_ == b.terms_;
    }

private:
    explicit ExactWeyl(int varCount) : varCount_(varCount) {}

    static ExactWeyl make(int varCount, Terms terms);

    int varCount_;
    Terms terms_;
};

/// Rebuilds an exact operator from a truncated one. Every coefficient must be
/// certified exact (no digits were ever discarded), so the stored windows are
/// the complete values; otherwise throws UnsupportedCoefficientsError.
ExactWeyl exactFromTruncated(const WeylOperator& op);

}  // namespace tatedr
