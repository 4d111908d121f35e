#pragma once

#include <string>
#include <vector>

#include "tatedr/exact_weyl.hpp"

namespace tatedr {

/// Commutative polynomial over k(t) in the 2n symbol variables
/// x_1..x_n, xi_1..xi_n, keyed by the same concatenated exponent vectors and
/// the same xi-weight order as the operators whose symbols it receives.
class SymbolPoly {
public:
    using Terms = std::map<MultiIndex, RatFun, WeylOrderCompare>;

    static SymbolPoly zero(int varCount);
    static SymbolPoly term(const MultiIndex& key, const RatFun& c);

    int varCount() const { return varCount_; }
    bool isZero() const { return terms_.empty(); }
    int termCount() const { return static_cast<int>(terms_.size()); }
    RatFun coefficientOf(const MultiIndex& key) const;
    void forEachTerm(const std::function<void(const MultiIndex&, const RatFun&)>& fn) const;

    /// Largest key in the xi-weight order; empty polynomial has none.
    std::optional<MultiIndex> leadingKey() const;
    RatFun leadingCoefficient() const;

    SymbolPoly operator-() const;
    friend SymbolPoly operator+(const SymbolPoly& a, const SymbolPoly& b);
    friend SymbolPoly operator-(const SymbolPoly& a, const SymbolPoly& b);
    friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b);
    SymbolPoly scaledBy(const RatFun& c) const;
    /// Leading coefficient normalized to 1.
    SymbolPoly monic() const;

    std::string toString() const;

    friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) {
        return a.varCount_ == b.varCount_ && a.terms_ == b.terms_;
    }

private:
    explicit SymbolPoly(int varCount) : varCount_(varCount) {}

    int varCount_;
    Terms terms_;
};

/// Cyclic left module D_n / (relations), with the order filtration implied.
/// Relations are exact operators; zero relations are ignored.
struct FilteredPresentation {
    int varCount = 1;
    std::vector<ExactWeyl> relations;
};

/// Outcome of the characteristic-variety dimension computation.
struct CharVarietyReport {
    int varCount = 1;
    bool moduleIsZero = false;
    /// Monic generators of the ideal of leading forms (empty for the zero
    /// module, where the variety is empty).
    std::vector<SymbolPoly> initialIdealGenerators;
    /// Krull dimension of k(t)[x, xi] / initial ideal; -1 for the zero module.
    int charDimension = 0;
    bool holonomic = false;
    /// A nonzero module should never have charDimension < varCount; if the
    /// computation ever reports one, this flag surfaces it for audit instead
    /// of silently passing.
    bool dimensionBelowVarCount = false;
};

/// Left normal form of f modulo a list of nonzero operators: repeatedly
/// cancels the largest divisible term by a left monomial multiple of a basis
/// element. Against a Groebner basis the result is the unique normal form.
ExactWeyl reduceByBasis(const ExactWeyl& f, const std::vector<ExactWeyl>& basis);

/// Reduced monic left Groebner basis of the relation ideal (Buchberger:
/// every S-pair is formed and reduced; no pair is skipped, since the
/// commutator contributes lower-weight terms even for disjoint supports).
std::vector<ExactWeyl> leftBuchberger(const FilteredPresentation& p);

/// Sum of the terms of maximal xi-weight, read as a commutative polynomial:
/// the image in the associated graded ring.
SymbolPoly topWeightForm(const ExactWeyl& p);

/// Monic generators of the ideal of leading forms: top-weight forms of a
/// Groebner basis (the order refines the weight, so these generate).
std::vector<SymbolPoly> initialIdeal(const std::vector<ExactWeyl>& groebnerBasis);

/// Commutative counterparts on symbol polynomials.
SymbolPoly reduceByBasis(const SymbolPoly& f, const std::vector<SymbolPoly>& basis);
std::vector<SymbolPoly> commutativeBuchberger(const std::vector<SymbolPoly>& generators);

/// Krull dimension of k(t)[x_1..x_n, xi_1..xi_n] / ideal: a commutative
/// Groebner basis reduces to a monomial ideal, whose dimension is the largest
/// set of variables meeting the support of no generator. Returns 2n for the
/// zero ideal and -1 for the unit ideal.
int krullDimension(const std::vector<SymbolPoly>& ideal, int varCount);

/// Full pipeline: Groebner basis, initial ideal, characteristic dimension,
/// and the holonomicity verdict (zero module, or dimension == varCount).
CharVarietyReport analyzeCharVariety(const FilteredPresentation& p);

inline bool isHolonomic(const FilteredPresentation& p) { return analyzeCharVariety(p).holonomic; }

}  // namespace tatedr
