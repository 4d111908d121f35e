#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tatedr/laurent.hpp"

namespace tatedr {

/// Rank data for a matrix over K at finite precision. `reliable` is false
/// whenever a rank decision rested on an entry indistinguishable from zero
/// (or on a pivot sitting within one digit of the precision floor): an unseen
/// digit could have changed the answer.
struct RankReport {
    int rank = 0;
    int kernelDim = 0;
    int cokernelDim = 0;
    int minPivotValuation = kInfValuation;  // kInfValuation when there are no pivots
    bool reliable = true;
};

/// Dense matrix of LaurentScalar entries. `precisionFloor` is the t-exponent
/// below which every entry's digits are known; entries whose valuation reaches
/// the floor are inexact zeros for all rank purposes.
class ScalarMatrix {
public:
    ScalarMatrix() : rows_(0), cols_(0), floor_(kInfValuation), cap_(kDefaultTPrecision) {}
    ScalarMatrix(int rows, int cols, int cap = kDefaultTPrecision);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cap() const { return cap_; }

    const LaurentScalar& at(int i, int j) const;
    void set(int i, int j, LaurentScalar v);
    /// a[i][j] += v
    void accumulate(int i, int j, const LaurentScalar& v);

    /// Smallest absolute precision over all entries (kInfValuation when every
    /// entry is exact); cached after first computation.
    int precisionFloor() const;
    void overridePrecisionFloor(int floor) { floor_ = floor; }

    ScalarMatrix rowsWhere(const std::vector<char>& keep) const;
    ScalarMatrix transposed() const;

    std::vector<LaurentScalar> apply(const std::vector<LaurentScalar>& v) const;

    std::string toString() const;

private:
    int rows_, cols_;
    std::vector<LaurentScalar> data_;
    mutable int floor_;
    int cap_;
};

/// Reduced row echelon form plus pivot bookkeeping.
struct EchelonForm {
    ScalarMatrix reduced;
    std::vector<int> pivotColOfRow;  // pivot column for each pivot row 0..rank-1
    std::vector<int> pivotRowOfCol;  // -1 for free columns
    RankReport report;
};

/// Row reduction with min-valuation pivoting (ties broken by lowest row
/// index). Multipliers then have valuation >= 0, so elimination never loses
/// precision below the input floor.
EchelonForm echelonize(const ScalarMatrix& m);

RankReport rankReport(const ScalarMatrix& m);

/// Basis of the kernel at the matrix's precision floor, extracted from the
/// reduced form (one vector per free column).
std::vector<std::vector<LaurentScalar>> kernelBasis(const ScalarMatrix& m);

int kernelDim(const ScalarMatrix& m);
int cokernelDim(const ScalarMatrix& m);

/// One cohomological degree of a truncated complex, with the two matrices the
/// window estimator needs:
///   kernelMap : delta^i restricted to the report-window part of C^i (genuine
///               codomain, nothing projected away);
///   imageMap  : delta^{i-1} on an extended domain (extra x-degree headroom so
///               that preimages whose degree grows with each t-digit are
///               visible), with `imageRowInWindow[r]` marking which codomain
///               rows lie in the report window of C^i.
struct ComplexDegreeWindow {
    ScalarMatrix kernelMap;
    bool hasImage = false;
    ScalarMatrix imageMap;
    std::vector<char> imageRowInWindow;
};

struct CohomologyDims {
    std::vector<int> dims;
    bool reliable = true;
};

/// H^i estimate = dim ker(kernelMap) - dim(im delta^{i-1} meet report window),
/// the image term computed as ker(rows-outside-window block) - ker(full map).
/// Using the genuine (unprojected) image matrix is what keeps norm-respecting
/// honesty: a class only counts as hit when the overflow of its preimage is
/// below the precision floor.
CohomologyDims cohomologyDims(const std::vector<ComplexDegreeWindow>& degrees);

}  // namespace tatedr
