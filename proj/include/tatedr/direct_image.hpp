#pragma once

#include <array>
#include <string>
#include <vector>

#include "tatedr/connection.hpp"
#include "tatedr/groebner.hpp"
#include "tatedr/matrix.hpp"
#include "tatedr/weyl.hpp"

namespace tatedr {

/// Closed coordinate embedding of a polydisc into a larger one: the source is
/// cut out by the vanishing of the last (ambient - source) coordinates.
struct EmbeddingData {
    int sourceDim = 1;
    int ambientDim = 2;

    EmbeddingData(int source, int ambient);
    int codimension() const { return ambientDim - sourceDim; }
};

/// Presentation of the direct image: the source relations re-read in the
/// ambient Weyl algebra together with the cut-out coordinates x_{r+1}..x_n.
/// The quotient's underlying space is the source module with one adjoined
/// free derivation tail per cut-out coordinate.
FilteredPresentation pushforwardPresentation(const std::vector<ExactWeyl>& rels, const EmbeddingData& e);
FilteredPresentation pushforwardPresentation(const std::vector<WeylOperator>& rels, const EmbeddingData& e);

/// Characteristic-variety dimension of the direct image from that of the
/// source: each cut-out coordinate contributes one to the dimension. The
/// value -1 (zero module) is passed through unchanged.
int transportFiltrationDim(int sourceCharDim, const EmbeddingData& e);

/// Relation-wise operator transpose: converts a left presentation into the
/// corresponding right presentation (and back; applying it twice is the
/// identity).
std::vector<WeylOperator> sideChange(const std::vector<WeylOperator>& rels);
std::vector<ExactWeyl> sideChange(const std::vector<ExactWeyl>& rels);

/// Rank-one module on an n-variable polydisc whose i-th derivation acts as
/// f |-> df/dx_i + lambda_i * f for a constant scalar lambda_i; the
/// commuting-action requirement is automatic for constants.
class DiagonalConnection {
public:
    explicit DiagonalConnection(std::vector<LaurentScalar> lambda);
    static DiagonalConnection trivial(int varCount, int prec = kDefaultTPrecision);

    int varCount() const { return static_cast<int>(lambda_.size()); }
    int tPrecision() const { return prec_; }
    /// Coefficient of the i-th derivation (1-based).
    const LaurentScalar& coefficient(int i) const;

private:
    std::vector<LaurentScalar> lambda_;
    int prec_;
};

/// Truncated model of the direct image of a one-variable connection module
/// along {x_2 = 0}: the underlying space is the source module with a free
/// adjoined tail of powers of the second derivation. The first derivation
/// acts through the connection, the second shifts the tail up, and the
/// cut-out coordinate differentiates the tail (with a minus sign).
class PushforwardModule {
public:
    explicit PushforwardModule(ConnectionModule source) : source_(std::move(source)) {}

    const ConnectionModule& source() const { return source_; }
    int rank() const { return source_.rank(); }
    int tPrecision() const { return source_.tPrecision(); }
    int coefficientDegree() const { return source_.coefficientDegree(); }

private:
    ConnectionModule source_;
};

/// A truncated de Rham complex: differentials[k] is the matrix of the
/// degree-k differential from the degree-k window to an enlarged
/// degree-(k+1) window, so consecutive matrices compose. columnLabels[k]
/// names the degree-k basis (monomial, adjoined-tail power, component, form
/// index); labels for the final codomain are at index degreeCount().
/// Construction verifies that each composite of consecutive differentials is
/// indistinguishable from zero at the working precision.
struct TruncatedComplex {
    int varCount = 1;
    int tPrecision = kDefaultTPrecision;
    std::vector<ScalarMatrix> differentials;
    std::vector<std::vector<std::string>> columnLabels;

    int degreeCount() const { return static_cast<int>(differentials.size()); }
};

TruncatedComplex buildDrComplex(const ConnectionModule& m, int window);
TruncatedComplex buildDrComplex(const DiagonalConnection& m, int window);
TruncatedComplex buildDrComplex(const PushforwardModule& m, int xWindow, int tailWindow);

/// Cohomology dimensions of the three-term complex of a PushforwardModule at
/// one (xWindow, tailWindow) truncation, estimated by the same
/// kernel-minus-visible-image window scheme the one-variable solver uses.
CohomologyDims pushforwardCohomology(const PushforwardModule& m, int xWindow, int tailWindow);

inline constexpr int kShiftWindowSmall = 6;
inline constexpr int kShiftWindowLarge = 9;

/// Comparison of the source cohomology (h^0, h^1) with the pushforward
/// cohomology (H^0, H^1, H^2), which should be the source shifted up by the
/// codimension (and H^0 = 0). Both sides are evaluated at two fixed matched
/// truncations: window w together with working precision clamped to w, for
/// w = kShiftWindowSmall and kShiftWindowLarge.
struct ShiftCheckReport {
    std::array<int, 2> windows{kShiftWindowSmall, kShiftWindowLarge};
    std::array<std::array<int, 2>, 2> sourceDims{};  // per truncation: (h^0, h^1)
    std::array<std::array<int, 3>, 2> targetDims{};  // per truncation: (H^0, H^1, H^2)
    bool reliable = true;     // every rank decision was precision-safe
    bool stabilized = false;  // the two truncations agreed with each other
    bool agree = false;       // stabilized and the shift equality holds at both
};

ShiftCheckReport drShiftCheck(const ConnectionModule& source, const EmbeddingData& e);
ShiftCheckReport drShiftCheck(const CyclicModule& source, const EmbeddingData& e);

/// Mechanical check that wedging with the conormal form (the degree-raising
/// map alpha |-> alpha wedge dx_2 into the tail-zero part of the direct
/// image) is an injective map of complexes: it must commute with the two
/// differentials entrywise at the working precision.
struct ChainMapReport {
    bool commutes = false;
    bool injective = false;
    std::string offendingEntry;  // first failing entry, empty when all checks pass

    bool holds() const { return commutes && injective; }
};

ChainMapReport chainMapVerify(const ConnectionModule& source, const EmbeddingData& e, int window);

/// Mechanical check that the cokernel of the wedge map is null-homotopic:
/// on each degree t of the cokernel complex, delta h + h delta equals the
/// identity, where h extracts the tail-lowered coefficient of the dx_2 part
/// with sign (-1)^(t+1). `signPinned` certifies the degree-1 convention:
/// h sends a pure tail term  (d_2 beta) dx_2  to +beta.
struct HomotopyReport {
    std::array<bool, 3> identityAtDegree{};
    bool signPinned = false;
    bool holds = false;
    std::string offendingEntry;
};

HomotopyReport homotopyVerify(const ConnectionModule& source, const EmbeddingData& e, int xWindow,
                              int tailWindow);

}  // namespace tatedr
