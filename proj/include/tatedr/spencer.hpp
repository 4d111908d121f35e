#pragma once

#include <string>
#include <vector>

#include "tatedr/connection.hpp"
#include "tatedr/direct_image.hpp"
#include "tatedr/matrix.hpp"
#include "tatedr/weyl.hpp"

namespace tatedr {

/// Spencer resolution of the structure module by free modules over the
/// operator ring: rank binom(n, k) in degree -k, differential given by right
/// multiplication by the coordinate derivations with alternating signs. In
/// the coordinate frame the derivations commute, so no bracket terms appear.
struct SpencerComplex {
    int varCount = 1;
    /// ranks[k] = rank of the degree -k term, k = 0..n.
    std::vector<int> ranks;
    /// subsets[k] lists the strictly increasing index tuples labelling the
    /// degree -k basis (theta_{i_1} ^ ... ^ theta_{i_k}), in lexicographic
    /// order; subsets[0] = { {} }.
    std::vector<std::vector<std::vector<int>>> subsets;
    /// differentials[k-1] maps degree -k to degree -(k-1). Entry [i][j] is
    /// the right-multiplication coefficient from domain basis element i to
    /// codomain basis element j, so composing two maps is the matrix product
    /// with the first map's entries on the left of each product.
    std::vector<std::vector<std::vector<WeylOperator>>> differentials;
};

/// Builds the resolution for 1 <= n <= 3. Every entry is +-d_i or zero; the
/// degree -1 -> 0 map is (d_1, ..., d_n), and in two variables the next map
/// is (-d_2, d_1). The constructor verifies symbolically that successive
/// differentials compose to the zero operator matrix — an exact identity in
/// the operator ring, not an at-precision statement — and throws MathError
/// if the cancellation ever fails.
SpencerComplex buildSpencer(int n, int prec = kDefaultTPrecision);

/// Matrix of the action of `op` on truncated polynomial sections of the
/// module, with derivations acting through the connection. Domain basis:
/// monomials of degree <= domainWindow per component (degree-major layout,
/// index = degree * rank + component), codomain likewise. Throws
/// WindowTooSmallError when the action overflows the codomain window with a
/// coefficient not certified zero.
ScalarMatrix actionMatrix(const WeylOperator& op, const ConnectionModule& m, int domainWindow,
                          int codomainWindow);

/// Same on the monomial box [0..window]^n of a diagonal module, with the
/// least-index-fastest monomial layout shared by the box complexes.
ScalarMatrix actionMatrix(const WeylOperator& op, const DiagonalConnection& m, int domainWindow,
                          int codomainWindow);

/// Result of comparing the truncated de Rham matrices of a module with the
/// matrices obtained by dualizing the Spencer differentials into
/// module-valued homomorphisms, under the basis identification sending dx_I
/// to the dual of theta_I. The two routes assemble their signs from
/// different formulas (wedge bookkeeping on one side, alternating positions
/// in the Spencer differential on the other), so entrywise agreement is a
/// genuine cross-check.
struct SpencerDrReport {
    int varCount = 1;
    int window = 0;
    int degreesCompared = 0;
    bool equal = false;
    /// "degree k, row <label>, column <label>" for the first mismatch.
    std::string offendingEntry;
};

SpencerDrReport homSpencerEqualsDr(const ConnectionModule& m, int window);
SpencerDrReport homSpencerEqualsDr(const DiagonalConnection& m, int window);
SpencerDrReport homSpencerEqualsDr(const CyclicModule& m, int window);

/// Exactness of the augmented complex Sp -> O -> 0 on truncated bases:
/// operators are truncated to x-degree <= window and d-degree <= window,
/// polynomial sections to degree <= window. homologyDims[0] is the cokernel
/// of the augmentation (surjectivity of the action on constants),
/// homologyDims[j] for j >= 1 the homology at the free term of rank
/// binom(n, j-1). Exactness within the window means every dimension is zero.
struct ResolutionReport {
    int varCount = 1;
    int window = 0;
    std::vector<int> homologyDims;
    bool augmentationSurjective = false;
    bool exact = false;
    bool reliable = true;
};

/// Requires 1 <= n <= 2 and window >= 1 (WindowTooSmallError below that:
/// with no d-degree headroom none of the differentials is visible).
ResolutionReport resolutionCheckTruncated(int n, int window, int prec = kDefaultTPrecision);

}  // namespace tatedr
