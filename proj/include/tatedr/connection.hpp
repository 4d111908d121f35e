#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tatedr/matrix.hpp"
#include "tatedr/ratfun.hpp"
#include "tatedr/weyl.hpp"

namespace tatedr {

/// Degree-window schedule shared by the cohomology solvers: start here and
/// double until two successive windows agree or the cap is passed.
inline constexpr int kDefaultDegreeStart = 8;
inline constexpr int kDefaultDegreeMax = 64;

enum class SpectralVerdict {
    /// A is integral and every computed iterate has norm <= 1: the unit-ball
    /// lattice is stable, so a model exists and the radius is <= 1.
    ModelCertified,
    /// Iterate norms grow geometrically through the tail: the local spectral
    /// radius already exceeds 1, so no bounded lattice can be stable.
    NoModel,
    Inconclusive,
};

/// Estimate of the spectral radius of the connection operator. Norms are
/// reported in log units v with |.| = |t|^v, so a LARGER exponent is a
/// SMALLER norm:  |t|^observedSlope <= radius <= |t|^guaranteedLog.
struct SpectralReport {
    int kMax = 0;
    /// min-entry valuation of the k-th iterate on the standard basis,
    /// k = 1..kMax; kInfValuation when the iterate vanishes.
    std::vector<int> iterateValuations;
    /// radius <= |t|^guaranteedLog via submultiplicativity of max(|d/dx|,|A|).
    int guaranteedLog = 0;
    /// tail slope v_kMax / kMax; the observed local radius is |t|^this.
    Rational observedSlope;
    SpectralVerdict verdict = SpectralVerdict::Inconclusive;
};

/// Free module K<x>^r with connection f |-> df/dx + A f in one variable.
/// Integrability is automatic in one variable, so any square A is admitted.
class ConnectionModule {
public:
    explicit ConnectionModule(std::vector<std::vector<TateElement>> matrix);
    static ConnectionModule trivial(int rank, int prec = kDefaultTPrecision);
    /// Rank one, A = (lambda).
    static ConnectionModule scalar(const LaurentScalar& lambda);

    int rank() const { return rank_; }
    int tPrecision() const { return prec_; }
    const TateElement& entry(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// Largest x-degree appearing in A: how much one application of the
    /// connection can raise polynomial degree.
    int coefficientDegree() const;

    /// Copy of this module whose working t-precision is lowered to `prec`
    /// (entries untouched). All solvers then answer questions modulo t^prec,
    /// which is how two runs at different truncation levels are compared.
    ConnectionModule clampedTo(int prec) const;

private:
    int rank_;
    int prec_;
    std::vector<std::vector<TateElement>> a_;
    mutable std::optional<SpectralReport> spectralCache_;

    friend SpectralReport spectralRadiusEstimate(const ConnectionModule& m, int kMax);
};

/// Cyclic module D_1 / D_1 * relation; the relation must be nonzero.
struct CyclicModule {
    WeylOperator relation;
};

/// Cohomology dimensions of the two-term complex M -> M.dx at the precision
/// the module carries. `stabilized` records that two successive degree
/// windows agreed; `trajectory` lists (h0, h1) at every window tried, so a
/// non-stabilized run shows how the dimensions were still moving.
struct DrReport {
    int h0 = 0;
    int h1 = 0;
    int tPrecision = kDefaultTPrecision;
    int degreeWindow = 0;
    bool stabilized = false;
    bool reliable = false;
    std::vector<std::array<int, 2>> trajectory;

    int chi() const { return h0 - h1; }
};

/// Companion realization of a cyclic module: rank = order of the relation,
/// sign convention fixed so that D_1/D_1(d - t^-1) maps to A = (-t^-1).
/// The leading coefficient must be a unit of the Tate algebra.
ConnectionModule cyclicToConnection(const CyclicModule& m);

/// Matrix of the connection differential f |-> df/dx + A f from polynomial
/// sections of degree <= domainDeg to sections of degree <= codomainDeg. The
/// codomain must cover domainDeg plus the coefficient-degree growth of A, so
/// the matrix is a genuine restriction of the connection (nothing projected
/// away); its zero threshold is clamped to the module's working precision.
/// Basis layout is degree-major: column/row index = degree * rank + component.
ScalarMatrix connectionMatrix(const ConnectionModule& m, int domainDeg, int codomainDeg);

/// Cohomology dimensions of the two-term complex at one fixed degree window:
/// the building block drCohomology runs over a doubling ladder of windows.
CohomologyDims connectionWindowDims(const ConnectionModule& m, int reportDeg);

DrReport drCohomology(const ConnectionModule& m, int degreeStart = kDefaultDegreeStart,
                      int degreeMax = kDefaultDegreeMax);
DrReport drCohomology(const CyclicModule& m, int degreeStart = kDefaultDegreeStart,
                      int degreeMax = kDefaultDegreeMax);

/// Iterates the connection on the standard basis and brackets the spectral
/// radius; the result is cached on the module. The verdict is an estimate
/// except where certification is possible (see SpectralVerdict).
SpectralReport spectralRadiusEstimate(const ConnectionModule& m, int kMax = 12);

/// Reduction of an integral model to the residue field: a connection
/// d/dx + Abar on k[x]^r over the affine line. Entries are polynomials in x
/// with exact rational coefficients.
struct ResidueConnection {
    int rank = 0;
    std::vector<std::vector<QPoly>> matrix;

    int coefficientDegree() const;
};

/// Requires a ModelCertified spectral verdict; throws NoModelAvailableError.
ResidueConnection reduceModel(const ConnectionModule& m);

/// Cohomology of d/dx + Abar on k[x]^r by the same degree-window protocol,
/// in exact rational arithmetic.
struct ResidueDrReport {
    int h0 = 0;
    int h1 = 0;
    int degreeWindow = 0;
    bool stabilized = false;
    std::vector<std::array<int, 2>> trajectory;

    int chi() const { return h0 - h1; }
};

ResidueDrReport eulerCharResidue(const ResidueConnection& c, int degreeStart = kDefaultDegreeStart,
                                 int degreeMax = kDefaultDegreeMax);

/// Euler characteristic computed on both sides of the reduction: over K<x>
/// analytically and over k[x] after passing to the residue field. `agree` is
/// a falsifiable comparison, not an assumption.
struct ChiTransferReport {
    DrReport analytic;
    ResidueDrReport residue;
    bool agree = false;
};

ChiTransferReport verifyChiTransfer(const ConnectionModule& m, int degreeStart = kDefaultDegreeStart,
                                    int degreeMax = kDefaultDegreeMax);

/// Two routes to the cohomology of a cyclic module over the completed
/// operator ring: (a) companion conversion + direct solve; (b) if the
/// relation is a unit of the completed ring, the module is zero and both
/// cohomologies vanish. Reports every route that applies and whether they
/// agree; throws InconclusiveRouteError when neither applies.
struct HatInvarianceReport {
    bool connectionRouteAvailable = false;
    bool unitRouteAvailable = false;
    std::optional<DrReport> direct;
    bool completedVanishes = false;
    bool agree = false;
};

HatInvarianceReport hatInvarianceCheck(const CyclicModule& m, int degreeStart = kDefaultDegreeStart,
                                       int degreeMax = kDefaultDegreeMax);

}  // namespace tatedr
