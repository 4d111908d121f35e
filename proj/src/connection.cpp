#include "tatedr/connection.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "tatedr/errors.hpp"

namespace tatedr {

namespace {

int basisIndex(int degree, int component, int rank) { return degree * rank + component; }

}  // namespace

ConnectionModule::ConnectionModule(std::vector<std::vector<TateElement>> matrix)
    : rank_(static_cast<int>(matrix.size())), prec_(kDefaultTPrecision), a_(std::move(matrix)) {
    for (const auto& row : a_) {
        if (static_cast<int>(row.size()) != rank_) throw std::invalid_argument("connection matrix must be square");
        for (const TateElement& e : row) {
            if (e.varCount() != 1) throw std::invalid_argument("connection entries must be one-variable elements");
            prec_ = std::min(prec_, e.tPrecision());
        }
    }
}

ConnectionModule ConnectionModule::trivial(int rank, int prec) {
    std::vector<std::vector<TateElement>> m(static_cast<std::size_t>(rank),
                                            std::vector<TateElement>(static_cast<std::size_t>(rank),
                                                                     TateElement::zero(1, prec)));
    return ConnectionModule(std::move(m));
}

ConnectionModule ConnectionModule::scalar(const LaurentScalar& lambda) {
    return ConnectionModule({{TateElement::fromScalar(lambda, 1)}});
}

int ConnectionModule::coefficientDegree() const {
    int d = 0;
    for (const auto& row : a_) {
        for (const TateElement& e : row) d = std::max(d, e.maxDegree(1));
    }
    return d;
}

ConnectionModule ConnectionModule::clampedTo(int prec) const {
    ConnectionModule out = *this;
    out.prec_ = std::min(out.prec_, prec);
    out.spectralCache_.reset();
    return out;
}

ScalarMatrix connectionMatrix(const ConnectionModule& m, int domainDeg, int codomainDeg) {
    const int r = m.rank();
    const int p = m.tPrecision();
    ScalarMatrix out(r * (codomainDeg + 1), r * (domainDeg + 1), p);
    int entryFloor = kInfValuation;
    for (int i = 0; i < r; ++i) {
        for (int c = 0; c < r; ++c) entryFloor = std::min(entryFloor, m.entry(i, c).absolutePrecision());
    }
    for (int j = 0; j <= domainDeg; ++j) {
        for (int c = 0; c < r; ++c) {
            const int col = basisIndex(j, c, r);
            if (j > 0) out.accumulate(basisIndex(j - 1, c, r), col, LaurentScalar::fromLong(j, p));
            for (int i = 0; i < r; ++i) {
                m.entry(i, c).forEachTerm([&](const MultiIndex& alpha, const LaurentScalar& s) {
                    if (j + alpha[0] <= codomainDeg) out.accumulate(basisIndex(j + alpha[0], i, r), col, s);
                });
            }
        }
    }
    // The solver answers questions mod t^p: clamp the zero threshold to the
    // working precision even when every entry happens to be exact, so that
    // e.g. truncated-exponential kernel vectors are recognized.
    out.overridePrecisionFloor(std::min({out.precisionFloor(), entryFloor, p}));
    return out;
}

CohomologyDims connectionWindowDims(const ConnectionModule& m, int reportDeg) {
    const int r = m.rank();
    const int grow = m.coefficientDegree();
    const int extended = reportDeg + (m.tPrecision() + 2) * (grow + 1);

    ComplexDegreeWindow deg0;
    deg0.kernelMap = connectionMatrix(m, reportDeg, reportDeg + grow);
    deg0.hasImage = false;

    ComplexDegreeWindow deg1;
    deg1.kernelMap = ScalarMatrix(0, r * (reportDeg + 1), m.tPrecision());
    deg1.hasImage = true;
    deg1.imageMap = connectionMatrix(m, extended, extended + grow);
    deg1.imageRowInWindow.assign(static_cast<std::size_t>(r * (extended + grow + 1)), 0);
    for (int j = 0; j <= reportDeg; ++j) {
        for (int c = 0; c < r; ++c) deg1.imageRowInWindow[static_cast<std::size_t>(basisIndex(j, c, r))] = 1;
    }
    return cohomologyDims({deg0, deg1});
}

namespace {

struct WindowRun {
    std::array<int, 2> dims{0, 0};
    int window = 0;
    bool stabilized = false;
    bool reliable = false;
    std::vector<std::array<int, 2>> trajectory;
};

WindowRun runDoublingWindows(const std::function<CohomologyDims(int)>& dimsAt, int degreeStart, int degreeMax) {
    WindowRun out;
    std::optional<std::array<int, 2>> prev;
    bool lastReliable = false;
    bool prevReliable = false;
    for (int window = degreeStart;; window *= 2) {
        CohomologyDims cd = dimsAt(window);
        std::array<int, 2> dims{cd.dims[0], cd.dims[1]};
        out.trajectory.push_back(dims);
        out.window = window;
        out.dims = dims;
        prevReliable = lastReliable;
        lastReliable = cd.reliable;
        if (prev && *prev == dims) {
            out.stabilized = true;
            break;
        }
        prev = dims;
        if (window * 2 > degreeMax) break;
    }
    out.reliable = out.stabilized && lastReliable && prevReliable;
    return out;
}

}  // namespace

DrReport drCohomology(const ConnectionModule& m, int degreeStart, int degreeMax) {
    DrReport report;
    report.tPrecision = m.tPrecision();
    if (m.rank() == 0) {
        report.degreeWindow = degreeStart;
        report.stabilized = true;
        report.reliable = true;
        report.trajectory = {{0, 0}};
        return report;
    }
    WindowRun run = runDoublingWindows([&](int d) { return connectionWindowDims(m, d); }, degreeStart, degreeMax);
    report.h0 = run.dims[0];
    report.h1 = run.dims[1];
    report.degreeWindow = run.window;
    report.stabilized = run.stabilized;
    report.reliable = run.reliable;
    report.trajectory = std::move(run.trajectory);
    return report;
}

DrReport drCohomology(const CyclicModule& m, int degreeStart, int degreeMax) {
    return drCohomology(cyclicToConnection(m), degreeStart, degreeMax);
}

ConnectionModule cyclicToConnection(const CyclicModule& m) {
    const WeylOperator& relation = m.relation;
    if (relation.varCount() != 1) throw std::invalid_argument("cyclic modules live over one variable");
    const int r = relation.order();
    if (r < 0) throw std::invalid_argument("cyclic relation must be nonzero");
    const int p = relation.tPrecision();

    TateElement lead = relation.coefficientOf(MultiIndex{r});
    std::optional<TateElement> leadInverse;
    try {
        leadInverse = lead.invertUnit();
    } catch (const NotAUnitError&) {
        throw LeadingCoefficientNotUnitError(
            "leading coefficient of the relation is not a unit of the coefficient algebra");
    }

    std::vector<std::vector<TateElement>> a(static_cast<std::size_t>(r),
                                            std::vector<TateElement>(static_cast<std::size_t>(r),
                                                                     TateElement::zero(1, p)));
    for (int i = 0; i + 1 < r; ++i) {
        a[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = TateElement::constant(Rational(-1), 1, p);
    }
    for (int i = 0; i < r; ++i) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(r - 1)] =
            *leadInverse * relation.coefficientOf(MultiIndex{i});
    }
    return ConnectionModule(std::move(a));
}

SpectralReport spectralRadiusEstimate(const ConnectionModule& m, int kMax) {
    if (kMax < 1) throw std::invalid_argument("spectral estimation needs at least one iterate");
    if (m.spectralCache_ && m.spectralCache_->kMax == kMax) return *m.spectralCache_;

    const int r = m.rank();
    const int p = m.tPrecision();
    SpectralReport report;
    report.kMax = kMax;

    int normA = kInfValuation;
    bool integral = true;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            ValuationBound v = m.entry(i, j).gaussNorm();
            if (m.entry(i, j).zeroStatus() != ZeroStatus::Zero) normA = std::min(normA, v.value);
            if (v.value < 0) integral = false;
        }
    }
    report.guaranteedLog = std::min(0, normA);

    std::vector<std::vector<TateElement>> b(static_cast<std::size_t>(r),
                                            std::vector<TateElement>(static_cast<std::size_t>(r),
                                                                     TateElement::zero(1, p)));
    for (int i = 0; i < r; ++i) b[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = TateElement::constant(Rational(1), 1, p);

    std::vector<char> certified;
    for (int k = 1; k <= kMax; ++k) {
        std::vector<std::vector<TateElement>> next(static_cast<std::size_t>(r),
                                                   std::vector<TateElement>(static_cast<std::size_t>(r),
                                                                            TateElement::zero(1, p)));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                TateElement acc = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].derivative(1);
                for (int l = 0; l < r; ++l) {
                    acc = acc + m.entry(i, l) * b[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
                }
                next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
            }
        }
        b = std::move(next);

        int minVal = kInfValuation;
        bool minCertified = false;
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                const TateElement& e = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (e.zeroStatus() == ZeroStatus::Zero) continue;
                ValuationBound v = e.gaussNorm();
                bool exactHere = e.zeroStatus() == ZeroStatus::NonZero && !v.isLowerBound;
                if (v.value < minVal) {
                    minVal = v.value;
                    minCertified = exactHere;
                } else if (v.value == minVal && exactHere) {
                    minCertified = true;
                }
            }
        }
        report.iterateValuations.push_back(minVal);
        certified.push_back(static_cast<char>(minCertified));
    }

    const std::vector<int>& vals = report.iterateValuations;
    report.observedSlope = rationalFromParts(vals.back(), kMax);

    bool allIteratesIntegral = std::all_of(vals.begin(), vals.end(), [](int v) { return v >= 0; });
    bool tailDecreasing = vals.back() < 0 && certified.back();
    for (std::size_t i = std::max<std::size_t>(1, vals.size() / 2); i < vals.size(); ++i) {
        if (!(vals[i] < vals[i - 1]) || !certified[i]) tailDecreasing = false;
    }
    if (integral && allIteratesIntegral) {
        report.verdict = SpectralVerdict::ModelCertified;
    } else if (tailDecreasing) {
        report.verdict = SpectralVerdict::NoModel;
    } else {
        report.verdict = SpectralVerdict::Inconclusive;
    }

    m.spectralCache_ = report;
    return report;
}

int ResidueConnection::coefficientDegree() const {
    int d = 0;
    for (const auto& row : matrix) {
        for (const QPoly& q : row) d = std::max(d, std::max(0, q.degree()));
    }
    return d;
}

ResidueConnection reduceModel(const ConnectionModule& m) {
    SpectralReport s = spectralRadiusEstimate(m, 12);
    if (s.verdict != SpectralVerdict::ModelCertified) {
        throw NoModelAvailableError("no integral model certified; cannot reduce to the residue field");
    }
    ResidueConnection out;
    out.rank = m.rank();
    out.matrix.assign(static_cast<std::size_t>(m.rank()),
                      std::vector<QPoly>(static_cast<std::size_t>(m.rank()), QPoly(Rational(0))));
    for (int i = 0; i < m.rank(); ++i) {
        for (int j = 0; j < m.rank(); ++j) {
            std::vector<Rational> coeffs(static_cast<std::size_t>(m.entry(i, j).maxDegree(1)) + 1, Rational(0));
            m.entry(i, j).forEachTerm([&](const MultiIndex& alpha, const LaurentScalar& s0) {
                coeffs[static_cast<std::size_t>(alpha[0])] = s0.coefficientAt(0);
            });
            out.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = QPoly::fromCoefficients(coeffs);
        }
    }
    return out;
}

namespace {

ScalarMatrix residueNablaMatrix(const ResidueConnection& c, int domainDeg, int codomainDeg) {
    const int r = c.rank;
    ScalarMatrix out(r * (codomainDeg + 1), r * (domainDeg + 1));
    for (int j = 0; j <= domainDeg; ++j) {
        for (int comp = 0; comp < r; ++comp) {
            const int col = basisIndex(j, comp, r);
            if (j > 0) out.accumulate(basisIndex(j - 1, comp, r), col, LaurentScalar::fromLong(j));
            for (int i = 0; i < r; ++i) {
                const QPoly& q = c.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(comp)];
                for (int d = 0; d <= q.degree(); ++d) {
                    if (sgn(q.coefficient(d)) == 0) continue;
                    if (j + d <= codomainDeg) {
                        out.accumulate(basisIndex(j + d, i, r), col, LaurentScalar::fromRational(q.coefficient(d)));
                    }
                }
            }
        }
    }
    return out;
}

CohomologyDims residueWindowDims(const ResidueConnection& c, int reportDeg) {
    const int r = c.rank;
    const int grow = c.coefficientDegree();
    const int extended = reportDeg + (kDefaultTPrecision + 2) * (grow + 1);

    ComplexDegreeWindow deg0;
    deg0.kernelMap = residueNablaMatrix(c, reportDeg, reportDeg + grow);
    deg0.hasImage = false;

    ComplexDegreeWindow deg1;
    deg1.kernelMap = ScalarMatrix(0, r * (reportDeg + 1));
    deg1.hasImage = true;
    deg1.imageMap = residueNablaMatrix(c, extended, extended + grow);
    deg1.imageRowInWindow.assign(static_cast<std::size_t>(r * (extended + grow + 1)), 0);
    for (int j = 0; j <= reportDeg; ++j) {
        for (int comp = 0; comp < r; ++comp) deg1.imageRowInWindow[static_cast<std::size_t>(basisIndex(j, comp, r))] = 1;
    }
    return cohomologyDims({deg0, deg1});
}

}  // namespace

ResidueDrReport eulerCharResidue(const ResidueConnection& c, int degreeStart, int degreeMax) {
    ResidueDrReport report;
    if (c.rank == 0) {
        report.degreeWindow = degreeStart;
        report.stabilized = true;
        report.trajectory = {{0, 0}};
        return report;
    }
    WindowRun run = runDoublingWindows([&](int d) { return residueWindowDims(c, d); }, degreeStart, degreeMax);
    report.h0 = run.dims[0];
    report.h1 = run.dims[1];
    report.degreeWindow = run.window;
    report.stabilized = run.stabilized;
    report.trajectory = std::move(run.trajectory);
    return report;
}

ChiTransferReport verifyChiTransfer(const ConnectionModule& m, int degreeStart, int degreeMax) {
    ChiTransferReport report;
    report.analytic = drCohomology(m, degreeStart, degreeMax);
    report.residue = eulerCharResidue(reduceModel(m), degreeStart, degreeMax);
    report.agree = report.analytic.stabilized && report.residue.stabilized &&
                   report.analytic.chi() == report.residue.chi();
    return report;
}

HatInvarianceReport hatInvarianceCheck(const CyclicModule& m, int degreeStart, int degreeMax) {
    HatInvarianceReport report;
    try {
        m.relation.invertUnit();
        report.unitRouteAvailable = true;
        report.completedVanishes = true;
    } catch (const NotAUnitError&) {
    }
    try {
        report.direct = drCohomology(cyclicToConnection(m), degreeStart, degreeMax);
        report.connectionRouteAvailable = true;
    } catch (const LeadingCoefficientNotUnitError&) {
    }
    if (!report.unitRouteAvailable && !report.connectionRouteAvailable) {
        throw InconclusiveRouteError(
            "relation is neither unit-certifiable nor convertible to a connection at this precision");
    }
    if (report.unitRouteAvailable && report.connectionRouteAvailable) {
        report.agree = (report.direct->h0 == 0 && report.direct->h1 == 0) == report.completedVanishes;
    } else {
        report.agree = true;
    }
    return report;
}

}  // namespace tatedr
