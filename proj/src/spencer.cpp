#include "tatedr/spencer.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tatedr/errors.hpp"

namespace tatedr {

namespace {

/// Strictly increasing index tuples in {1..n} of each length, lexicographic;
/// the shared basis order of every exterior-power bookkeeping in the library.
std::vector<std::vector<std::vector<int>>> increasingTuples(int n) {
    std::vector<std::vector<std::vector<int>>> out(static_cast<std::size_t>(n + 1));
    out[0] = {{}};
    for (int k = 1; k <= n; ++k) {
        for (const std::vector<int>& base : out[static_cast<std::size_t>(k - 1)]) {
            const int lo = base.empty() ? 1 : base.back() + 1;
            for (int j = lo; j <= n; ++j) {
                std::vector<int> next = base;
                next.push_back(j);
                out[static_cast<std::size_t>(k)].push_back(std::move(next));
            }
        }
    }
    return out;
}

int tuplePosition(const std::vector<std::vector<int>>& list, const std::vector<int>& f) {
    return static_cast<int>(std::find(list.begin(), list.end(), f) - list.begin());
}

bool negligibleAt(const LaurentScalar& v, int floor) {
    return v.zeroStatus() != ZeroStatus::NonZero || v.valuation().value >= floor;
}

std::pair<int, int> firstDeviation(const ScalarMatrix& a, const ScalarMatrix& b, int floor) {
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (!negligibleAt(a.at(i, j) - b.at(i, j), floor)) return {i, j};
        }
    }
    return {-1, -1};
}

int floorClamped(const ScalarMatrix& m, int prec) { return std::min(m.precisionFloor(), prec); }

}  // namespace

SpencerComplex buildSpencer(int n, int prec) {
    if (n < 1 || n > 3) throw std::invalid_argument("Spencer complexes are built for 1 to 3 variables");

    SpencerComplex out;
    out.varCount = n;
    out.subsets = increasingTuples(n);
    for (const auto& level : out.subsets) out.ranks.push_back(static_cast<int>(level.size()));

    for (int k = 1; k <= n; ++k) {
        const auto& domain = out.subsets[static_cast<std::size_t>(k)];
        const auto& codomain = out.subsets[static_cast<std::size_t>(k - 1)];
        std::vector<std::vector<WeylOperator>> delta(
            domain.size(), std::vector<WeylOperator>(codomain.size(), WeylOperator::zero(n, prec)));
        for (std::size_t i = 0; i < domain.size(); ++i) {
            const std::vector<int>& tuple = domain[i];
            for (std::size_t j = 0; j < tuple.size(); ++j) {
                std::vector<int> rest = tuple;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                const int col = tuplePosition(codomain, rest);
                const WeylOperator d = WeylOperator::derivation(tuple[j], n, prec);
                delta[i][static_cast<std::size_t>(col)] = (j % 2 == 0) ? d : -d;
            }
        }
        out.differentials.push_back(std::move(delta));
    }

    // Successive maps compose by right multiplication, so the composite's
    // matrix is the product with the first map's entries on the left. Every
    // entry must cancel to the exact zero operator.
    for (std::size_t k = 1; k < out.differentials.size(); ++k) {
        const auto& first = out.differentials[k];       // degree -(k+1) -> -k
        const auto& second = out.differentials[k - 1];  // degree -k -> -(k-1)
        for (std::size_t i = 0; i < first.size(); ++i) {
            for (std::size_t l = 0; l < second[0].size(); ++l) {
                WeylOperator acc = WeylOperator::zero(n, prec);
                for (std::size_t mid = 0; mid < second.size(); ++mid)
                    acc = acc + first[i][mid] * second[mid][l];
                if (acc.zeroStatus() != ZeroStatus::Zero)
                    throw MathError("Spencer differentials fail to compose to zero");
            }
        }
    }
    return out;
}

ScalarMatrix actionMatrix(const WeylOperator& op, const ConnectionModule& m, int domainWindow,
                          int codomainWindow) {
    if (op.varCount() != 1)
        throw std::invalid_argument("operator and one-variable module disagree on variable count");
    if (domainWindow < 0 || codomainWindow < 0)
        throw WindowTooSmallError("section windows must be nonnegative");
    const int r = m.rank();
    const int p = m.tPrecision();
    ScalarMatrix out((codomainWindow + 1) * r, (domainWindow + 1) * r, p);

    for (int a = 0; a <= domainWindow; ++a) {
        for (int c = 0; c < r; ++c) {
            const int col = a * r + c;
            std::vector<TateElement> section(static_cast<std::size_t>(r), TateElement::zero(1, p));
            section[static_cast<std::size_t>(c)] =
                TateElement::monomial(MultiIndex{a}, LaurentScalar::one(p), 1);
            std::vector<TateElement> acc(static_cast<std::size_t>(r), TateElement::zero(1, p));
            op.forEachTerm([&](const MultiIndex& alpha, const TateElement& coeff) {
                std::vector<TateElement> v = section;
                for (int it = 0; it < alpha[0]; ++it) {
                    std::vector<TateElement> next(static_cast<std::size_t>(r),
                                                  TateElement::zero(1, p));
                    for (int i = 0; i < r; ++i) {
                        next[static_cast<std::size_t>(i)] =
                            v[static_cast<std::size_t>(i)].derivative(1);
                        for (int j = 0; j < r; ++j)
                            next[static_cast<std::size_t>(i)] =
                                next[static_cast<std::size_t>(i)] +
                                m.entry(i, j) * v[static_cast<std::size_t>(j)];
                    }
                    v = std::move(next);
                }
                for (int i = 0; i < r; ++i)
                    acc[static_cast<std::size_t>(i)] =
                        acc[static_cast<std::size_t>(i)] + coeff * v[static_cast<std::size_t>(i)];
            });
            for (int i = 0; i < r; ++i) {
                acc[static_cast<std::size_t>(i)].forEachTerm(
                    [&](const MultiIndex& beta, const LaurentScalar& s) {
                        if (beta[0] > codomainWindow) {
                            if (s.zeroStatus() != ZeroStatus::Zero)
                                throw WindowTooSmallError(
                                    "operator action overflows the codomain section window");
                            return;
                        }
                        out.accumulate(beta[0] * r + i, col, s);
                    });
            }
        }
    }
    return out;
}

ScalarMatrix actionMatrix(const WeylOperator& op, const DiagonalConnection& m, int domainWindow,
                          int codomainWindow) {
    const int n = m.varCount();
    if (op.varCount() != n)
        throw std::invalid_argument("operator and module disagree on variable count");
    if (domainWindow < 0 || codomainWindow < 0)
        throw WindowTooSmallError("section windows must be nonnegative");
    const int p = m.tPrecision();

    const auto boxDim = [n](int window) {
        int d = 1;
        for (int i = 0; i < n; ++i) d *= window + 1;
        return d;
    };
    const auto boxIdx = [n](const MultiIndex& alpha, int window) {
        int idx = 0;
        for (int i = n - 1; i >= 0; --i) idx = idx * (window + 1) + alpha[static_cast<std::size_t>(i)];
        return idx;
    };

    ScalarMatrix out(boxDim(codomainWindow), boxDim(domainWindow), p);
    MultiIndex alpha(static_cast<std::size_t>(n), 0);
    for (int col = 0; col < out.cols(); ++col) {
        TateElement section = TateElement::monomial(alpha, LaurentScalar::one(p), n);
        TateElement acc = TateElement::zero(n, p);
        op.forEachTerm([&](const MultiIndex& dExp, const TateElement& coeff) {
            TateElement v = section;
            for (int i = 1; i <= n; ++i) {
                for (int it = 0; it < dExp[static_cast<std::size_t>(i - 1)]; ++it)
                    v = v.derivative(i) + v.scaledBy(m.coefficient(i));
            }
            acc = acc + coeff * v;
        });
        acc.forEachTerm([&](const MultiIndex& beta, const LaurentScalar& s) {
            for (int i = 0; i < n; ++i) {
                if (beta[static_cast<std::size_t>(i)] > codomainWindow) {
                    if (s.zeroStatus() != ZeroStatus::Zero)
                        throw WindowTooSmallError(
                            "operator action overflows the codomain section window");
                    return;
                }
            }
            out.accumulate(boxIdx(beta, codomainWindow), col, s);
        });
        for (int i = 0; i < n; ++i) {
            if (++alpha[static_cast<std::size_t>(i)] <= domainWindow) break;
            alpha[static_cast<std::size_t>(i)] = 0;
        }
    }
    return out;
}

namespace {

SpencerDrReport compareAgainstDr(const TruncatedComplex& dr, const std::vector<ScalarMatrix>& hom,
                                 int varCount, int window, int prec) {
    SpencerDrReport report;
    report.varCount = varCount;
    report.window = window;
    report.degreesCompared = static_cast<int>(hom.size());
    report.equal = true;
    for (std::size_t k = 0; k < hom.size(); ++k) {
        const ScalarMatrix& a = dr.differentials[k];
        const ScalarMatrix& b = hom[k];
        const int floor = std::min(floorClamped(a, prec), floorClamped(b, prec));
        const auto [i, j] = firstDeviation(a, b, floor);
        if (i >= 0) {
            report.equal = false;
            report.offendingEntry = "degree " + std::to_string(k) + ", row " +
                                    dr.columnLabels[k + 1][static_cast<std::size_t>(i)] +
                                    ", column " +
                                    dr.columnLabels[k][static_cast<std::size_t>(j)];
            return report;
        }
    }
    return report;
}

}  // namespace

SpencerDrReport homSpencerEqualsDr(const ConnectionModule& m, int window) {
    if (window < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const TruncatedComplex dr = buildDrComplex(m, window);
    const SpencerComplex sp = buildSpencer(1, m.tPrecision());
    const int growth = m.coefficientDegree();
    const ScalarMatrix hom =
        actionMatrix(sp.differentials[0][0][0], m, window, window + growth);
    return compareAgainstDr(dr, {hom}, 1, window, m.tPrecision());
}

SpencerDrReport homSpencerEqualsDr(const DiagonalConnection& m, int window) {
    if (window < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const int n = m.varCount();
    const int p = m.tPrecision();
    const TruncatedComplex dr = buildDrComplex(m, window);
    const SpencerComplex sp = buildSpencer(n, p);

    int monoDim = 1;
    for (int i = 0; i < n; ++i) monoDim *= window + 1;

    std::vector<ScalarMatrix> hom;
    for (int k = 0; k < n; ++k) {
        const auto& delta = sp.differentials[static_cast<std::size_t>(k)];
        const int rowBlocks = sp.ranks[static_cast<std::size_t>(k + 1)];
        const int colBlocks = sp.ranks[static_cast<std::size_t>(k)];
        ScalarMatrix h(rowBlocks * monoDim, colBlocks * monoDim, p);
        for (int i = 0; i < rowBlocks; ++i) {
            for (int j = 0; j < colBlocks; ++j) {
                const WeylOperator& entry = delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (entry.zeroStatus() == ZeroStatus::Zero) continue;
                const ScalarMatrix block = actionMatrix(entry, m, window, window);
                for (int r = 0; r < monoDim; ++r) {
                    for (int c = 0; c < monoDim; ++c) {
                        const LaurentScalar& v = block.at(r, c);
                        if (v.zeroStatus() == ZeroStatus::Zero && v.isExact()) continue;
                        h.set(i * monoDim + r, j * monoDim + c, v);
                    }
                }
            }
        }
        hom.push_back(std::move(h));
    }
    return compareAgainstDr(dr, hom, n, window, p);
}

SpencerDrReport homSpencerEqualsDr(const CyclicModule& m, int window) {
    return homSpencerEqualsDr(cyclicToConnection(m), window);
}

namespace {

/// Basis bookkeeping for the operator ring truncated to x-degree <= X and
/// d-degree <= B in each variable: monomial pairs (a, b) with the x-part
/// fastest, least index first within each part.
struct OperatorBox {
    int n;
    int xWindow;
    int dWindow;

    int xDim() const {
        int d = 1;
        for (int i = 0; i < n; ++i) d *= xWindow + 1;
        return d;
    }
    int dDim() const {
        int d = 1;
        for (int i = 0; i < n; ++i) d *= dWindow + 1;
        return d;
    }
    int dim() const { return xDim() * dDim(); }

    int index(const MultiIndex& a, const MultiIndex& b) const {
        int bi = 0;
        for (int i = n - 1; i >= 0; --i) bi = bi * (dWindow + 1) + b[static_cast<std::size_t>(i)];
        int ai = 0;
        for (int i = n - 1; i >= 0; --i) ai = ai * (xWindow + 1) + a[static_cast<std::size_t>(i)];
        return bi * xDim() + ai;
    }

    bool step(MultiIndex& a, MultiIndex& b) const {
        for (int i = 0; i < n; ++i) {
            if (++a[static_cast<std::size_t>(i)] <= xWindow) return true;
            a[static_cast<std::size_t>(i)] = 0;
        }
        for (int i = 0; i < n; ++i) {
            if (++b[static_cast<std::size_t>(i)] <= dWindow) return true;
            b[static_cast<std::size_t>(i)] = 0;
        }
        return false;
    }
};

/// Matrix of the augmentation onto polynomial sections: x^a d^b acts on the
/// constant section, so it lands on x^a when b = 0 and dies otherwise.
ScalarMatrix augmentationMatrix(const OperatorBox& box, int prec) {
    ScalarMatrix out(box.xDim(), box.dim(), prec);
    MultiIndex a(static_cast<std::size_t>(box.n), 0);
    const MultiIndex zero(static_cast<std::size_t>(box.n), 0);
    for (int row = 0; row < box.xDim(); ++row) {
        out.set(row, box.index(a, zero), LaurentScalar::one(prec));
        for (int i = 0; i < box.n; ++i) {
            if (++a[static_cast<std::size_t>(i)] <= box.xWindow) break;
            a[static_cast<std::size_t>(i)] = 0;
        }
    }
    return out;
}

/// Matrix of the Spencer differential from degree -k at (X, B) into degree
/// -(k-1) at (X, B+1): right multiplication by d_i only shifts the d-part,
/// so the codomain window genuinely contains every image monomial.
ScalarMatrix spencerDeltaMatrix(const std::vector<std::vector<std::vector<int>>>& subsets, int k,
                                const OperatorBox& dom, int prec) {
    const OperatorBox cod{dom.n, dom.xWindow, dom.dWindow + 1};
    const auto& domTuples = subsets[static_cast<std::size_t>(k)];
    const auto& codTuples = subsets[static_cast<std::size_t>(k - 1)];
    ScalarMatrix out(static_cast<int>(codTuples.size()) * cod.dim(),
                     static_cast<int>(domTuples.size()) * dom.dim(), prec);
    for (std::size_t f = 0; f < domTuples.size(); ++f) {
        const std::vector<int>& tuple = domTuples[f];
        MultiIndex a(static_cast<std::size_t>(dom.n), 0);
        MultiIndex b(static_cast<std::size_t>(dom.n), 0);
        do {
            const int col = static_cast<int>(f) * dom.dim() + dom.index(a, b);
            for (std::size_t j = 0; j < tuple.size(); ++j) {
                std::vector<int> rest = tuple;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                const int block = tuplePosition(codTuples, rest);
                MultiIndex shifted = b;
                ++shifted[static_cast<std::size_t>(tuple[j] - 1)];
                out.set(block * cod.dim() + cod.index(a, shifted), col,
                        LaurentScalar::fromLong(j % 2 == 0 ? 1 : -1, prec));
            }
        } while (dom.step(a, b));
    }
    return out;
}

/// Marks which rows of a (X, B+1)-codomain lie inside the (X, B) window.
std::vector<char> dWindowMask(const std::vector<std::vector<std::vector<int>>>& subsets, int k,
                              const OperatorBox& dom) {
    const OperatorBox cod{dom.n, dom.xWindow, dom.dWindow + 1};
    const int blocks = static_cast<int>(subsets[static_cast<std::size_t>(k)].size());
    std::vector<char> mask(static_cast<std::size_t>(blocks * cod.dim()), 0);
    for (int blk = 0; blk < blocks; ++blk) {
        MultiIndex a(static_cast<std::size_t>(cod.n), 0);
        MultiIndex b(static_cast<std::size_t>(cod.n), 0);
        do {
            bool inside = true;
            for (int i = 0; i < cod.n; ++i) inside = inside && b[static_cast<std::size_t>(i)] <= dom.dWindow;
            if (inside) mask[static_cast<std::size_t>(blk * cod.dim() + cod.index(a, b))] = 1;
        } while (cod.step(a, b));
    }
    return mask;
}

}  // namespace

ResolutionReport resolutionCheckTruncated(int n, int window, int prec) {
    if (n < 1 || n > 2)
        throw std::invalid_argument("truncated resolution checks run in one or two variables");
    if (window < 1)
        throw WindowTooSmallError("resolution checks need d-degree at least 1 to see the differentials");

    const auto subsets = increasingTuples(n);
    const OperatorBox box{n, window, window};

    std::vector<ComplexDegreeWindow> degrees;
    {
        // Sections: everything is a cycle; the augmentation should hit all of it.
        ComplexDegreeWindow deg;
        deg.kernelMap = ScalarMatrix(0, box.xDim(), prec);
        deg.hasImage = true;
        deg.imageMap = augmentationMatrix(box, prec);
        deg.imageRowInWindow.assign(static_cast<std::size_t>(box.xDim()), 1);
        degrees.push_back(std::move(deg));
    }
    {
        // Degree 0 term: kernel of the augmentation against the first differential.
        ComplexDegreeWindow deg;
        deg.kernelMap = augmentationMatrix(box, prec);
        deg.hasImage = true;
        deg.imageMap = spencerDeltaMatrix(subsets, 1, box, prec);
        deg.imageRowInWindow = dWindowMask(subsets, 0, box);
        degrees.push_back(std::move(deg));
    }
    for (int k = 2; k <= n; ++k) {
        ComplexDegreeWindow deg;
        deg.kernelMap = spencerDeltaMatrix(subsets, k - 1, box, prec);
        deg.hasImage = true;
        deg.imageMap = spencerDeltaMatrix(subsets, k, box, prec);
        deg.imageRowInWindow = dWindowMask(subsets, k - 1, box);
        degrees.push_back(std::move(deg));
    }
    {
        // Leftmost term: the final differential must be injective on the window.
        ComplexDegreeWindow deg;
        deg.kernelMap = spencerDeltaMatrix(subsets, n, box, prec);
        degrees.push_back(std::move(deg));
    }

    const CohomologyDims dims = cohomologyDims(degrees);
    ResolutionReport report;
    report.varCount = n;
    report.window = window;
    report.homologyDims = dims.dims;
    report.reliable = dims.reliable;
    report.augmentationSurjective = !dims.dims.empty() && dims.dims[0] == 0;
    report.exact = true;
    for (const int d : dims.dims) report.exact = report.exact && d == 0;
    report.exact = report.exact && !dims.dims.empty();
    return report;
}

}  // namespace tatedr
