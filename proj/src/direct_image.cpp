#include "tatedr/direct_image.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "tatedr/errors.hpp"
#include "tatedr/exact_weyl.hpp"

namespace tatedr {

EmbeddingData::EmbeddingData(int source, int ambient) : sourceDim(source), ambientDim(ambient) {
    if (source < 1 || source >= ambient)
        throw std::invalid_argument("embedding requires 1 <= source dimension < ambient dimension");
}

namespace {

/// Re-reads a source-variable operator in the ambient Weyl algebra: the first
/// sourceDim position/derivation slots keep their exponents, the adjoined
/// slots stay zero.
ExactWeyl embedRelation(const ExactWeyl& rel, int r, int n) {
    ExactWeyl out = ExactWeyl::zero(n);
    rel.forEachTerm([&](const MultiIndex& key, const RatFun& c) {
        MultiIndex wide(static_cast<std::size_t>(2 * n), 0);
        for (int i = 0; i < r; ++i) {
            wide[static_cast<std::size_t>(i)] = key[static_cast<std::size_t>(i)];
            wide[static_cast<std::size_t>(n + i)] = key[static_cast<std::size_t>(r + i)];
        }
        out = out + ExactWeyl::term(wide, c);
    });
    return out;
}

}  // namespace

FilteredPresentation pushforwardPresentation(const std::vector<ExactWeyl>& rels, const EmbeddingData& e) {
    for (const ExactWeyl& rel : rels) {
        if (rel.varCount() != e.sourceDim)
            throw std::invalid_argument("relation variable count must match the source dimension");
    }
    FilteredPresentation out;
    out.varCount = e.ambientDim;
    out.relations.reserve(rels.size() + static_cast<std::size_t>(e.codimension()));
    for (const ExactWeyl& rel : rels) out.relations.push_back(embedRelation(rel, e.sourceDim, e.ambientDim));
    for (int j = e.sourceDim + 1; j <= e.ambientDim; ++j)
        out.relations.push_back(ExactWeyl::x(j, e.ambientDim));
    return out;
}

FilteredPresentation pushforwardPresentation(const std::vector<WeylOperator>& rels, const EmbeddingData& e) {
    std::vector<ExactWeyl> exact;
    exact.reserve(rels.size());
    for (const WeylOperator& rel : rels) exact.push_back(exactFromTruncated(rel));
    return pushforwardPresentation(exact, e);
}

int transportFiltrationDim(int sourceCharDim, const EmbeddingData& e) {
    if (sourceCharDim == -1) return -1;  // the zero module pushes forward to the zero module
    if (sourceCharDim < 0 || sourceCharDim > 2 * e.sourceDim)
        throw std::invalid_argument("source characteristic dimension out of range");
    return sourceCharDim + e.codimension();
}

std::vector<WeylOperator> sideChange(const std::vector<WeylOperator>& rels) {
    std::vector<WeylOperator> out;
    out.reserve(rels.size());
    for (const WeylOperator& rel : rels) out.push_back(rel.transpose());
    return out;
}

std::vector<ExactWeyl> sideChange(const std::vector<ExactWeyl>& rels) {
    std::vector<ExactWeyl> out;
    out.reserve(rels.size());
    for (const ExactWeyl& rel : rels) out.push_back(rel.transpose());
    return out;
}

DiagonalConnection::DiagonalConnection(std::vector<LaurentScalar> lambda)
    : lambda_(std::move(lambda)), prec_(kDefaultTPrecision) {
    if (lambda_.empty()) throw std::invalid_argument("diagonal connection needs at least one variable");
    for (const LaurentScalar& s : lambda_) prec_ = std::min(prec_, s.cap());
}

DiagonalConnection DiagonalConnection::trivial(int varCount, int prec) {
    if (varCount < 1) throw std::invalid_argument("diagonal connection needs at least one variable");
    return DiagonalConnection(
        std::vector<LaurentScalar>(static_cast<std::size_t>(varCount), LaurentScalar::zero(prec)));
}

const LaurentScalar& DiagonalConnection::coefficient(int i) const {
    if (i < 1 || i > varCount()) throw IndexOutOfRangeError("derivation index out of range");
    return lambda_[static_cast<std::size_t>(i - 1)];
}

namespace {

// ---- Truncated bases of the pushforward model -----------------------------
//
// A basis vector is x_1^a d_2^b e_c with monomial degree a <= xWindow, tail
// power b <= tailWindow and component c < rank; the layout is degree-major,
// then tail, then component, so indices do not depend on the x window.

int pushDim(int xWindow, int tailWindow, int rank) { return (xWindow + 1) * (tailWindow + 1) * rank; }

int pushIdx(int a, int b, int c, int tailWindow, int rank) {
    return (a * (tailWindow + 1) + b) * rank + c;
}

int minEntryPrecision(const ConnectionModule& m) {
    int floor = kInfValuation;
    for (int i = 0; i < m.rank(); ++i) {
        for (int c = 0; c < m.rank(); ++c) floor = std::min(floor, m.entry(i, c).absolutePrecision());
    }
    return floor;
}

/// Clamps the matrix zero threshold to the module's working precision (the
/// solvers answer questions mod t^p even when every entry is exact).
void clampFloor(ScalarMatrix& out, const ConnectionModule& m) {
    out.overridePrecisionFloor(std::min({out.precisionFloor(), minEntryPrecision(m), m.tPrecision()}));
}

/// Accumulates sign * (first derivation acting on x^a d_2^b e_c) into column
/// `col`: the polynomial derivative drops the degree, the connection matrix
/// raises it by its coefficient degrees. Rows are resolved by
/// rowOf(degree, tail, component); a negative row index drops the term.
void addFirstDerivation(ScalarMatrix& out, const ConnectionModule& m, int col, int a, int b, int c,
                        int sign, const std::function<int(int, int, int)>& rowOf) {
    if (a > 0) {
        const int row = rowOf(a - 1, b, c);
        if (row >= 0) out.accumulate(row, col, LaurentScalar::fromLong(sign * a, m.tPrecision()));
    }
    for (int i = 0; i < m.rank(); ++i) {
        m.entry(i, c).forEachTerm([&](const MultiIndex& alpha, const LaurentScalar& s) {
            const int row = rowOf(a + alpha[0], b, i);
            if (row >= 0) out.accumulate(row, col, sign > 0 ? s : -s);
        });
    }
}

/// Degree-zero differential of the pushforward complex,
///   u |-> (d_1 u) dx_1 + (d_2 u) dx_2,
/// from the (X, B) window to the (Xc, Bc) window (dx_1 block first).
ScalarMatrix pushDelta0(const ConnectionModule& m, int X, int B, int Xc, int Bc) {
    const int r = m.rank();
    const int dcod = pushDim(Xc, Bc, r);
    ScalarMatrix out(2 * dcod, pushDim(X, B, r), m.tPrecision());
    const auto rowOf = [&](int a, int b, int c) {
        return (a <= Xc && b <= Bc) ? pushIdx(a, b, c, Bc, r) : -1;
    };
    for (int a = 0; a <= X; ++a) {
        for (int b = 0; b <= B; ++b) {
            for (int c = 0; c < r; ++c) {
                const int col = pushIdx(a, b, c, B, r);
                addFirstDerivation(out, m, col, a, b, c, +1, rowOf);
                if (a <= Xc && b + 1 <= Bc)
                    out.accumulate(dcod + pushIdx(a, b + 1, c, Bc, r), col, LaurentScalar::one(m.tPrecision()));
            }
        }
    }
    clampFloor(out, m);
    return out;
}

/// Degree-one differential of the pushforward complex,
///   alpha dx_1 + beta dx_2 |-> (d_1 beta - d_2 alpha) dx_1^dx_2,
/// from the (X, B) window (dx_1 block first) to the (Xc, Bc) window.
ScalarMatrix pushDelta1(const ConnectionModule& m, int X, int B, int Xc, int Bc) {
    const int r = m.rank();
    const int ddom = pushDim(X, B, r);
    ScalarMatrix out(pushDim(Xc, Bc, r), 2 * ddom, m.tPrecision());
    const auto rowOf = [&](int a, int b, int c) {
        return (a <= Xc && b <= Bc) ? pushIdx(a, b, c, Bc, r) : -1;
    };
    for (int a = 0; a <= X; ++a) {
        for (int b = 0; b <= B; ++b) {
            for (int c = 0; c < r; ++c) {
                const int col = pushIdx(a, b, c, B, r);
                if (a <= Xc && b + 1 <= Bc)
                    out.accumulate(pushIdx(a, b + 1, c, Bc, r), col,
                                   -LaurentScalar::one(m.tPrecision()));
                addFirstDerivation(out, m, ddom + col, a, b, c, +1, rowOf);
            }
        }
    }
    clampFloor(out, m);
    return out;
}

std::vector<char> pushWindowMask(int Xc, int Bc, int rank, int X, int B, int blocks) {
    const int dcod = pushDim(Xc, Bc, rank);
    std::vector<char> mask(static_cast<std::size_t>(blocks * dcod), 0);
    for (int blk = 0; blk < blocks; ++blk) {
        for (int a = 0; a <= std::min(X, Xc); ++a) {
            for (int b = 0; b <= std::min(B, Bc); ++b) {
                for (int c = 0; c < rank; ++c)
                    mask[static_cast<std::size_t>(blk * dcod + pushIdx(a, b, c, Bc, rank))] = 1;
            }
        }
    }
    return mask;
}

// ---- Generic matrix helpers ----------------------------------------------

ScalarMatrix matProduct(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix out(a.rows(), b.cols(), a.cap());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const LaurentScalar& aik = a.at(i, k);
            if (aik.zeroStatus() == ZeroStatus::Zero) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const LaurentScalar& bkj = b.at(k, j);
                if (bkj.zeroStatus() == ZeroStatus::Zero) continue;
                out.accumulate(i, j, aik * bkj);
            }
        }
    }
    return out;
}

ScalarMatrix matSum(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix out(a.rows(), a.cols(), a.cap());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j) + b.at(i, j));
    }
    return out;
}

bool negligibleAt(const LaurentScalar& v, int floor) {
    return v.zeroStatus() != ZeroStatus::NonZero || v.valuation().value >= floor;
}

/// First entry of a - b that is distinguishable from zero below `floor`;
/// returns (-1, -1) when there is none.
std::pair<int, int> firstDeviation(const ScalarMatrix& a, const ScalarMatrix& b, int floor) {
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (!negligibleAt(a.at(i, j) - b.at(i, j), floor)) return {i, j};
        }
    }
    return {-1, -1};
}

// ---- Basis labels ---------------------------------------------------------

std::string powerLabel(const std::string& name, int e) {
    if (e == 0) return "";
    if (e == 1) return name;
    return name + "^" + std::to_string(e);
}

std::string joinFactors(const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out += " ";
        out += p;
    }
    return out.empty() ? "1" : out;
}

std::string formSuffix(const std::vector<int>& indices) {
    if (indices.empty()) return "";
    std::string out = " dx{";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(indices[i]);
    }
    return out + "}";
}

std::string componentSuffix(int c, int rank) {
    return rank > 1 ? " e" + std::to_string(c + 1) : "";
}

std::string pushLabel(int a, int b, int c, int rank, const std::vector<int>& form) {
    return joinFactors({powerLabel("x1", a), powerLabel("d2", b)}) + componentSuffix(c, rank) +
           formSuffix(form);
}

std::vector<std::string> pushLabels(int X, int B, int rank, const std::vector<int>& form) {
    std::vector<std::string> out(static_cast<std::size_t>(pushDim(X, B, rank)));
    for (int a = 0; a <= X; ++a) {
        for (int b = 0; b <= B; ++b) {
            for (int c = 0; c < rank; ++c)
                out[static_cast<std::size_t>(pushIdx(a, b, c, B, rank))] = pushLabel(a, b, c, rank, form);
        }
    }
    return out;
}

std::vector<std::string> sectionLabels(int window, int rank, const std::vector<int>& form) {
    std::vector<std::string> out(static_cast<std::size_t>(rank * (window + 1)));
    for (int a = 0; a <= window; ++a) {
        for (int c = 0; c < rank; ++c)
            out[static_cast<std::size_t>(a * rank + c)] =
                joinFactors({powerLabel("x1", a)}) + componentSuffix(c, rank) + formSuffix(form);
    }
    return out;
}

// ---- Build-time square-zero verification ----------------------------------

void verifySquareZero(const TruncatedComplex& complex) {
    for (std::size_t k = 0; k + 1 < complex.differentials.size(); ++k) {
        const ScalarMatrix& lo = complex.differentials[k];
        const ScalarMatrix& hi = complex.differentials[k + 1];
        const ScalarMatrix sq = matProduct(hi, lo);
        const int floor = std::min(lo.precisionFloor(), hi.precisionFloor());
        for (int i = 0; i < sq.rows(); ++i) {
            for (int j = 0; j < sq.cols(); ++j) {
                if (!negligibleAt(sq.at(i, j), floor))
                    throw MathError("differential square is nonzero at row " +
                                    complex.columnLabels[k + 2][static_cast<std::size_t>(i)] +
                                    ", column " +
                                    complex.columnLabels[k][static_cast<std::size_t>(j)]);
            }
        }
    }
}

}  // namespace

TruncatedComplex buildDrComplex(const ConnectionModule& m, int window) {
    if (window < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const int g = m.coefficientDegree();
    TruncatedComplex out;
    out.varCount = 1;
    out.tPrecision = m.tPrecision();
    out.differentials.push_back(connectionMatrix(m, window, window + g));
    out.columnLabels.push_back(sectionLabels(window, m.rank(), {}));
    out.columnLabels.push_back(sectionLabels(window + g, m.rank(), {1}));
    verifySquareZero(out);
    return out;
}

TruncatedComplex buildDrComplex(const DiagonalConnection& m, int window) {
    if (window < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const int n = m.varCount();
    if (n > 3) throw std::invalid_argument("diagonal de Rham complexes are built for up to three variables");
    const int p = m.tPrecision();

    // Monomial box [0..window]^n, least index fastest.
    const int side = window + 1;
    int monoDim = 1;
    for (int i = 0; i < n; ++i) monoDim *= side;
    const auto monoIdx = [&](const std::vector<int>& alpha) {
        int idx = 0;
        for (int i = n - 1; i >= 0; --i) idx = idx * side + alpha[static_cast<std::size_t>(i)];
        return idx;
    };

    // Strictly increasing index lists of each length, lexicographic.
    std::vector<std::vector<std::vector<int>>> forms(static_cast<std::size_t>(n + 1));
    forms[0] = {{}};
    for (int k = 1; k <= n; ++k) {
        for (const std::vector<int>& base : forms[static_cast<std::size_t>(k - 1)]) {
            const int lo = base.empty() ? 1 : base.back() + 1;
            for (int j = lo; j <= n; ++j) {
                std::vector<int> next = base;
                next.push_back(j);
                forms[static_cast<std::size_t>(k)].push_back(std::move(next));
            }
        }
    }
    const auto formPos = [&](int k, const std::vector<int>& f) {
        const auto& list = forms[static_cast<std::size_t>(k)];
        return static_cast<int>(std::find(list.begin(), list.end(), f) - list.begin());
    };

    TruncatedComplex out;
    out.varCount = n;
    out.tPrecision = p;

    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    for (int k = 0; k <= n; ++k) {
        const auto& degForms = forms[static_cast<std::size_t>(k)];
        std::vector<std::string> labels(static_cast<std::size_t>(monoDim) * degForms.size());
        std::fill(alpha.begin(), alpha.end(), 0);
        for (int mi = 0; mi < monoDim; ++mi) {
            std::vector<std::string> factors;
            for (int i = 0; i < n; ++i)
                factors.push_back(powerLabel("x" + std::to_string(i + 1), alpha[static_cast<std::size_t>(i)]));
            const std::string body = joinFactors(factors);
            for (std::size_t f = 0; f < degForms.size(); ++f)
                labels[f * static_cast<std::size_t>(monoDim) + static_cast<std::size_t>(mi)] =
                    body + formSuffix(degForms[f]);
            for (int i = 0; i < n; ++i) {
                if (++alpha[static_cast<std::size_t>(i)] <= window) break;
                alpha[static_cast<std::size_t>(i)] = 0;
            }
        }
        out.columnLabels.push_back(std::move(labels));
    }

    for (int k = 0; k < n; ++k) {
        const auto& domForms = forms[static_cast<std::size_t>(k)];
        const auto& codForms = forms[static_cast<std::size_t>(k + 1)];
        ScalarMatrix delta(monoDim * static_cast<int>(codForms.size()),
                           monoDim * static_cast<int>(domForms.size()), p);
        std::fill(alpha.begin(), alpha.end(), 0);
        for (int mi = 0; mi < monoDim; ++mi) {  // odometer over the monomial box
            for (std::size_t f = 0; f < domForms.size(); ++f) {
                const std::vector<int>& I = domForms[f];
                const int col = static_cast<int>(f) * monoDim + mi;
                for (int j = 1; j <= n; ++j) {
                    if (std::find(I.begin(), I.end(), j) != I.end()) continue;
                    std::vector<int> J = I;
                    J.insert(std::upper_bound(J.begin(), J.end(), j), j);
                    const int passed =
                        static_cast<int>(std::count_if(I.begin(), I.end(), [&](int i) { return i < j; }));
                    const int sign = passed % 2 == 0 ? 1 : -1;
                    const int rowBlock = formPos(k + 1, J) * monoDim;
                    const int aj = alpha[static_cast<std::size_t>(j - 1)];
                    if (aj > 0) {
                        std::vector<int> lower = alpha;
                        --lower[static_cast<std::size_t>(j - 1)];
                        delta.accumulate(rowBlock + monoIdx(lower), col,
                                         LaurentScalar::fromLong(sign * aj, p));
                    }
                    const LaurentScalar& lam = m.coefficient(j);
                    if (lam.zeroStatus() != ZeroStatus::Zero)
                        delta.accumulate(rowBlock + mi, col, sign > 0 ? lam : -lam);
                }
            }
            for (int i = 0; i < n; ++i) {
                if (++alpha[static_cast<std::size_t>(i)] <= window) break;
                alpha[static_cast<std::size_t>(i)] = 0;
            }
        }
        int floor = kInfValuation;
        for (int i = 1; i <= n; ++i) floor = std::min(floor, m.coefficient(i).absolutePrecision());
        delta.overridePrecisionFloor(std::min({delta.precisionFloor(), floor, p}));
        out.differentials.push_back(std::move(delta));
    }

    verifySquareZero(out);
    return out;
}

TruncatedComplex buildDrComplex(const PushforwardModule& m, int xWindow, int tailWindow) {
    if (xWindow < 0 || tailWindow < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const ConnectionModule& src = m.source();
    const int g = src.coefficientDegree();
    const int r = src.rank();

    TruncatedComplex out;
    out.varCount = 2;
    out.tPrecision = src.tPrecision();
    out.differentials.push_back(pushDelta0(src, xWindow, tailWindow, xWindow + g, tailWindow + 1));
    out.differentials.push_back(
        pushDelta1(src, xWindow + g, tailWindow + 1, xWindow + 2 * g, tailWindow + 2));

    out.columnLabels.push_back(pushLabels(xWindow, tailWindow, r, {}));
    std::vector<std::string> oneForms = pushLabels(xWindow + g, tailWindow + 1, r, {1});
    const std::vector<std::string> dx2 = pushLabels(xWindow + g, tailWindow + 1, r, {2});
    oneForms.insert(oneForms.end(), dx2.begin(), dx2.end());
    out.columnLabels.push_back(std::move(oneForms));
    out.columnLabels.push_back(pushLabels(xWindow + 2 * g, tailWindow + 2, r, {1, 2}));

    verifySquareZero(out);
    return out;
}

CohomologyDims pushforwardCohomology(const PushforwardModule& m, int xWindow, int tailWindow) {
    if (xWindow < 0 || tailWindow < 0) throw WindowTooSmallError("de Rham window must be nonnegative");
    const ConnectionModule& src = m.source();
    const int g = src.coefficientDegree();
    const int p = src.tPrecision();
    const int r = src.rank();
    const int extX = xWindow + (p + 2) * (g + 1);
    const int extB = tailWindow + 2;

    ComplexDegreeWindow deg0;
    deg0.kernelMap = pushDelta0(src, xWindow, tailWindow, xWindow + g, tailWindow + 1);
    deg0.hasImage = false;

    ComplexDegreeWindow deg1;
    deg1.kernelMap = pushDelta1(src, xWindow, tailWindow, xWindow + g, tailWindow + 1);
    deg1.hasImage = true;
    deg1.imageMap = pushDelta0(src, extX, extB, extX + g, extB + 1);
    deg1.imageRowInWindow = pushWindowMask(extX + g, extB + 1, r, xWindow, tailWindow, 2);

    ComplexDegreeWindow deg2;
    deg2.kernelMap = ScalarMatrix(0, pushDim(xWindow, tailWindow, r), p);
    deg2.hasImage = true;
    deg2.imageMap = pushDelta1(src, extX, extB, extX + g, extB + 1);
    deg2.imageRowInWindow = pushWindowMask(extX + g, extB + 1, r, xWindow, tailWindow, 1);

    return cohomologyDims({deg0, deg1, deg2});
}

ShiftCheckReport drShiftCheck(const ConnectionModule& source, const EmbeddingData& e) {
    if (e.sourceDim != 1 || e.ambientDim != 2)
        throw std::invalid_argument("the shift check is implemented for the disc inside the bidisc");
    ShiftCheckReport rep;
    rep.windows = {kShiftWindowSmall, kShiftWindowLarge};
    for (int i = 0; i < 2; ++i) {
        const int w = rep.windows[static_cast<std::size_t>(i)];
        const ConnectionModule clamped = source.clampedTo(w);
        const CohomologyDims src = connectionWindowDims(clamped, w);
        const CohomologyDims tgt = pushforwardCohomology(PushforwardModule(clamped), w, w);
        rep.sourceDims[static_cast<std::size_t>(i)] = {src.dims[0], src.dims[1]};
        rep.targetDims[static_cast<std::size_t>(i)] = {tgt.dims[0], tgt.dims[1], tgt.dims[2]};
        rep.reliable = rep.reliable && src.reliable && tgt.reliable;
    }
    rep.stabilized =
        rep.sourceDims[0] == rep.sourceDims[1] && rep.targetDims[0] == rep.targetDims[1];
    bool shifted = true;
    for (int i = 0; i < 2; ++i) {
        const auto& s = rep.sourceDims[static_cast<std::size_t>(i)];
        const auto& t = rep.targetDims[static_cast<std::size_t>(i)];
        shifted = shifted && t[0] == 0 && t[1] == s[0] && t[2] == s[1];
    }
    rep.agree = rep.stabilized && shifted;
    return rep;
}

ShiftCheckReport drShiftCheck(const CyclicModule& source, const EmbeddingData& e) {
    return drShiftCheck(cyclicToConnection(source), e);
}

ChainMapReport chainMapVerify(const ConnectionModule& source, const EmbeddingData& e, int window) {
    if (e.sourceDim != 1 || e.ambientDim != 2)
        throw std::invalid_argument("the chain map check is implemented for the disc inside the bidisc");
    if (window < 0) throw WindowTooSmallError("chain map window must be nonnegative");
    const int g = source.coefficientDegree();
    const int p = source.tPrecision();
    const int r = source.rank();
    const int X = window;

    // Source differential on sections of degree <= X.
    const ScalarMatrix srcDelta = connectionMatrix(source, X, X + g);

    // Wedge maps into the tail-zero part of the pushforward: degree zero
    // lands in the dx_2 block, degree one in the top form with positive sign.
    ScalarMatrix f0(2 * pushDim(X, 1, r), r * (X + 1), p);
    for (int a = 0; a <= X; ++a) {
        for (int c = 0; c < r; ++c)
            f0.set(pushDim(X, 1, r) + pushIdx(a, 0, c, 1, r), a * r + c, LaurentScalar::one(p));
    }
    ScalarMatrix f1(pushDim(X + g, 2, r), r * (X + g + 1), p);
    for (int a = 0; a <= X + g; ++a) {
        for (int c = 0; c < r; ++c) f1.set(pushIdx(a, 0, c, 2, r), a * r + c, LaurentScalar::one(p));
    }

    const ScalarMatrix pushD1 = pushDelta1(source, X, 1, X + g, 2);
    const ScalarMatrix lhs = matProduct(f1, srcDelta);
    const ScalarMatrix rhs = matProduct(pushD1, f0);
    const int floor = std::min(srcDelta.precisionFloor(), pushD1.precisionFloor());

    ChainMapReport rep;
    const auto [di, dj] = firstDeviation(lhs, rhs, floor);
    rep.commutes = di < 0;
    if (!rep.commutes) {
        rep.offendingEntry = "row " + pushLabels(X + g, 2, r, {1, 2})[static_cast<std::size_t>(di)] +
                             ", column " + sectionLabels(X, r, {})[static_cast<std::size_t>(dj)];
    }
    rep.injective = kernelDim(f0) == 0 && kernelDim(f1) == 0;
    if (rep.commutes && !rep.injective) rep.offendingEntry = "wedge map has a kernel vector";
    return rep;
}

namespace {

// ---- Cokernel complex of the wedge map ------------------------------------
//
// Degree t of the cokernel keeps the forms without dx_2 with free tails and
// the dx_2-forms with tail >= 1. Windows (X, B): the dx_1-free block uses
// pushIdx with tails [0..B]; the dx_2 block enumerates tails [1..B].

int tailBlockDim(int X, int B, int rank) { return (X + 1) * B * rank; }

int tailBlockIdx(int a, int b, int c, int B, int rank) { return (a * B + (b - 1)) * rank + c; }

/// Cokernel degree-0 -> degree-1 differential: u |-> (d_1 u) dx_1 + (d_2 u) dx_2.
ScalarMatrix cokerDelta0(const ConnectionModule& m, int X, int B, int Xc, int Bc) {
    const int r = m.rank();
    const int freeDim = pushDim(Xc, Bc, r);
    ScalarMatrix out(freeDim + tailBlockDim(Xc, Bc, r), pushDim(X, B, r), m.tPrecision());
    const auto rowOf = [&](int a, int b, int c) {
        return (a <= Xc && b <= Bc) ? pushIdx(a, b, c, Bc, r) : -1;
    };
    for (int a = 0; a <= X; ++a) {
        for (int b = 0; b <= B; ++b) {
            for (int c = 0; c < r; ++c) {
                const int col = pushIdx(a, b, c, B, r);
                addFirstDerivation(out, m, col, a, b, c, +1, rowOf);
                if (a <= Xc && b + 1 <= Bc)
                    out.accumulate(freeDim + tailBlockIdx(a, b + 1, c, Bc, r), col,
                                   LaurentScalar::one(m.tPrecision()));
            }
        }
    }
    clampFloor(out, m);
    return out;
}

/// Cokernel degree-1 -> degree-2 differential:
///   alpha dx_1 + gamma dx_2 |-> (d_1 gamma - d_2 alpha) dx_1^dx_2
/// (gamma ranges over tail >= 1; so does the codomain).
ScalarMatrix cokerDelta1(const ConnectionModule& m, int X, int B, int Xc, int Bc) {
    const int r = m.rank();
    const int freeDim = pushDim(X, B, r);
    ScalarMatrix out(tailBlockDim(Xc, Bc, r), freeDim + tailBlockDim(X, B, r), m.tPrecision());
    const auto rowOf = [&](int a, int b, int c) {
        return (a <= Xc && b >= 1 && b <= Bc) ? tailBlockIdx(a, b, c, Bc, r) : -1;
    };
    for (int a = 0; a <= X; ++a) {
        for (int c = 0; c < r; ++c) {
            for (int b = 0; b <= B; ++b) {
                if (a <= Xc && b + 1 <= Bc)
                    out.accumulate(tailBlockIdx(a, b + 1, c, Bc, r), pushIdx(a, b, c, B, r),
                                   -LaurentScalar::one(m.tPrecision()));
            }
            for (int b = 1; b <= B; ++b)
                addFirstDerivation(out, m, freeDim + tailBlockIdx(a, b, c, B, r), a, b, c, +1, rowOf);
        }
    }
    clampFloor(out, m);
    return out;
}

/// Degree-1 homotopy: alpha dx_1 + (d_2 beta) dx_2 |-> +beta.
ScalarMatrix cokerH1(const ConnectionModule& m, int X, int B) {
    const int r = m.rank();
    const int freeDim = pushDim(X, B, r);
    ScalarMatrix out(pushDim(X, B - 1, r), freeDim + tailBlockDim(X, B, r), m.tPrecision());
    for (int a = 0; a <= X; ++a) {
        for (int b = 1; b <= B; ++b) {
            for (int c = 0; c < r; ++c)
                out.set(pushIdx(a, b - 1, c, B - 1, r), freeDim + tailBlockIdx(a, b, c, B, r),
                        LaurentScalar::one(m.tPrecision()));
        }
    }
    return out;
}

/// Degree-2 homotopy: (d_2 beta) dx_1^dx_2 |-> -beta dx_1.
ScalarMatrix cokerH2(const ConnectionModule& m, int X, int B) {
    const int r = m.rank();
    ScalarMatrix out(pushDim(X, B - 1, r) + tailBlockDim(X, B - 1, r), tailBlockDim(X, B, r),
                     m.tPrecision());
    for (int a = 0; a <= X; ++a) {
        for (int b = 1; b <= B; ++b) {
            for (int c = 0; c < r; ++c)
                out.set(pushIdx(a, b - 1, c, B - 1, r), tailBlockIdx(a, b, c, B, r),
                        -LaurentScalar::one(m.tPrecision()));
        }
    }
    return out;
}

ScalarMatrix inclusionMatrix(const std::function<int(int)>& mapIdx, int domDim, int codDim, int p) {
    ScalarMatrix out(codDim, domDim, p);
    for (int j = 0; j < domDim; ++j) out.set(mapIdx(j), j, LaurentScalar::one(p));
    return out;
}

std::vector<std::string> cokerLabels1(int X, int B, int rank) {
    std::vector<std::string> out = pushLabels(X, B, rank, {1});
    out.resize(static_cast<std::size_t>(pushDim(X, B, rank) + tailBlockDim(X, B, rank)));
    for (int a = 0; a <= X; ++a) {
        for (int b = 1; b <= B; ++b) {
            for (int c = 0; c < rank; ++c)
                out[static_cast<std::size_t>(pushDim(X, B, rank) + tailBlockIdx(a, b, c, B, rank))] =
                    pushLabel(a, b, c, rank, {2});
        }
    }
    return out;
}

std::vector<std::string> cokerLabels2(int X, int B, int rank) {
    std::vector<std::string> out(static_cast<std::size_t>(tailBlockDim(X, B, rank)));
    for (int a = 0; a <= X; ++a) {
        for (int b = 1; b <= B; ++b) {
            for (int c = 0; c < rank; ++c)
                out[static_cast<std::size_t>(tailBlockIdx(a, b, c, B, rank))] =
                    pushLabel(a, b, c, rank, {1, 2});
        }
    }
    return out;
}

}  // namespace

HomotopyReport homotopyVerify(const ConnectionModule& source, const EmbeddingData& e, int xWindow,
                              int tailWindow) {
    if (e.sourceDim != 1 || e.ambientDim != 2)
        throw std::invalid_argument("the homotopy check is implemented for the disc inside the bidisc");
    if (xWindow < 0 || tailWindow < 1)
        throw WindowTooSmallError("homotopy check needs a nonnegative x window and tail window >= 1");
    const int g = source.coefficientDegree();
    const int p = source.tPrecision();
    const int r = source.rank();
    const int X = xWindow;
    const int B = tailWindow;

    HomotopyReport rep;
    std::array<std::pair<ScalarMatrix, ScalarMatrix>, 3> checks;  // (computed, expected identity)

    // Degree 0: h delta = Id on the module itself.
    checks[0].first = matProduct(cokerH1(source, X + g, B + 1), cokerDelta0(source, X, B, X + g, B + 1));
    checks[0].second = inclusionMatrix(
        [&](int j) {
            const int c = j % r;
            const int rest = j / r;
            return pushIdx(rest / (B + 1), rest % (B + 1), c, B, r);
        },
        pushDim(X, B, r), pushDim(X + g, B, r), p);

    // Degree 1: delta h + h delta = Id on one-forms.
    checks[1].first = matSum(
        matProduct(cokerDelta0(source, X, B - 1, X + g, B), cokerH1(source, X, B)),
        matProduct(cokerH2(source, X + g, B + 1), cokerDelta1(source, X, B, X + g, B + 1)));
    const int freeDom = pushDim(X, B, r);
    checks[1].second = inclusionMatrix(
        [&](int j) {
            if (j < freeDom) {
                const int c = j % r;
                const int rest = j / r;
                return pushIdx(rest / (B + 1), rest % (B + 1), c, B, r);
            }
            const int jj = j - freeDom;
            const int c = jj % r;
            const int rest = jj / r;
            return pushDim(X + g, B, r) + tailBlockIdx(rest / B, rest % B + 1, c, B, r);
        },
        freeDom + tailBlockDim(X, B, r), pushDim(X + g, B, r) + tailBlockDim(X + g, B, r), p);

    // Degree 2: delta h = Id on top forms.
    checks[2].first = matProduct(cokerDelta1(source, X, B - 1, X + g, B), cokerH2(source, X, B));
    checks[2].second = inclusionMatrix(
        [&](int j) {
            const int c = j % r;
            const int rest = j / r;
            return tailBlockIdx(rest / B, rest % B + 1, c, B, r);
        },
        tailBlockDim(X, B, r), tailBlockDim(X + g, B, r), p);

    const int floor = std::min(p, minEntryPrecision(source));
    const std::array<std::vector<std::string>, 3> rowLabels = {
        pushLabels(X + g, B, r, {}), cokerLabels1(X + g, B, r), cokerLabels2(X + g, B, r)};
    const std::array<std::vector<std::string>, 3> colLabels = {
        pushLabels(X, B, r, {}), cokerLabels1(X, B, r), cokerLabels2(X, B, r)};
    for (int t = 0; t < 3; ++t) {
        const auto [di, dj] = firstDeviation(checks[static_cast<std::size_t>(t)].first,
                                             checks[static_cast<std::size_t>(t)].second, floor);
        rep.identityAtDegree[static_cast<std::size_t>(t)] = di < 0;
        if (di >= 0 && rep.offendingEntry.empty())
            rep.offendingEntry =
                "degree " + std::to_string(t) + ", row " +
                rowLabels[static_cast<std::size_t>(t)][static_cast<std::size_t>(di)] + ", column " +
                colLabels[static_cast<std::size_t>(t)][static_cast<std::size_t>(dj)];
    }

    // Sign convention: the degree-1 homotopy sends the pure tail term
    // (d_2 1) dx_2 to +1.
    const ScalarMatrix h1 = cokerH1(source, X, B);
    rep.signPinned =
        h1.at(pushIdx(0, 0, 0, B - 1, r), pushDim(X, B, r) + tailBlockIdx(0, 1, 0, B, r)) ==
        LaurentScalar::one(p);

    rep.holds = rep.identityAtDegree[0] && rep.identityAtDegree[1] && rep.identityAtDegree[2] &&
                rep.signPinned;
    return rep;
}

}  // namespace tatedr
