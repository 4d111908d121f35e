#include "tatedr/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tatedr {

ScalarMatrix::ScalarMatrix(int rows, int cols, int cap)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
            LaurentScalar::zero(cap)),
      floor_(-1),
      cap_(cap) {}

const LaurentScalar& ScalarMatrix::at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
}

void ScalarMatrix::set(int i, int j, LaurentScalar v) {
    data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
          static_cast<std::size_t>(j)] = std::move(v);
    floor_ = -1;
}

void ScalarMatrix::accumulate(int i, int j, const LaurentScalar& v) { set(i, j, at(i, j) + v); }

int ScalarMatrix::precisionFloor() const {
    if (floor_ >= 0) return floor_;
    int f = kInfValuation;
    for (const auto& e : data_) f = std::min(f, e.absolutePrecision());
    floor_ = f;
    return floor_;
}

ScalarMatrix ScalarMatrix::rowsWhere(const std::vector<char>& keep) const {
    int n = 0;
    for (int i = 0; i < rows_; ++i)
        if (keep[static_cast<std::size_t>(i)]) ++n;
    ScalarMatrix out(n, cols_, cap_);
    int r = 0;
    for (int i = 0; i < rows_; ++i) {
        if (!keep[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < cols_; ++j) out.set(r, j, at(i, j));
        ++r;
    }
    out.floor_ = floor_;
    return out;
}

ScalarMatrix ScalarMatrix::transposed() const {
    ScalarMatrix out(cols_, rows_, cap_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

std::vector<LaurentScalar> ScalarMatrix::apply(const std::vector<LaurentScalar>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("size mismatch");
    std::vector<LaurentScalar> out(static_cast<std::size_t>(rows_), LaurentScalar::zero(cap_));
    for (int i = 0; i < rows_; ++i) {
        LaurentScalar acc = LaurentScalar::zero(cap_);
        for (int j = 0; j < cols_; ++j) acc = acc + at(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::string ScalarMatrix::toString() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
        out << "[ ";
        for (int j = 0; j < cols_; ++j) {
            out << at(i, j).toString();
            if (j + 1 < cols_) out << ", ";
        }
        out << " ]\n";
    }
    return out.str();
}

namespace {

/// Is this entry zero for all rank purposes? `dirty` reports whether an
/// unseen digit could overturn the call. An entry with certified valuation
/// at or beyond the floor is a clean modular zero — reducing mod t^floor is
/// deliberate — whereas an entry with no certified nonzero digit at all may
/// hide one just past its precision bound.
bool treatAsZero(const LaurentScalar& e, int floor, bool& dirty) {
    switch (e.zeroStatus()) {
        case ZeroStatus::Zero:
            return true;
        case ZeroStatus::IndistinguishableAtPrecision:
            dirty = true;
            return true;
        case ZeroStatus::NonZero:
            return e.valuation().value >= floor;
    }
    return false;
}

}  // namespace

EchelonForm echelonize(const ScalarMatrix& input) {
    const int floor = input.precisionFloor();
    ScalarMatrix m = input;
    EchelonForm ef;
    ef.pivotRowOfCol.assign(static_cast<std::size_t>(m.cols()), -1);
    RankReport& rep = ef.report;
    rep.reliable = true;

    // Pivots are chosen globally: the smallest valuation anywhere in the
    // not-yet-pivoted submatrix. Every elimination multiplier then has
    // valuation >= 0, so no step pushes information below the input floor,
    // and the pivot count is the number of elementary divisors of valuation
    // below the floor — the rank mod t^floor.
    int pivotRow = 0;
    while (pivotRow < m.rows()) {
        int bestRow = -1;
        int bestCol = -1;
        int bestVal = kInfValuation;
        for (int i = pivotRow; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) {
                if (ef.pivotRowOfCol[static_cast<std::size_t>(j)] >= 0) continue;
                bool dirty = false;
                if (treatAsZero(m.at(i, j), floor, dirty)) continue;
                int v = m.at(i, j).valuation().value;
                if (v < bestVal) {
                    bestVal = v;
                    bestRow = i;
                    bestCol = j;
                }
            }
        }
        if (bestRow < 0) break;

        // A pivot within one digit of the floor whose own digits are not all
        // known: its inverse has essentially no trustworthy window left.
        if (bestVal >= floor - 1 && !m.at(bestRow, bestCol).isExact()) rep.reliable = false;
        // valuation of the weakest pivot (the minimal-norm one): the
        // precision-loss diagnostic
        if (rep.minPivotValuation == kInfValuation)
            rep.minPivotValuation = bestVal;
        else
            rep.minPivotValuation = std::max(rep.minPivotValuation, bestVal);

        if (bestRow != pivotRow)
            for (int j = 0; j < m.cols(); ++j) {
                LaurentScalar tmp = m.at(bestRow, j);
                m.set(bestRow, j, m.at(pivotRow, j));
                m.set(pivotRow, j, tmp);
            }
        LaurentScalar inv = m.at(pivotRow, bestCol).inverse();
        for (int j = 0; j < m.cols(); ++j) m.set(pivotRow, j, m.at(pivotRow, j) * inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == pivotRow) continue;
            bool dirty = false;
            if (treatAsZero(m.at(i, bestCol), floor, dirty)) continue;
            LaurentScalar factor = m.at(i, bestCol);
            for (int j = 0; j < m.cols(); ++j)
                m.set(i, j, m.at(i, j) - factor * m.at(pivotRow, j));
        }
        ef.pivotColOfRow.push_back(bestCol);
        ef.pivotRowOfCol[static_cast<std::size_t>(bestCol)] = pivotRow;
        ++pivotRow;
    }

    // Declaring the remaining columns free is only certain if no skipped
    // entry could be hiding a digit past its precision bound.
    for (int i = pivotRow; i < m.rows() && rep.reliable; ++i) {
        for (int j = 0; j < m.cols() && rep.reliable; ++j) {
            if (ef.pivotRowOfCol[static_cast<std::size_t>(j)] >= 0) continue;
            bool dirty = false;
            treatAsZero(m.at(i, j), floor, dirty);
            if (dirty) rep.reliable = false;
        }
    }

    rep.rank = static_cast<int>(ef.pivotColOfRow.size());
    rep.kernelDim = m.cols() - rep.rank;
    rep.cokernelDim = m.rows() - rep.rank;
    m.overridePrecisionFloor(floor);
    ef.reduced = std::move(m);
    return ef;
}

RankReport rankReport(const ScalarMatrix& m) { return echelonize(m).report; }

std::vector<std::vector<LaurentScalar>> kernelBasis(const ScalarMatrix& m) {
    EchelonForm ef = echelonize(m);
    const int floor = ef.reduced.precisionFloor();
    std::vector<std::vector<LaurentScalar>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (ef.pivotRowOfCol[static_cast<std::size_t>(f)] >= 0) continue;
        std::vector<LaurentScalar> v(static_cast<std::size_t>(m.cols()),
                                     LaurentScalar::zero(m.cap()));
        v[static_cast<std::size_t>(f)] = LaurentScalar::one(m.cap());
        for (int r = 0; r < static_cast<int>(ef.pivotColOfRow.size()); ++r) {
            int pc = ef.pivotColOfRow[static_cast<std::size_t>(r)];
            const LaurentScalar& e = ef.reduced.at(r, f);
            bool dirty = false;
            if (treatAsZero(e, floor, dirty)) continue;
            v[static_cast<std::size_t>(pc)] = -e;
        }
        // normalize to norm 1: divide by the first entry of minimal valuation
        int minVal = kInfValuation;
        int lead = -1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].zeroStatus() != ZeroStatus::NonZero) continue;
            if (v[i].valuation().value < minVal) {
                minVal = v[i].valuation().value;
                lead = static_cast<int>(i);
            }
        }
        if (lead >= 0) {
            LaurentScalar inv = v[static_cast<std::size_t>(lead)].inverse();
            for (auto& e : v) e = e * inv;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

int kernelDim(const ScalarMatrix& m) { return rankReport(m).kernelDim; }
int cokernelDim(const ScalarMatrix& m) { return rankReport(m).cokernelDim; }

CohomologyDims cohomologyDims(const std::vector<ComplexDegreeWindow>& degrees) {
    CohomologyDims out;
    out.reliable = true;
    for (const auto& deg : degrees) {
        RankReport kr = rankReport(deg.kernelMap);
        if (!kr.reliable) out.reliable = false;
        int dim = kr.kernelDim;
        if (deg.hasImage && deg.imageMap.cols() > 0) {
            std::vector<char> outside(deg.imageRowInWindow.size());
            for (std::size_t i = 0; i < outside.size(); ++i)
                outside[i] = static_cast<char>(!deg.imageRowInWindow[i]);
            ScalarMatrix high = deg.imageMap.rowsWhere(outside);
            // keep the full map's floor on the row block: the rows we dropped
            // must not loosen the zero threshold
            high.overridePrecisionFloor(deg.imageMap.precisionFloor());
            RankReport highR = rankReport(high);
            RankReport fullR = rankReport(deg.imageMap);
            if (!highR.reliable || !fullR.reliable) out.reliable = false;
            dim -= highR.kernelDim - fullR.kernelDim;
        }
        if (dim < 0) {
            // a negative estimate means the windows were inconsistent; report
            // the clamped value but never as trustworthy
            dim = 0;
            out.reliable = false;
        }
        out.dims.push_back(dim);
    }
    return out;
}

}  // namespace tatedr
