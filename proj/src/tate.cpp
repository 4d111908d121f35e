#include "tatedr/tate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tatedr/errors.hpp"

namespace tatedr {

int totalDegree(const MultiIndex& a) {
    int d = 0;
    for (int e : a) d += e;
    return d;
}

bool degrevlexLess(const MultiIndex& a, const MultiIndex& b) {
    int da = totalDegree(a), db = totalDegree(b);
    if (da != db) return da < db;
    // same degree: a < b iff the rightmost nonzero entry of a - b is positive
    for (std::size_t i = a.size(); i-- > 0;) {
        int d = a[i] - b[i];
        if (d != 0) return d > 0;
    }
    return false;
}

bool dividesComponentwise(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

namespace {

void trimPoly(std::vector<Rational>& p) {
    while (!p.empty() && isZero(p.back())) p.pop_back();
}

int firstNonZeroIndex(const std::vector<Rational>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!isZero(p[i])) return static_cast<int>(i);
    return -1;
}

}  // namespace

TateElement TateElement::zero(int varCount, int prec) { return TateElement(varCount, prec); }

TateElement TateElement::inexactZero(int varCount, int absPrec, int prec) {
    TateElement z(varCount, prec);
    z.scale_ = absPrec;
    z.exact_ = false;
    return z;
}

TateElement TateElement::fromBody(int varCount, int scale, Body raw, int prec, bool exact) {
    return make(varCount, scale, std::move(raw), prec, exact,
                exact ? kInfValuation : scale + prec);
}

TateElement TateElement::make(int varCount, int scale, Body raw, int cap, bool exact,
                              int absLimit) {
    for (auto it = raw.begin(); it != raw.end();) {
        trimPoly(it->second);
        if (it->second.empty())
            it = raw.erase(it);
        else
            ++it;
    }
    if (raw.empty()) {
        if (exact) return TateElement::zero(varCount, cap);
        return TateElement::inexactZero(varCount, absLimit, cap);
    }
    int shift = kInfValuation;
    for (const auto& [alpha, poly] : raw) shift = std::min(shift, firstNonZeroIndex(poly));
    if (shift > 0) {
        scale += shift;
        // every poly has >= shift leading zero digits relative to the old scale
        for (auto& [alpha, poly] : raw) poly.erase(poly.begin(), poly.begin() + shift);
    }
    int window = exact ? cap : std::min(cap, absLimit - scale);
    if (window <= 0) return TateElement::inexactZero(varCount, absLimit, cap);
    for (auto it = raw.begin(); it != raw.end();) {
        auto& poly = it->second;
        if (static_cast<int>(poly.size()) > window) {
            bool dropped = false;
            for (std::size_t i = static_cast<std::size_t>(window); i < poly.size(); ++i)
                if (!isZero(poly[i])) dropped = true;
            poly.resize(static_cast<std::size_t>(window));
            if (dropped) exact = false;
        }
        trimPoly(poly);
        if (poly.empty())
            it = raw.erase(it);
        else
            ++it;
    }
    if (!exact && absLimit == kInfValuation) absLimit = scale + window;
    if (raw.empty()) {
        if (exact) return TateElement::zero(varCount, cap);
        return TateElement::inexactZero(varCount, absLimit, cap);
    }
    TateElement out = TateElement::zero(varCount, cap);
    out.scale_ = scale;
    out.body_ = std::move(raw);
    out.exact_ = exact;
    // for truncated elements prec_ is the remaining digit window from scale_
    out.prec_ = exact ? cap : std::min(cap, absLimit - scale);
    return out;
}

TateElement TateElement::fromScalar(const LaurentScalar& s, int varCount) {
    if (s.isZeroAtPrecision()) {
        if (s.isExact()) return zero(varCount, s.cap());
        return inexactZero(varCount, s.valuationRaw(), s.cap());
    }
    Body raw;
    raw[MultiIndex(static_cast<std::size_t>(varCount), 0)] = s.storedUnit();
    return TateElement::make(varCount, s.valuationRaw(), std::move(raw), s.cap(), s.isExact(),
                       s.absolutePrecision());
}

TateElement TateElement::constant(const Rational& r, int varCount, int prec) {
    return fromScalar(LaurentScalar::fromRational(r, prec), varCount);
}

TateElement TateElement::variable(int i, int varCount, int prec) {
    if (i < 1 || i > varCount)
        throw IndexOutOfRangeError("variable index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount));
    MultiIndex alpha(static_cast<std::size_t>(varCount), 0);
    alpha[static_cast<std::size_t>(i - 1)] = 1;
    Body raw;
    raw[alpha] = {Rational(1)};
    return TateElement::make(varCount, 0, std::move(raw), prec, /*exact=*/true, kInfValuation);
}

TateElement TateElement::monomial(const MultiIndex& alpha, const LaurentScalar& coeff,
                                  int varCount) {
    if (coeff.isZeroAtPrecision()) {
        if (coeff.isExact()) return zero(varCount, coeff.cap());
        return inexactZero(varCount, coeff.valuationRaw(), coeff.cap());
    }
    Body raw;
    raw[alpha] = coeff.storedUnit();
    return TateElement::make(varCount, coeff.valuationRaw(), std::move(raw), coeff.cap(), coeff.isExact(),
                       coeff.absolutePrecision());
}

ZeroStatus TateElement::zeroStatus() const {
    if (!body_.empty()) return ZeroStatus::NonZero;
    return exact_ ? ZeroStatus::Zero : ZeroStatus::IndistinguishableAtPrecision;
}

ValuationBound TateElement::gaussNorm() const {
    if (!body_.empty()) return {scale_, false};
    return {scale_, true};
}

int TateElement::absolutePrecision() const {
    if (exact_) return kInfValuation;
    if (body_.empty()) return scale_;
    return scale_ + prec_;
}

bool TateElement::isScalar() const {
    if (body_.empty()) return true;
    if (body_.size() > 1) return false;
    return totalDegree(body_.begin()->first) == 0;
}

LaurentScalar TateElement::asScalar() const {
    if (body_.empty()) {
        if (exact_) return LaurentScalar::zero(prec_);
        return LaurentScalar::inexactZero(scale_, prec_);
    }
    if (!isScalar()) throw std::logic_error("asScalar called on a non-constant element");
    return coefficientOf(body_.begin()->first);
}

LaurentScalar TateElement::coefficientOf(const MultiIndex& alpha) const {
    auto it = body_.find(alpha);
    if (it == body_.end()) {
        if (exact_) return LaurentScalar::zero(prec_);
        return LaurentScalar::inexactZero(absolutePrecision(), prec_);
    }
    std::vector<Rational> digits = it->second;
    if (!exact_) digits.resize(static_cast<std::size_t>(prec_), Rational(0));
    return LaurentScalar::fromCoefficients(scale_, std::move(digits), prec_, exact_);
}

void TateElement::forEachTerm(
    const std::function<void(const MultiIndex&, const LaurentScalar&)>& fn) const {
    for (const auto& [alpha, poly] : body_) fn(alpha, coefficientOf(alpha));
}

int TateElement::maxDegree(int i) const {
    int d = 0;
    for (const auto& [alpha, poly] : body_) d = std::max(d, alpha[static_cast<std::size_t>(i - 1)]);
    return d;
}

int TateElement::maxTotalDegree() const {
    int d = 0;
    for (const auto& [alpha, poly] : body_) d = std::max(d, totalDegree(alpha));
    return d;
}

TateElement TateElement::operator-() const {
    TateElement r = *this;
    for (auto& [alpha, poly] : r.body_)
        for (auto& c : poly) c = -c;
    return r;
}

TateElement operator+(const TateElement& a, const TateElement& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    int cap = std::min(a.prec_, b.prec_);
    if (a.body_.empty() && a.exact_)
        return TateElement::make(b.varCount_, b.scale_, b.body_, cap, b.exact_, b.absolutePrecision());
    if (b.body_.empty() && b.exact_)
        return TateElement::make(a.varCount_, a.scale_, a.body_, cap, a.exact_, a.absolutePrecision());

    int absPrec = std::min(a.absolutePrecision(), b.absolutePrecision());
    if (a.body_.empty() && b.body_.empty())
        return TateElement::inexactZero(a.varCount_, std::min(a.scale_, b.scale_), cap);

    int s = kInfValuation;
    if (!a.body_.empty()) s = std::min(s, a.scale_);
    if (!b.body_.empty()) s = std::min(s, b.scale_);
    bool exact = a.exact_ && b.exact_;
    if (!exact && absPrec <= s) return TateElement::inexactZero(a.varCount_, absPrec, cap);

    TateElement::Body raw;
    auto addInto = [&](const TateElement& e) {
        int off = e.scale_ - s;
        for (const auto& [alpha, poly] : e.body_) {
            auto& dst = raw[alpha];
            if (dst.size() < poly.size() + static_cast<std::size_t>(off))
                dst.resize(poly.size() + static_cast<std::size_t>(off), Rational(0));
            for (std::size_t i = 0; i < poly.size(); ++i)
                dst[i + static_cast<std::size_t>(off)] += poly[i];
        }
    };
    if (!a.body_.empty()) addInto(a);
    if (!b.body_.empty()) addInto(b);
    return TateElement::make(a.varCount_, s, std::move(raw), cap, exact,
                       exact ? kInfValuation : absPrec);
}

TateElement operator-(const TateElement& a, const TateElement& b) { return a + (-b); }

TateElement operator*(const TateElement& a, const TateElement& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    int cap = std::min(a.prec_, b.prec_);
    if (a.body_.empty() || b.body_.empty()) {
        if ((a.body_.empty() && a.exact_) || (b.body_.empty() && b.exact_))
            return TateElement::zero(a.varCount_, cap);
        return TateElement::inexactZero(a.varCount_, a.scale_ + b.scale_, cap);
    }
    int s = a.scale_ + b.scale_;
    bool exact = a.exact_ && b.exact_;
    int window;
    if (exact) {
        int spanA = 0, spanB = 0;
        for (const auto& [al, p] : a.body_) spanA = std::max(spanA, static_cast<int>(p.size()));
        for (const auto& [al, p] : b.body_) spanB = std::max(spanB, static_cast<int>(p.size()));
        window = spanA + spanB - 1;
    } else {
        window = std::min(a.prec_, b.prec_);
    }
    TateElement::Body raw;
    MultiIndex gamma(static_cast<std::size_t>(a.varCount_), 0);
    for (const auto& [alpha, pa] : a.body_) {
        for (const auto& [beta, pb] : b.body_) {
            for (std::size_t v = 0; v < gamma.size(); ++v) gamma[v] = alpha[v] + beta[v];
            auto& dst = raw[gamma];
            if (static_cast<int>(dst.size()) < window)
                dst.resize(static_cast<std::size_t>(window), Rational(0));
            for (std::size_t i = 0; i < pa.size(); ++i) {
                if (static_cast<int>(i) >= window) break;
                for (std::size_t j = 0; j < pb.size(); ++j) {
                    if (static_cast<int>(i + j) >= window) break;
                    dst[i + j] += pa[i] * pb[j];
                }
            }
        }
    }
    return TateElement::make(a.varCount_, s, std::move(raw), cap, exact,
                       exact ? kInfValuation : s + window);
}

TateElement TateElement::scaledBy(const LaurentScalar& s) const {
    return *this * fromScalar(s, varCount_);
}

TateElement TateElement::scaledByRational(const Rational& r) const {
    return *this * constant(r, varCount_, prec_);
}

TateElement TateElement::derivative(int i) const {
    if (i < 1 || i > varCount_)
        throw IndexOutOfRangeError("derivative index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount_));
    if (body_.empty()) return *this;  // d of (in)exact zero
    Body raw;
    for (const auto& [alpha, poly] : body_) {
        int e = alpha[static_cast<std::size_t>(i - 1)];
        if (e == 0) continue;
        MultiIndex beta = alpha;
        beta[static_cast<std::size_t>(i - 1)] = e - 1;
        std::vector<Rational> scaled = poly;
        for (auto& c : scaled) c *= Rational(e);
        auto& dst = raw[beta];
        if (dst.size() < scaled.size()) dst.resize(scaled.size(), Rational(0));
        for (std::size_t j = 0; j < scaled.size(); ++j) dst[j] += scaled[j];
    }
    return make(varCount_, scale_, std::move(raw), prec_, exact_, absolutePrecision());
}

TateElement TateElement::integrate(int i) const {
    if (i < 1 || i > varCount_)
        throw IndexOutOfRangeError("integrate index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount_));
    if (body_.empty()) return *this;
    Body raw;
    for (const auto& [alpha, poly] : body_) {
        int e = alpha[static_cast<std::size_t>(i - 1)];
        MultiIndex beta = alpha;
        beta[static_cast<std::size_t>(i - 1)] = e + 1;
        std::vector<Rational> scaled = poly;
        Rational inv = Rational(1) / Rational(e + 1);
        for (auto& c : scaled) c *= inv;
        raw[beta] = std::move(scaled);
    }
    return make(varCount_, scale_, std::move(raw), prec_, exact_, absolutePrecision());
}

TateElement TateElement::invertUnit() const {
    if (body_.empty()) throw NotAUnitError("cannot invert an element indistinguishable from zero");
    MultiIndex zeroIdx(static_cast<std::size_t>(varCount_), 0);
    auto it = body_.find(zeroIdx);
    if (it == body_.end() || isZero(it->second[0]))
        throw NotAUnitError("no scalar part of full norm: element is not c(1+h) with |h| < 1");
    for (const auto& [alpha, poly] : body_) {
        if (alpha == zeroIdx) continue;
        if (!isZero(poly[0]))
            throw NotAUnitError("non-constant term of full norm: perturbation is not a contraction");
    }
    LaurentScalar c = coefficientOf(zeroIdx);
    LaurentScalar cInv = c.inverse();
    TateElement h = scaledBy(cInv) - constant(Rational(1), varCount_, prec_);
    if (h.zeroStatus() != ZeroStatus::NonZero) return fromScalar(cInv, varCount_);
    if (h.gaussNorm().value < 1)
        throw NotAUnitError("perturbation has norm >= 1 at the working precision");
    TateElement result = constant(Rational(1), varCount_, prec_);
    TateElement power = constant(Rational(1), varCount_, prec_);
    for (int k = 1; k < prec_; ++k) {
        power = power * (-h);
        if (power.zeroStatus() != ZeroStatus::NonZero) break;
        result = result + power;
    }
    result = result.scaledBy(cInv);
    // The dropped tail c^-1 * sum_{k>=p} (-h)^k has valuation >= v(c^-1) + p,
    // so the truncated series is only known modulo t^(v(c^-1)+p).
    int bound = std::min(result.absolutePrecision(), cInv.valuationRaw() + prec_);
    return make(varCount_, result.scale_, std::move(result.body_), prec_, /*exact=*/false, bound);
}

TateElement TateElement::truncatedTo(int absPrec) const {
    int bound = std::min(absolutePrecision(), absPrec);
    if (body_.empty()) {
        if (exact_ && bound == kInfValuation) return *this;
        return inexactZero(varCount_, std::min(scale_, bound), prec_);
    }
    return make(varCount_, scale_, body_, prec_, /*exact=*/false, bound);
}

bool TateElement::equalAtPrecision(const TateElement& a, const TateElement& b) {
    return (a - b).zeroStatus() != ZeroStatus::NonZero;
}

std::string TateElement::toString(const std::string& varPrefix) const {
    if (body_.empty()) {
        if (exact_) return "0";
        return "O(t^" + std::to_string(scale_) + ")";
    }
    std::ostringstream out;
    bool first = true;
    // highest degrevlex term first
    for (auto it = body_.rbegin(); it != body_.rend(); ++it) {
        const MultiIndex& alpha = it->first;
        LaurentScalar coeff =
            LaurentScalar::fromCoefficients(scale_, it->second, prec_, /*exact=*/true);
        std::string cs = coeff.toString();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (negated) out << "-";
            first = false;
        } else {
            out << (negated ? " - " : " + ");
        }
        std::ostringstream mon;
        for (std::size_t v = 0; v < alpha.size(); ++v) {
            if (alpha[v] == 0) continue;
            if (mon.tellp() > 0) mon << "*";
            mon << varPrefix << (v + 1);
            if (alpha[v] > 1) mon << "^" << alpha[v];
        }
        bool needParens = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (mon.tellp() == 0) {
            out << cs;
        } else if (cs == "1") {
            out << mon.str();
        } else {
            if (needParens)
                out << "(" << cs << ")*" << mon.str();
            else
                out << cs << "*" << mon.str();
        }
    }
    if (!exact_) out << " + O(t^" << absolutePrecision() << ")";
    return out.str();
}

}  // namespace tatedr
