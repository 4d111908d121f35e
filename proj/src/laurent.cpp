#include "tatedr/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace tatedr {

namespace {

void trimTrailingZeros(std::vector<Rational>& v) {
    while (!v.empty() && isZero(v.back())) v.pop_back();
}

}  // namespace

LaurentScalar LaurentScalar::inexactZero(int absPrec, int cap) {
    LaurentScalar z(cap);
    z.val_ = absPrec;
    z.exact_ = false;
    return z;
}

LaurentScalar LaurentScalar::fromRational(const Rational& r, int cap) {
    if (isZero(r)) return zero(cap);
    return make(0, {r}, cap, /*exact=*/true, kInfValuation);
}

LaurentScalar LaurentScalar::fromLong(long n, int cap) { return fromRational(Rational(n), cap); }

LaurentScalar LaurentScalar::tPower(int k, int cap) {
    return make(k, {Rational(1)}, cap, /*exact=*/true, kInfValuation);
}

LaurentScalar LaurentScalar::fromCoefficients(int val, std::vector<Rational> coeffs, int cap,
                                              bool exact) {
    int absLimit = exact ? kInfValuation : val + static_cast<int>(coeffs.size());
    return make(val, std::move(coeffs), cap, exact, absLimit);
}

/// Shared normalization: strips leading zero digits (raising the valuation and
/// spending relative precision), enforces the cap, and downgrades exactness
/// whenever a nonzero digit had to be discarded.
LaurentScalar LaurentScalar::make(int val, std::vector<Rational> coeffs, int cap, bool exact,
                                  int absPrecLimit) {
    std::size_t lead = 0;
    while (lead < coeffs.size() && isZero(coeffs[lead])) ++lead;
    if (lead > 0) {
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
        val += static_cast<int>(lead);
    }
    if (coeffs.empty()) {
        if (exact) return zero(cap);
        return inexactZero(absPrecLimit, cap);
    }
    int window = cap;
    if (!exact && absPrecLimit != kInfValuation) window = std::min(window, absPrecLimit - val);
    if (window <= 0) return inexactZero(absPrecLimit, cap);
    if (static_cast<int>(coeffs.size()) > window) {
        bool dropped = false;
        for (std::size_t i = static_cast<std::size_t>(window); i < coeffs.size(); ++i)
            if (!isZero(coeffs[i])) dropped = true;
        coeffs.resize(static_cast<std::size_t>(window));
        if (dropped) exact = false;
    }
    if (exact)
        window = cap;  // relative precision is unbounded; cap only limits storage
    trimTrailingZeros(coeffs);
    LaurentScalar r(cap);
    r.val_ = val;
    r.unit_ = std::move(coeffs);
    r.relPrec_ = window;
    r.exact_ = exact;
    return r;
}

ZeroStatus LaurentScalar::zeroStatus() const {
    if (!unit_.empty()) return ZeroStatus::NonZero;
    return exact_ ? ZeroStatus::Zero : ZeroStatus::IndistinguishableAtPrecision;
}

ValuationBound LaurentScalar::valuation() const {
    if (!unit_.empty()) return {val_, false};
    return {val_, true};  // val_ == kInfValuation for exact zero
}

int LaurentScalar::absolutePrecision() const {
    if (exact_) return kInfValuation;
    if (unit_.empty()) return val_;
    return val_ + relPrec_;
}

Rational LaurentScalar::unitCoefficient(int i) const {
    if (i < 0 || i >= static_cast<int>(unit_.size())) return Rational(0);
    return unit_[static_cast<std::size_t>(i)];
}

Rational LaurentScalar::coefficientAt(int k) const {
    if (unit_.empty()) return Rational(0);
    return unitCoefficient(k - val_);
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar r = *this;
    for (auto& c : r.unit_) c = -c;
    return r;
}

LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
    int cap = std::min(a.cap_, b.cap_);
    if (a.unit_.empty() && a.exact_) {
        // exact zero + b = b (re-capped)
        return LaurentScalar::make(b.val_, b.unit_, cap, b.exact_, b.absolutePrecision());
    }
    if (b.unit_.empty() && b.exact_)
        return LaurentScalar::make(a.val_, a.unit_, cap, a.exact_, a.absolutePrecision());

    int absPrec = std::min(a.absolutePrecision(), b.absolutePrecision());
    if (a.unit_.empty() && b.unit_.empty())
        return LaurentScalar::inexactZero(std::min(a.val_, b.val_), cap);

    int lo = kInfValuation;
    if (!a.unit_.empty()) lo = std::min(lo, a.val_);
    if (!b.unit_.empty()) lo = std::min(lo, b.val_);

    bool exact = a.exact_ && b.exact_;
    int hi;  // one past the highest digit we can claim to know
    if (exact) {
        hi = std::max(a.val_ + static_cast<int>(a.unit_.size()),
                      b.val_ + static_cast<int>(b.unit_.size()));
    } else {
        hi = absPrec;
        if (hi <= lo) return LaurentScalar::inexactZero(absPrec, cap);
    }

    std::vector<Rational> sum(static_cast<std::size_t>(hi - lo), Rational(0));
    for (std::size_t i = 0; i < a.unit_.size(); ++i) {
        int k = a.val_ + static_cast<int>(i);
        if (k >= lo && k < hi) sum[static_cast<std::size_t>(k - lo)] += a.unit_[i];
    }
    for (std::size_t i = 0; i < b.unit_.size(); ++i) {
        int k = b.val_ + static_cast<int>(i);
        if (k >= lo && k < hi) sum[static_cast<std::size_t>(k - lo)] += b.unit_[i];
    }
    return LaurentScalar::make(lo, std::move(sum), cap, exact, exact ? kInfValuation : absPrec);
}

LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) { return a + (-b); }

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    int cap = std::min(a.cap_, b.cap_);
    if (a.unit_.empty() || b.unit_.empty()) {
        if ((a.unit_.empty() && a.exact_) || (b.unit_.empty() && b.exact_))
            return LaurentScalar::zero(cap);
        // |z * b| <= |t|^(bound(z) + val-or-bound(b))
        return LaurentScalar::inexactZero(a.val_ + b.val_, cap);
    }
    int val = a.val_ + b.val_;
    bool exact = a.exact_ && b.exact_;
    int window;
    if (exact) {
        window = static_cast<int>(a.unit_.size() + b.unit_.size()) - 1;
    } else {
        window = std::min({a.relativePrecision(), b.relativePrecision(), cap});
    }
    std::vector<Rational> prod(static_cast<std::size_t>(window), Rational(0));
    for (std::size_t i = 0; i < a.unit_.size(); ++i) {
        if (static_cast<int>(i) >= window) break;
        for (std::size_t j = 0; j < b.unit_.size(); ++j) {
            if (static_cast<int>(i + j) >= window) break;
            prod[i + j] += a.unit_[i] * b.unit_[j];
        }
    }
    return LaurentScalar::make(val, std::move(prod), cap, exact,
                               exact ? kInfValuation : val + window);
}

LaurentScalar LaurentScalar::inverse() const {
    if (unit_.empty())
        throw InexactZeroError(exact_ ? "inverse of zero"
                                      : "inverse of element indistinguishable from zero at "
                                        "precision t^" +
                                            std::to_string(val_));
    bool exact = exact_ && unit_.size() == 1;
    int window = exact ? 1 : std::min(relativePrecision(), cap_);
    std::vector<Rational> inv(static_cast<std::size_t>(window), Rational(0));
    inv[0] = 1 / unit_[0];
    for (int k = 1; k < window; ++k) {
        Rational acc(0);
        for (int j = 1; j <= k; ++j) {
            if (j < static_cast<int>(unit_.size()))
                acc += unit_[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
        }
        inv[static_cast<std::size_t>(k)] = -acc * inv[0];
    }
    return make(-val_, std::move(inv), cap_, exact, exact ? kInfValuation : -val_ + window);
}

LaurentScalar LaurentScalar::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    LaurentScalar acc = one(cap_);
    LaurentScalar base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

LaurentScalar LaurentScalar::scaledBy(const Rational& r) const {
    return *this * fromRational(r, cap_);
}

LaurentScalar LaurentScalar::timesTPower(int k) const {
    LaurentScalar r = *this;
    if (r.val_ != kInfValuation) r.val_ += k;
    return r;
}

bool LaurentScalar::equalAtPrecision(const LaurentScalar& a, const LaurentScalar& b) {
    return (a - b).zeroStatus() != ZeroStatus::NonZero;
}

bool LaurentScalar::identicalTo(const LaurentScalar& other) const {
    return val_ == other.val_ && unit_ == other.unit_ && relPrec_ == other.relPrec_ &&
           cap_ == other.cap_ && exact_ == other.exact_;
}

std::string LaurentScalar::toString() const {
    std::ostringstream out;
    if (unit_.empty()) {
        if (exact_)
            out << "0";
        else
            out << "O(t^" << val_ << ")";
        return out.str();
    }
    bool first = true;
    for (std::size_t i = 0; i < unit_.size(); ++i) {
        const Rational& c = unit_[i];
        if (isZero(c)) continue;
        int k = val_ + static_cast<int>(i);
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unitCoeff = abs == 1;
        if (k == 0) {
            out << tatedr::toString(abs);
        } else {
            if (!unitCoeff) out << tatedr::toString(abs) << "*";
            out << "t";
            if (k != 1) out << "^" << k;
        }
    }
    if (!exact_) out << " + O(t^" << absolutePrecision() << ")";
    return out.str();
}

}  // namespace tatedr
