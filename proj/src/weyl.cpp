#include "tatedr/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tatedr/errors.hpp"

namespace tatedr {

namespace {

/// Visits every gamma with 0 <= gamma <= alpha componentwise.
void forEachSubIndex(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex gamma(alpha.size(), 0);
    while (true) {
        fn(gamma);
        std::size_t i = 0;
        while (i < gamma.size()) {
            if (gamma[i] < alpha[i]) {
                ++gamma[i];
                for (std::size_t j = 0; j < i; ++j) gamma[j] = 0;
                break;
            }
            ++i;
        }
        if (i == gamma.size()) return;
    }
}

Rational binomialProduct(const MultiIndex& alpha, const MultiIndex& gamma) {
    Rational b(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) b *= binomial(alpha[i], gamma[i]);
    return b;
}

TateElement iteratedDerivative(TateElement f, const MultiIndex& gamma) {
    for (std::size_t i = 0; i < gamma.size(); ++i)
        for (int k = 0; k < gamma[i]; ++k) f = f.derivative(static_cast<int>(i) + 1);
    return f;
}

void accumulate(WeylOperator::Terms& terms, const MultiIndex& alpha, const TateElement& f) {
    auto it = terms.find(alpha);
    if (it == terms.end())
        terms.emplace(alpha, f);
    else
        it->second = it->second + f;
}

}  // namespace

WeylOperator WeylOperator::zero(int varCount, int prec) { return WeylOperator(varCount, prec); }

WeylOperator WeylOperator::one(int varCount, int prec) {
    return fromCoefficient(TateElement::constant(Rational(1), varCount, prec));
}

WeylOperator WeylOperator::fromCoefficient(const TateElement& f) {
    Terms t;
    t.emplace(MultiIndex(static_cast<std::size_t>(f.varCount()), 0), f);
    return make(f.varCount(), f.tPrecision(), std::move(t));
}

WeylOperator WeylOperator::fromScalar(const LaurentScalar& s, int varCount) {
    return fromCoefficient(TateElement::fromScalar(s, varCount));
}

WeylOperator WeylOperator::derivation(int i, int varCount, int prec) {
    if (i < 1 || i > varCount)
        throw IndexOutOfRangeError("derivation index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount));
    Terms t;
    MultiIndex alpha(static_cast<std::size_t>(varCount), 0);
    alpha[static_cast<std::size_t>(i - 1)] = 1;
    t.emplace(alpha, TateElement::constant(Rational(1), varCount, prec));
    return make(varCount, prec, std::move(t));
}

WeylOperator WeylOperator::term(const MultiIndex& alpha, const TateElement& coeff) {
    if (static_cast<int>(alpha.size()) != coeff.varCount())
        throw std::invalid_argument("exponent length does not match varCount");
    Terms t;
    t.emplace(alpha, coeff);
    return make(coeff.varCount(), coeff.tPrecision(), std::move(t));
}

WeylOperator WeylOperator::make(int varCount, int prec, Terms terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.zeroStatus() == ZeroStatus::Zero)
            it = terms.erase(it);
        else
            ++it;
    }
    WeylOperator p(varCount, prec);
    p.terms_ = std::move(terms);
    return p;
}

ZeroStatus WeylOperator::zeroStatus() const {
    if (terms_.empty()) return ZeroStatus::Zero;
    for (const auto& [alpha, f] : terms_)
        if (f.zeroStatus() == ZeroStatus::NonZero) return ZeroStatus::NonZero;
    return ZeroStatus::IndistinguishableAtPrecision;
}

TateElement WeylOperator::coefficientOf(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    if (it == terms_.end()) return TateElement::zero(varCount_, prec_);
    return it->second;
}

void WeylOperator::forEachTerm(
    const std::function<void(const MultiIndex&, const TateElement&)>& fn) const {
    for (const auto& [alpha, f] : terms_) fn(alpha, f);
}

int WeylOperator::order() const {
    int d = -1;
    for (const auto& [alpha, f] : terms_) d = std::max(d, totalDegree(alpha));
    return d;
}

TateElement WeylOperator::symbol() const {
    int d = -1;
    for (const auto& [alpha, f] : terms_)
        if (f.zeroStatus() == ZeroStatus::NonZero) d = std::max(d, totalDegree(alpha));
    if (d < 0)
        throw InexactZeroError("symbol of an operator indistinguishable from zero at precision");
    int n = varCount_;
    TateElement sigma = TateElement::zero(2 * n, prec_);
    for (const auto& [alpha, f] : terms_) {
        if (totalDegree(alpha) != d || f.zeroStatus() != ZeroStatus::NonZero) continue;
        f.forEachTerm([&](const MultiIndex& xexp, const LaurentScalar& c) {
            MultiIndex combined(static_cast<std::size_t>(2 * n), 0);
            for (int i = 0; i < n; ++i) combined[static_cast<std::size_t>(i)] = xexp[static_cast<std::size_t>(i)];
            for (int i = 0; i < n; ++i)
                combined[static_cast<std::size_t>(n + i)] = alpha[static_cast<std::size_t>(i)];
            sigma = sigma + TateElement::monomial(combined, c, 2 * n);
        });
    }
    return sigma;
}

ValuationBound WeylOperator::operatorNorm() const {
    if (terms_.empty()) return {kInfValuation, true};
    int best = kInfValuation;
    bool bestIsBound = true;
    for (const auto& [alpha, f] : terms_) {
        ValuationBound v = f.gaussNorm();
        if (v.value < best || (v.value == best && !v.isLowerBound)) {
            best = v.value;
            bestIsBound = v.isLowerBound;
        }
    }
    return {best, bestIsBound};
}

WeylOperator WeylOperator::operator-() const {
    Terms t;
    for (const auto& [alpha, f] : terms_) t.emplace(alpha, -f);
    return make(varCount_, prec_, std::move(t));
}

WeylOperator operator+(const WeylOperator& a, const WeylOperator& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    WeylOperator::Terms t = a.terms_;
    for (const auto& [alpha, f] : b.terms_) accumulate(t, alpha, f);
    return WeylOperator::make(a.varCount_, std::min(a.prec_, b.prec_), std::move(t));
}

WeylOperator operator-(const WeylOperator& a, const WeylOperator& b) { return a + (-b); }

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    WeylOperator::Terms out;
    for (const auto& [alpha, f] : a.terms_) {
        for (const auto& [beta, g] : b.terms_) {
            forEachSubIndex(alpha, [&](const MultiIndex& gamma) {
                TateElement dg = iteratedDerivative(g, gamma);
                if (dg.zeroStatus() == ZeroStatus::Zero) return;
                MultiIndex idx(alpha.size());
                for (std::size_t i = 0; i < idx.size(); ++i)
                    idx[i] = alpha[i] - gamma[i] + beta[i];
                accumulate(out, idx, (f * dg).scaledByRational(binomialProduct(alpha, gamma)));
            });
        }
    }
    return WeylOperator::make(a.varCount_, std::min(a.prec_, b.prec_), std::move(out));
}

WeylOperator WeylOperator::scaledBy(const LaurentScalar& s) const {
    return scaledByCoefficient(TateElement::fromScalar(s, varCount_));
}

WeylOperator WeylOperator::scaledByCoefficient(const TateElement& f) const {
    Terms t;
    for (const auto& [alpha, g] : terms_) t.emplace(alpha, f * g);
    return make(varCount_, std::min(prec_, f.tPrecision()), std::move(t));
}

TateElement WeylOperator::apply(const TateElement& f) const {
    if (f.varCount() != varCount_) throw std::invalid_argument("varCount mismatch");
    TateElement acc = TateElement::zero(varCount_, std::min(prec_, f.tPrecision()));
    for (const auto& [alpha, coeff] : terms_) acc = acc + coeff * iteratedDerivative(f, alpha);
    return acc;
}

WeylOperator WeylOperator::transpose() const {
    Terms out;
    for (const auto& [alpha, f] : terms_) {
        int sign = totalDegree(alpha) % 2 == 0 ? 1 : -1;
        forEachSubIndex(alpha, [&](const MultiIndex& gamma) {
            TateElement df = iteratedDerivative(f, gamma);
            if (df.zeroStatus() == ZeroStatus::Zero) return;
            MultiIndex idx(alpha.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = alpha[i] - gamma[i];
            accumulate(out, idx,
                       df.scaledByRational(Rational(sign) * binomialProduct(alpha, gamma)));
        });
    }
    return make(varCount_, prec_, std::move(out));
}

WeylOperator WeylOperator::invertUnit() const {
    MultiIndex zeroD(static_cast<std::size_t>(varCount_), 0);
    MultiIndex zeroX(static_cast<std::size_t>(varCount_), 0);
    LaurentScalar c = coefficientOf(zeroD).coefficientOf(zeroX);
    if (c.zeroStatus() != ZeroStatus::NonZero)
        throw NotAUnitError("no certified-nonzero scalar part to factor out");
    LaurentScalar cInv = c.inverse();
    WeylOperator q = one(varCount_, prec_) - scaledBy(cInv);  // P = c(1 - q)
    WeylOperator result(varCount_, prec_);
    if (q.zeroStatus() == ZeroStatus::Zero) {
        result = fromScalar(cInv, varCount_);
    } else {
        ValuationBound qn = q.operatorNorm();
        if (qn.value < 1)
            throw NotAUnitError("perturbation has operator norm >= 1 at the working precision");
        result = one(varCount_, prec_);
        WeylOperator power = one(varCount_, prec_);
        for (int k = 1; k < prec_; ++k) {
            power = power * q;
            if (power.zeroStatus() == ZeroStatus::Zero) break;
            result = result + power;
        }
        result = result.scaledBy(cInv);
        // dropped tail (Σ_{k>=p} q^k) c^-1 has operator norm >= v(c^-1) + p
        int bound = cInv.valuationRaw() + prec_;
        Terms marked;
        for (const auto& [alpha, f] : result.terms_) marked.emplace(alpha, f.truncatedTo(bound));
        result = make(varCount_, prec_, std::move(marked));
    }
    WeylOperator unit = one(varCount_, prec_);
    if ((*this * result - unit).truncatedTo(prec_).zeroStatus() == ZeroStatus::NonZero ||
        (result * *this - unit).truncatedTo(prec_).zeroStatus() == ZeroStatus::NonZero)
        throw NotAUnitError("inverse self-check failed: P * P^-1 != 1 mod t^p");
    return result;
}

WeylOperator WeylOperator::truncatedTo(int absPrec) const {
    Terms t;
    for (const auto& [alpha, f] : terms_) t.emplace(alpha, f.truncatedTo(absPrec));
    return make(varCount_, prec_, std::move(t));
}

bool WeylOperator::equalAtPrecision(const WeylOperator& a, const WeylOperator& b) {
    return (a - b).zeroStatus() != ZeroStatus::NonZero;
}

std::string WeylOperator::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const MultiIndex& alpha = it->first;
        std::string cs = it->second.toString();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        std::ostringstream mon;
        for (std::size_t v = 0; v < alpha.size(); ++v) {
            if (alpha[v] == 0) continue;
            if (mon.tellp() > 0) mon << "*";
            mon << "d" << (v + 1);
            if (alpha[v] > 1) mon << "^" << alpha[v];
        }
        bool multiTerm = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (first) {
            if (negated) out << "-";
            first = false;
        } else {
            out << (negated ? " - " : " + ");
        }
        if (mon.tellp() == 0) {
            out << cs;
        } else if (cs == "1") {
            out << mon.str();
        } else if (multiTerm) {
            out << "(" << cs << ")*" << mon.str();
        } else {
            out << cs << "*" << mon.str();
        }
    }
    return out.str();
}

std::string symbolToString(const TateElement& symbolPoly) {
    int twoN = symbolPoly.varCount();
    int n = twoN / 2;
    std::string s = symbolPoly.toString("x");
    // rewrite the upper block x(n+1)..x(2n) as xi1..xin
    for (int i = twoN; i > n; --i) {
        std::string from = "x" + std::to_string(i);
        std::string to = "xi" + std::to_string(i - n);
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    }
    return s;
}

}  // namespace tatedr
