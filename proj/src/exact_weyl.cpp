#include "tatedr/exact_weyl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tatedr/errors.hpp"

namespace tatedr {

int dBlockDegree(const MultiIndex& key) {
    int d = 0;
    for (std::size_t i = key.size() / 2; i < key.size(); ++i) d += key[i];
    return d;
}

bool WeylOrderCompare::operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = dBlockDegree(a), db = dBlockDegree(b);
    if (da != db) return da < db;
    return degrevlexLess(a, b);
}

namespace {

void forEachSubIndex(const MultiIndex& bound, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex gamma(bound.size(), 0);
    while (true) {
        fn(gamma);
        std::size_t i = 0;
        while (i < gamma.size()) {
            if (gamma[i] < bound[i]) {
                ++gamma[i];
                for (std::size_t j = 0; j < i; ++j) gamma[j] = 0;
                break;
            }
            ++i;
        }
        if (i == gamma.size()) return;
    }
}

void accumulate(ExactWeyl::Terms& terms, const MultiIndex& key, const RatFun& c) {
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.isZero()) terms.erase(it);
    }
}

}  // namespace

ExactWeyl ExactWeyl::zero(int varCount) { return ExactWeyl(varCount); }

ExactWeyl ExactWeyl::one(int varCount) {
    return fromRatFun(RatFun::constant(Rational(1)), varCount);
}

ExactWeyl ExactWeyl::fromRatFun(const RatFun& c, int varCount) {
    return term(MultiIndex(static_cast<std::size_t>(2 * varCount), 0), c);
}

ExactWeyl ExactWeyl::x(int i, int varCount) {
    if (i < 1 || i > varCount)
        throw IndexOutOfRangeError("variable index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount));
    MultiIndex key(static_cast<std::size_t>(2 * varCount), 0);
    key[static_cast<std::size_t>(i - 1)] = 1;
    return term(key, RatFun::constant(Rational(1)));
}

ExactWeyl ExactWeyl::d(int i, int varCount) {
    if (i < 1 || i > varCount)
        throw IndexOutOfRangeError("derivation index " + std::to_string(i) + " outside 1.." +
                                   std::to_string(varCount));
    MultiIndex key(static_cast<std::size_t>(2 * varCount), 0);
    key[static_cast<std::size_t>(varCount + i - 1)] = 1;
    return term(key, RatFun::constant(Rational(1)));
}

ExactWeyl ExactWeyl::term(const MultiIndex& key, const RatFun& c) {
    ExactWeyl p(static_cast<int>(key.size() / 2));
    if (!c.isZero()) p.terms_.emplace(key, c);
    return p;
}

ExactWeyl ExactWeyl::make(int varCount, Terms terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.isZero())
            it = terms.erase(it);
        else
            ++it;
    }
    ExactWeyl p(varCount);
    p.terms_ = std::move(terms);
    return p;
}

RatFun ExactWeyl::coefficientOf(const MultiIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? RatFun() : it->second;
}

void ExactWeyl::forEachTerm(
    const std::function<void(const MultiIndex&, const RatFun&)>& fn) const {
    for (const auto& [key, c] : terms_) fn(key, c);
}

int ExactWeyl::order() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, dBlockDegree(key));
    return d;
}

int ExactWeyl::xDegree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) {
        int deg = 0;
        for (std::size_t i = 0; i < key.size() / 2; ++i) deg += key[i];
        d = std::max(d, deg);
    }
    return d;
}

bool ExactWeyl::isScalar() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    return totalDegree(terms_.begin()->first) == 0;
}

RatFun ExactWeyl::asRatFun() const {
    if (terms_.empty()) return RatFun();
    if (!isScalar()) throw std::logic_error("asRatFun called on a non-scalar operator");
    return terms_.begin()->second;
}

std::optional<MultiIndex> ExactWeyl::leadingKey() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

RatFun ExactWeyl::leadingCoefficient() const {
    if (terms_.empty()) return RatFun();
    return terms_.rbegin()->second;
}

ExactWeyl ExactWeyl::operator-() const {
    ExactWeyl r(varCount_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
}

ExactWeyl operator+(const ExactWeyl& a, const ExactWeyl& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    ExactWeyl::Terms t = a.terms_;
    for (const auto& [key, c] : b.terms_) accumulate(t, key, c);
    return ExactWeyl::make(a.varCount_, std::move(t));
}

ExactWeyl operator-(const ExactWeyl& a, const ExactWeyl& b) { return a + (-b); }

ExactWeyl operator*(const ExactWeyl& a, const ExactWeyl& b) {
    if (a.varCount_ != b.varCount_) throw std::invalid_argument("varCount mismatch");
    std::size_t n = static_cast<std::size_t>(a.varCount_);
    ExactWeyl::Terms out;
    for (const auto& [keyA, f] : a.terms_) {
        for (const auto& [keyB, g] : b.terms_) {
            // keyA = [a1 | b1], keyB = [a2 | b2]; commute ∂^b1 past x^a2
            MultiIndex bound(n);
            for (std::size_t i = 0; i < n; ++i) bound[i] = std::min(keyA[n + i], keyB[i]);
            forEachSubIndex(bound, [&](const MultiIndex& gamma) {
                Rational coeff(1);
                for (std::size_t i = 0; i < n; ++i)
                    coeff *= binomial(keyA[n + i], gamma[i]) * fallingFactorial(keyB[i], gamma[i]);
                MultiIndex key(2 * n);
                for (std::size_t i = 0; i < n; ++i) {
                    key[i] = keyA[i] + keyB[i] - gamma[i];
                    key[n + i] = keyA[n + i] + keyB[n + i] - gamma[i];
                }
                accumulate(out, key, (f * g).scaledBy(coeff));
            });
        }
    }
    return ExactWeyl::make(a.varCount_, std::move(out));
}

ExactWeyl ExactWeyl::scaledBy(const RatFun& c) const {
    ExactWeyl r(varCount_);
    if (c.isZero()) return r;
    for (const auto& [key, f] : terms_) r.terms_.emplace(key, f * c);
    return r;
}

ExactWeyl ExactWeyl::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative operator power");
    ExactWeyl acc = one(varCount_);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

ExactWeyl ExactWeyl::transpose() const {
    std::size_t n = static_cast<std::size_t>(varCount_);
    Terms out;
    for (const auto& [key, c] : terms_) {
        int sign = dBlockDegree(key) % 2 == 0 ? 1 : -1;
        MultiIndex bound(n);
        for (std::size_t i = 0; i < n; ++i) bound[i] = std::min(key[n + i], key[i]);
        forEachSubIndex(bound, [&](const MultiIndex& gamma) {
            Rational coeff(sign);
            for (std::size_t i = 0; i < n; ++i)
                coeff *= binomial(key[n + i], gamma[i]) * fallingFactorial(key[i], gamma[i]);
            MultiIndex shifted(2 * n);
            for (std::size_t i = 0; i < n; ++i) {
                shifted[i] = key[i] - gamma[i];
                shifted[n + i] = key[n + i] - gamma[i];
            }
            accumulate(out, shifted, c.scaledBy(coeff));
        });
    }
    return make(varCount_, std::move(out));
}

WeylOperator ExactWeyl::toTruncated(int prec) const {
    std::size_t n = static_cast<std::size_t>(varCount_);
    WeylOperator p = WeylOperator::zero(varCount_, prec);
    for (const auto& [key, c] : terms_) {
        MultiIndex xExp(key.begin(), key.begin() + static_cast<long>(n));
        MultiIndex dExp(key.begin() + static_cast<long>(n), key.end());
        TateElement coeff = TateElement::monomial(xExp, c.expandAt0(prec), varCount_);
        p = p + WeylOperator::term(dExp, coeff);
    }
    return p;
}

std::string ExactWeyl::toString() const {
    if (terms_.empty()) return "0";
    std::size_t n = static_cast<std::size_t>(varCount_);
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const MultiIndex& key = it->first;
        std::string cs = it->second.toString();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        std::ostringstream mon;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == 0) continue;
            if (mon.tellp() > 0) mon << "*";
            mon << (i < n ? "x" : "d") << (i < n ? i + 1 : i + 1 - n);
            if (key[i] > 1) mon << "^" << key[i];
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

ExactWeyl exactFromTruncated(const WeylOperator& op) {
    const int n = op.varCount();
    ExactWeyl out = ExactWeyl::zero(n);
    op.forEachTerm([&](const MultiIndex& alpha, const TateElement& coeff) {
        if (!coeff.isExact()) {
            throw UnsupportedCoefficientsError(
                "coefficient of d^" + std::to_string(totalDegree(alpha)) +
                "-term is only known to finite t-precision; exact analysis needs exact coefficients");
        }
        coeff.forEachTerm([&](const MultiIndex& beta, const LaurentScalar& s) {
            if (s.zeroStatus() == ZeroStatus::Zero) return;
            if (!s.isExact()) {
                throw UnsupportedCoefficientsError(
                    "scalar coefficient is only known to finite t-precision; exact analysis needs exact coefficients");
            }
            RatFun c = RatFun(QPoly::fromCoefficients(s.storedUnit())) * RatFun::tPower(s.valuationRaw());
            MultiIndex key(2 * static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) key[static_cast<std::size_t>(i)] = beta[static_cast<std::size_t>(i)];
            for (int i = 0; i < n; ++i) key[static_cast<std::size_t>(n + i)] = alpha[static_cast<std::size_t>(i)];
            out = out + ExactWeyl::term(key, c);
        });
    });
    return out;
}

}  // namespace tatedr
