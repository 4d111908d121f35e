#include "tatedr/ratfun.hpp"

#include <sstream>
#include <stdexcept>

namespace tatedr {

namespace {

void trimHigh(std::vector<Rational>& v) {
    while (!v.empty() && isZero(v.back())) v.pop_back();
}

}  // namespace

QPoly::QPoly(const Rational& c) {
    if (sgn(c) != 0) coeffs_ = {c};
}

QPoly QPoly::t() { return tPower(1); }

QPoly QPoly::tPower(int k) {
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c.back() = Rational(1);
    return fromCoefficients(std::move(c));
}

QPoly QPoly::fromCoefficients(std::vector<Rational> coeffs) {
    QPoly p;
    trimHigh(coeffs);
    p.coeffs_ = std::move(coeffs);
    return p;
}

int QPoly::tValuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) return static_cast<int>(i);
    return kInfValuation;
}

Rational QPoly::coefficient(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational QPoly::leadingCoefficient() const {
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return QPoly::fromCoefficients(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.isZero() || b.isZero()) return QPoly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return QPoly::fromCoefficients(std::move(c));
}

QPoly QPoly::scaledBy(const Rational& r) const {
    QPoly out = *this;
    for (auto& c : out.coeffs_) c *= r;
    trimHigh(out.coeffs_);
    return out;
}

std::pair<QPoly, QPoly> QPoly::divRem(const QPoly& a, const QPoly& b) {
    if (b.isZero()) throw std::domain_error("polynomial division by zero");
    QPoly r = a;
    int db = b.degree();
    Rational lb = b.leadingCoefficient();
    std::vector<Rational> q;
    if (r.degree() >= db) q.assign(static_cast<std::size_t>(r.degree() - db) + 1, Rational(0));
    while (!r.isZero() && r.degree() >= db) {
        int shift = r.degree() - db;
        Rational factor = r.leadingCoefficient() / lb;
        q[static_cast<std::size_t>(shift)] = factor;
        r = r - b * QPoly::tPower(shift).scaledBy(factor);
    }
    return {QPoly::fromCoefficients(std::move(q)), r};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.isZero()) {
        QPoly r = divRem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.isZero()) return a;
    return a.scaledBy(Rational(1) / a.leadingCoefficient());
}

QPoly QPoly::derivative() const {
    if (coeffs_.size() <= 1) return QPoly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return fromCoefficients(std::move(c));
}

Rational QPoly::evaluate(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

namespace {

/// Renders Σ coeffs[i] t^(i - shift); exponents may be negative.
std::string laurentTermsString(const std::vector<Rational>& coeffs, int shift) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        Rational c = coeffs[i];
        bool neg = sgn(c) < 0;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        int e = static_cast<int>(i) - shift;
        Rational mag = neg ? Rational(-c) : c;
        bool unitCoeff = mag == Rational(1) && e != 0;
        if (!unitCoeff) out << mag.get_str();
        if (e != 0) {
            if (!unitCoeff) out << "*";
            out << "t";
            if (e != 1) out << "^" << e;
        }
    }
    if (first) return "0";
    return out.str();
}

}  // namespace

std::string QPoly::toString() const { return laurentTermsString(coeffs_, 0); }

RatFun::RatFun(QPoly numerator, QPoly denominator) {
    if (denominator.isZero()) throw std::domain_error("zero denominator in k(t)");
    if (numerator.isZero()) {
        num_ = QPoly();
        den_ = QPoly(Rational(1));
        return;
    }
    QPoly g = QPoly::gcd(numerator, denominator);
    if (g.degree() > 0) {
        numerator = QPoly::divRem(numerator, g).first;
        denominator = QPoly::divRem(denominator, g).first;
    }
    Rational lc = denominator.leadingCoefficient();
    num_ = numerator.scaledBy(Rational(1) / lc);
    den_ = denominator.scaledBy(Rational(1) / lc);
}

RatFun::RatFun(QPoly p) : num_(std::move(p)), den_(QPoly(Rational(1))) {}

RatFun RatFun::constant(const Rational& c) { return RatFun(QPoly(c)); }

RatFun RatFun::t() { return RatFun(QPoly::t()); }

RatFun RatFun::tPower(int k) {
    if (k >= 0) return RatFun(QPoly::tPower(k));
    return RatFun(QPoly(Rational(1)), QPoly::tPower(-k));
}

int RatFun::tValuation() const {
    if (num_.isZero()) return kInfValuation;
    return num_.tValuation() - den_.tValuation();
}

bool RatFun::isRationalConstant() const { return den_.degree() == 0 && num_.degree() <= 0; }

Rational RatFun::asRational() const {
    if (!isRationalConstant()) throw std::domain_error("not a rational constant");
    return num_.coefficient(0) / den_.coefficient(0);
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

RatFun RatFun::inverse() const {
    if (isZero()) throw std::domain_error("division by zero in k(t)");
    return RatFun(den_, num_);
}

RatFun RatFun::scaledBy(const Rational& r) const { return *this * constant(r); }

LaurentScalar RatFun::expandAt0(int cap) const {
    if (isZero()) return LaurentScalar::zero(cap);
    LaurentScalar n = LaurentScalar::fromCoefficients(0, num_.coefficients(), cap, /*exact=*/true);
    LaurentScalar d = LaurentScalar::fromCoefficients(0, den_.coefficients(), cap, /*exact=*/true);
    return n.dividedBy(d);
}

Rational RatFun::valueAt0() const {
    if (isZero()) return Rational(0);
    if (sgn(den_.coefficient(0)) == 0) throw std::domain_error("pole at t = 0");
    return num_.coefficient(0) / den_.coefficient(0);
}

std::string RatFun::toString() const {
    if (den_.degree() == 0) {
        // monic normalization makes the denominator literally 1 here
        return num_.toString();
    }
    if (den_.degree() == den_.tValuation()) {
        // denominator is the monomial t^k: print as a Laurent polynomial
        return laurentTermsString(num_.coefficients(), den_.degree());
    }
    std::string ns = num_.toString();
    bool nsSimple =
        ns.find(" + ") == std::string::npos && ns.find(" - ") == std::string::npos;
    std::ostringstream out;
    out << (nsSimple ? ns : "(" + ns + ")") << "/(" << den_.toString() << ")";
    return out.str();
}

}  // namespace tatedr
