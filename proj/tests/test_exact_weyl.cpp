#include <doctest.h>

#include <random>

#include "tatedr/exact_weyl.hpp"

using tatedr::ExactWeyl;
using tatedr::MultiIndex;
using tatedr::QPoly;
using tatedr::Rational;
using tatedr::RatFun;
using tatedr::TateElement;
using tatedr::WeylOperator;

namespace {

ExactWeyl X(int i, int n = 1) { return ExactWeyl::x(i, n); }
ExactWeyl D(int i, int n = 1) { return ExactWeyl::d(i, n); }
ExactWeyl C(long v, int n = 1) { return ExactWeyl::fromRatFun(RatFun::constant(Rational(v)), n); }
ExactWeyl T(int k, int n = 1) { return ExactWeyl::fromRatFun(RatFun::tPower(k), n); }

}  // namespace

TEST_CASE("exact defining relation and higher commutation") {
    CHECK(D(1) * X(1) == X(1) * D(1) + C(1));
    CHECK(D(1).pow(2) * X(1).pow(2) ==
          X(1).pow(2) * D(1).pow(2) + C(4) * X(1) * D(1) + C(2));
}

TEST_CASE("rational-function coefficients stay exact through products") {
    // (d1 - t^-1) * (d1 + t^-1) = d1^2 - t^-2  (the t^-1 terms cancel exactly)
    ExactWeyl p = (D(1) - T(-1)) * (D(1) + T(-1));
    CHECK(p == D(1).pow(2) - T(-2));
    // no derivative of t^-1 appears: t is a constant for the x-derivations
    CHECK(p.termCount() == 2);
}

TEST_CASE("squaring a mixed operator") {
    // (x + d)^2 = x^2 + 2xd + d^2 + 1
    ExactWeyl s = (X(1) + D(1)).pow(2);
    CHECK(s == X(1).pow(2) + C(2) * X(1) * D(1) + D(1).pow(2) + C(1));
}

TEST_CASE("degrees, scalar detection, leading data") {
    ExactWeyl p = X(1).pow(3) * D(1) + D(1).pow(2);
    CHECK(p.order() == 2);
    CHECK(p.xDegree() == 3);
    CHECK_FALSE(p.isScalar());
    // weight order: the pure d1^2 term dominates despite lower total degree
    MultiIndex lead{0, 2};
    CHECK(p.leadingKey() == lead);
    CHECK(p.leadingCoefficient() == RatFun::constant(Rational(1)));

    ExactWeyl c = T(-3);
    CHECK(c.isScalar());
    CHECK(c.asRatFun() == RatFun::tPower(-3));
    CHECK(ExactWeyl::zero(2).isScalar());
    CHECK(ExactWeyl::zero(2).leadingKey() == std::nullopt);
}

TEST_CASE("exact transpose matches the truncated-layer adjoint") {
    CHECK((X(1) * D(1)).transpose() == -(X(1) * D(1)) - C(1));
    CHECK(D(1).pow(2).transpose() == D(1).pow(2));
    std::mt19937 rng(29u);
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<long> num(-3, 3);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 1 + iter % 2;
        auto randomOp = [&]() {
            ExactWeyl p = ExactWeyl::zero(n);
            for (int t = 0; t < 3; ++t) {
                MultiIndex key(static_cast<std::size_t>(2 * n));
                for (auto& e : key) e = expo(rng);
                p = p + ExactWeyl::term(key, RatFun::constant(Rational(num(rng))));
            }
            return p;
        };
        ExactWeyl p = randomOp(), q = randomOp();
        CHECK(p.transpose().transpose() == p);
        CHECK((p * q).transpose() == q.transpose() * p.transpose());
        CHECK((p * q) * p == p * (q * p));
    }
}

TEST_CASE("truncation to the analytic layer") {
    ExactWeyl p = C(1) - T(1) * D(1);
    WeylOperator w = p.toTruncated(8);
    WeylOperator expected = WeylOperator::one(1, 8) -
                            WeylOperator::fromScalar(tatedr::LaurentScalar::tPower(1, 8), 1) *
                                WeylOperator::derivation(1, 1, 8);
    CHECK(w == expected);
    CHECK(w.coefficientOf({1}).isExact());

    // a genuinely infinite expansion arrives flagged inexact
    ExactWeyl q = ExactWeyl::fromRatFun(
        RatFun(QPoly(Rational(1)), QPoly::fromCoefficients({Rational(1), Rational(-1)})), 1);
    WeylOperator wq = q.toTruncated(8);
    MultiIndex zeroKey{0};
    CHECK_FALSE(wq.coefficientOf(zeroKey).isExact());
    CHECK(wq.coefficientOf(zeroKey).absolutePrecision() == 8);

    ExactWeyl mixed = X(1) * D(1) - T(-1);
    WeylOperator wm = mixed.toTruncated(8);
    CHECK(wm.coefficientOf({1}) == TateElement::variable(1, 1));
    CHECK(wm.operatorNorm().value == -1);
}

TEST_CASE("printing exact operators") {
    CHECK((X(1) * D(1) - T(-1)).toString() == "x1*d1 - t^-1");
    CHECK(ExactWeyl::zero(1).toString() == "0");
    ExactWeyl q = ExactWeyl::fromRatFun(
        RatFun(QPoly(Rational(1)), QPoly::fromCoefficients({Rational(1), Rational(-1)})), 1);
    CHECK((q * D(1)).toString() == "(-1/(-1 + t))*d1");
}
