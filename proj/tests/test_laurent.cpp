#include <doctest.h>

#include <random>

#include "tatedr/laurent.hpp"

using tatedr::kInfValuation;
using tatedr::LaurentScalar;
using tatedr::Rational;
using tatedr::ZeroStatus;

namespace {

LaurentScalar t(int k, int cap = 8) { return LaurentScalar::tPower(k, cap); }
LaurentScalar q(long n, long d = 1, int cap = 8) {
    return LaurentScalar::fromRational(tatedr::rationalFromParts(n, static_cast<unsigned long>(d)),
                                       cap);
}

}  // namespace

TEST_CASE("valuation of a shifted unit") {
    // t^3 * (2 + t)
    LaurentScalar a = t(3) * (q(2) + t(1));
    auto v = a.valuation();
    CHECK(v.value == 3);
    CHECK_FALSE(v.isLowerBound);
    CHECK(a.zeroStatus() == ZeroStatus::NonZero);
}

TEST_CASE("cancellation shifts valuation and renormalizes") {
    LaurentScalar a = t(-1) + q(1);
    LaurentScalar b = -t(-1);
    LaurentScalar s = a + b;
    CHECK(s.zeroStatus() == ZeroStatus::NonZero);
    CHECK(s.valuation().value == 0);
    CHECK(LaurentScalar::equalAtPrecision(s, q(1)));
}

TEST_CASE("full cancellation of exact inputs certifies zero") {
    LaurentScalar a = q(3, 7) + t(2);
    LaurentScalar s = a - a;
    CHECK(s.zeroStatus() == ZeroStatus::Zero);
    CHECK(s.valuation().isLowerBound);
    CHECK(s.valuation().value == kInfValuation);
}

TEST_CASE("cancellation of truncated inputs is only zero at precision") {
    // Force inexactness by multiplying past the cap first.
    LaurentScalar geo = LaurentScalar::fromCoefficients(0, std::vector<Rational>(8, Rational(1)), 8,
                                                        /*exact=*/false);
    LaurentScalar s = geo - geo;
    CHECK(s.zeroStatus() == ZeroStatus::IndistinguishableAtPrecision);
    CHECK(s.valuation().isLowerBound);
    CHECK(s.valuation().value == 8);
    // ... and it compares equal to anything of valuation >= the bound
    CHECK(LaurentScalar::equalAtPrecision(s, t(9)));
    CHECK(LaurentScalar::equalAtPrecision(s, LaurentScalar::zero()));
    CHECK_FALSE(LaurentScalar::equalAtPrecision(s, t(3)));
}

TEST_CASE("geometric series times its denominator is one at precision") {
    const int p = 8;
    std::vector<Rational> ones(static_cast<std::size_t>(p), Rational(1));
    LaurentScalar geo = LaurentScalar::fromCoefficients(0, ones, p, /*exact=*/false);
    LaurentScalar oneMinusT = q(1) - t(1);
    LaurentScalar prod = oneMinusT * geo;
    CHECK(LaurentScalar::equalAtPrecision(prod, q(1)));
    CHECK(prod.absolutePrecision() == p);
}

TEST_CASE("inverse of t and of units") {
    CHECK(t(1).inverse().identicalTo(t(-1)));
    CHECK(t(-4).inverse().identicalTo(t(4)));
    LaurentScalar u = q(2) + t(1);
    LaurentScalar inv = u.inverse();
    CHECK(LaurentScalar::equalAtPrecision(u * inv, q(1)));
    // 1/(2+t) starts 1/2 - t/4 + ...
    CHECK(inv.unitCoefficient(0) == tatedr::rationalFromParts(1, 2));
    CHECK(inv.unitCoefficient(1) == tatedr::rationalFromParts(-1, 4));
}

TEST_CASE("inverse of an inexact zero raises InexactZeroError") {
    LaurentScalar z = LaurentScalar::inexactZero(8, 8);
    CHECK_THROWS_AS((void)z.inverse(), tatedr::InexactZeroError);
    CHECK_THROWS_AS((void)LaurentScalar::zero().inverse(), tatedr::InexactZeroError);
}

TEST_CASE("absorbing addition against an inexact zero") {
    LaurentScalar z = LaurentScalar::inexactZero(5, 8);
    LaurentScalar small = t(7);
    CHECK((z + small).zeroStatus() == ZeroStatus::IndistinguishableAtPrecision);
    CHECK((z + small).valuation().value == 5);
    LaurentScalar big = t(2);
    LaurentScalar s = z + big;
    CHECK(s.zeroStatus() == ZeroStatus::NonZero);
    CHECK(s.valuation().value == 2);
    CHECK(s.absolutePrecision() == 5);
}

TEST_CASE("printing") {
    CHECK(t(-1).toString() == "t^-1");
    CHECK((q(2) + t(2)).toString() == "2 + t^2");
    CHECK(LaurentScalar::zero().toString() == "0");
    CHECK(LaurentScalar::inexactZero(8, 8).toString() == "O(t^8)");
    CHECK((q(-1, 2) * t(3)).toString() == "-1/2*t^3");
}

TEST_CASE("ultrametric inequality and norm multiplicativity, randomized") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> valDist(-4, 4);
    std::uniform_int_distribution<long> coeffDist(-9, 9);
    std::uniform_int_distribution<int> lenDist(1, 5);
    auto randomScalar = [&]() {
        std::vector<Rational> c;
        int len = lenDist(rng);
        c.reserve(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) c.emplace_back(coeffDist(rng));
        return LaurentScalar::fromCoefficients(valDist(rng), c, 8, /*exact=*/true);
    };
    int checked = 0;
    for (int iter = 0; iter < 250; ++iter) {
        LaurentScalar a = randomScalar();
        LaurentScalar b = randomScalar();
        if (a.zeroStatus() != ZeroStatus::NonZero || b.zeroStatus() != ZeroStatus::NonZero)
            continue;
        ++checked;
        LaurentScalar s = a + b;
        // |a+b| <= max(|a|,|b|)  <=>  val(a+b) >= min(val a, val b)
        int m = std::min(a.valuation().value, b.valuation().value);
        CHECK(s.valuation().value >= m);
        // equality when the valuations differ
        if (a.valuation().value != b.valuation().value) CHECK(s.valuation().value == m);
        LaurentScalar prod = a * b;
        CHECK(prod.valuation().value == a.valuation().value + b.valuation().value);
    }
    CHECK(checked > 200);
}
