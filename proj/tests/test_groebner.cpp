#include <doctest.h>

#include <random>

#include "tatedr/groebner.hpp"

using tatedr::analyzeCharVariety;
using tatedr::CharVarietyReport;
using tatedr::commutativeBuchberger;
using tatedr::ExactWeyl;
using tatedr::exactFromTruncated;
using tatedr::FilteredPresentation;
using tatedr::initialIdeal;
using tatedr::krullDimension;
using tatedr::leftBuchberger;
using tatedr::MultiIndex;
using tatedr::Rational;
using tatedr::RatFun;
using tatedr::reduceByBasis;
using tatedr::SymbolPoly;
using tatedr::topWeightForm;

namespace {

ExactWeyl X(int i, int n) { return ExactWeyl::x(i, n); }
ExactWeyl D(int i, int n) { return ExactWeyl::d(i, n); }
ExactWeyl C(long v, int n) { return ExactWeyl::fromRatFun(RatFun::constant(Rational(v)), n); }
ExactWeyl T(int k, int n) { return ExactWeyl::fromRatFun(RatFun::tPower(k), n); }

/// xi_i as a symbol polynomial in 2n variables (1-based).
SymbolPoly Xi(int i, int n) {
    MultiIndex key(2 * static_cast<std::size_t>(n), 0);
    key[static_cast<std::size_t>(n + i - 1)] = 1;
    return SymbolPoly::term(key, RatFun::constant(Rational(1)));
}

SymbolPoly Sx(int i, int n) {
    MultiIndex key(2 * static_cast<std::size_t>(n), 0);
    key[static_cast<std::size_t>(i - 1)] = 1;
    return SymbolPoly::term(key, RatFun::constant(Rational(1)));
}

SymbolPoly sConst(long v, int n) {
    return SymbolPoly::term(MultiIndex(2 * static_cast<std::size_t>(n), 0),
                            RatFun::constant(Rational(v)));
}

}  // namespace

TEST_CASE("basis of d1 and x2 is already a Groebner basis") {
    FilteredPresentation p{2, {D(1, 2), X(2, 2)}};
    auto gb = leftBuchberger(p);
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == X(2, 2));
    CHECK(gb[1] == D(1, 2));
}

TEST_CASE("principal basis stays principal and is normalized monic") {
    FilteredPresentation p{1, {D(1, 1) - T(-1, 1)}};
    auto gb = leftBuchberger(p);
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == D(1, 1) - T(-1, 1));

    // 1 - t*d1 has leading coefficient -t; the reduced basis divides it out.
    FilteredPresentation q{1, {C(1, 1) - ExactWeyl::fromRatFun(RatFun::t(), 1) * D(1, 1)}};
    auto gbq = leftBuchberger(q);
    REQUIRE(gbq.size() == 1);
    CHECK(gbq[0] == D(1, 1) - T(-1, 1));
}

TEST_CASE("x1 and d1 generate the unit ideal via their commutator") {
    FilteredPresentation p{1, {X(1, 1), D(1, 1)}};
    auto gb = leftBuchberger(p);
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == C(1, 1));
}

TEST_CASE("normal form is idempotent and kills ideal members") {
    const int n = 2;
    std::vector<ExactWeyl> basis = {D(1, n), X(2, n)};
    ExactWeyl combo = ExactWeyl::term({1, 0, 0, 2}, RatFun::tPower(-2)) * D(1, n) +
                      (D(2, n) * D(2, n) + C(5, n)) * X(2, n);
    CHECK(reduceByBasis(combo, basis).isZero());

    ExactWeyl f = X(1, n) * X(1, n) * D(2, n) + D(1, n) * X(1, n) + T(3, n);
    ExactWeyl nf = reduceByBasis(f, basis);
    CHECK(reduceByBasis(nf, basis) == nf);
    // d1*x1 = x1*d1 + 1 reduces to 1; the x1^2 d2 term is untouched.
    CHECK(nf == X(1, n) * X(1, n) * D(2, n) + C(1, n) + T(3, n));
}

TEST_CASE("top-weight forms and initial ideals of the pinned examples") {
    CHECK(topWeightForm(C(1, 1) - ExactWeyl::fromRatFun(RatFun::t(), 1) * D(1, 1)) ==
          Xi(1, 1).scaledBy(-RatFun::t()));

    {
        FilteredPresentation p{2, {D(1, 2), X(2, 2)}};
        auto gens = initialIdeal(leftBuchberger(p));
        REQUIRE(gens.size() == 2);
        CHECK(gens[0] == Sx(2, 2));
        CHECK(gens[1] == Xi(1, 2));
    }
    {
        FilteredPresentation p{2, {C(1, 2) - ExactWeyl::fromRatFun(RatFun::t(), 2) * D(1, 2)}};
        auto gens = initialIdeal(leftBuchberger(p));
        REQUIRE(gens.size() == 1);
        CHECK(gens[0] == Xi(1, 2));  // symbol -t*xi1, normalized monic
    }
    {
        FilteredPresentation p{1, {D(1, 1) * D(1, 1) + X(1, 1)}};
        auto gens = initialIdeal(leftBuchberger(p));
        REQUIRE(gens.size() == 1);
        CHECK(gens[0] == Xi(1, 1) * Xi(1, 1));
    }
}

TEST_CASE("Krull dimension of pinned monomial and polynomial ideals") {
    CHECK(krullDimension({Xi(1, 2), Sx(2, 2)}, 2) == 2);
    CHECK(krullDimension({Xi(1, 2)}, 2) == 3);
    CHECK(krullDimension({}, 1) == 2);
    CHECK(krullDimension({sConst(1, 2)}, 2) == -1);
    // graph of xi1 = x1^2: a curve in the (x1, xi1) plane
    CHECK(krullDimension({Xi(1, 1) - Sx(1, 1) * Sx(1, 1)}, 1) == 1);
    // x1*xi1 = 1 together with x1^2 = 0 forces 1 into the ideal
    CHECK(krullDimension({Sx(1, 1) * Xi(1, 1) - sConst(1, 1), Sx(1, 1) * Sx(1, 1)}, 1) == -1);
}

TEST_CASE("commutative Buchberger finds the hidden unit") {
    auto gb = commutativeBuchberger({Sx(1, 1) * Xi(1, 1) - sConst(1, 1), Sx(1, 1) * Sx(1, 1)});
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == sConst(1, 1));
}

TEST_CASE("holonomicity verdicts for the pinned modules") {
    {
        CharVarietyReport r = analyzeCharVariety({2, {D(1, 2), X(2, 2)}});
        CHECK(r.charDimension == 2);
        CHECK(r.holonomic);
        CHECK_FALSE(r.moduleIsZero);
        CHECK_FALSE(r.dimensionBelowVarCount);
    }
    {
        ExactWeyl rel = C(1, 2) - ExactWeyl::fromRatFun(RatFun::t(), 2) * D(1, 2);
        CharVarietyReport r = analyzeCharVariety({2, {rel}});
        CHECK(r.charDimension == 3);
        CHECK_FALSE(r.holonomic);
    }
    {
        ExactWeyl rel = C(1, 1) - ExactWeyl::fromRatFun(RatFun::t(), 1) * D(1, 1);
        CharVarietyReport r = analyzeCharVariety({1, {rel}});
        CHECK(r.charDimension == 1);
        CHECK(r.holonomic);
    }
    {
        // Airy-type: D_1 / (d1^2 + x1)
        CharVarietyReport r = analyzeCharVariety({1, {D(1, 1) * D(1, 1) + X(1, 1)}});
        CHECK(r.charDimension == 1);
        CHECK(r.holonomic);
    }
    {
        CharVarietyReport r = analyzeCharVariety({1, {X(1, 1), D(1, 1)}});
        CHECK(r.moduleIsZero);
        CHECK(r.charDimension == -1);
        CHECK(r.holonomic);
        CHECK(r.initialIdealGenerators.empty());
    }
    {
        // no relations: the full operator algebra, dimension 2n
        CharVarietyReport r = analyzeCharVariety({1, {}});
        CHECK(r.charDimension == 2);
        CHECK_FALSE(r.holonomic);
    }
}

TEST_CASE("verdict is invariant under scaling a relation by a nonzero scalar") {
    ExactWeyl rel = D(1, 2) - T(-1, 2);
    for (const RatFun& c : {RatFun::tPower(3), RatFun::tPower(-2),
                            RatFun::constant(Rational(7)) + RatFun::t()}) {
        CharVarietyReport plain = analyzeCharVariety({2, {rel, X(2, 2)}});
        CharVarietyReport scaled = analyzeCharVariety({2, {rel.scaledBy(c), X(2, 2)}});
        CHECK(plain.charDimension == scaled.charDimension);
        CHECK(plain.holonomic == scaled.holonomic);
        CHECK(plain.initialIdealGenerators.size() == scaled.initialIdealGenerators.size());
    }
}

TEST_CASE("randomized: symbols are multiplicative and initial forms match") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> smallExp(0, 2);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<int> tShift(-1, 1);

    auto randomOperator = [&](int n) {
        ExactWeyl p = ExactWeyl::zero(n);
        for (int terms = 0; terms < 3; ++terms) {
            MultiIndex key(2 * static_cast<std::size_t>(n), 0);
            for (auto& e : key) e = smallExp(rng);
            long c = coeff(rng);
            if (c == 0) c = 1;
            p = p + ExactWeyl::term(key, RatFun::constant(Rational(c)) * RatFun::tPower(tShift(rng)));
        }
        return p;
    };

    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 2;
        ExactWeyl a = randomOperator(n);
        ExactWeyl b = randomOperator(n);
        if (a.isZero() || b.isZero()) continue;
        // multiplicativity of the leading form in the graded ring
        CHECK(topWeightForm(a * b) == topWeightForm(a) * topWeightForm(b));
        // a principal ideal's initial ideal is generated by the monic symbol
        auto gens = initialIdeal(leftBuchberger({n, {a}}));
        REQUIRE(gens.size() == 1);
        CHECK(gens[0] == topWeightForm(a).monic());
    }
}

TEST_CASE("randomized: membership reduction to zero for two-element bases") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> smallExp(0, 2);
    std::uniform_int_distribution<long> coeff(-3, 3);

    const int n = 2;
    std::vector<ExactWeyl> gb = leftBuchberger({n, {D(1, n), X(2, n)}});
    for (int trial = 0; trial < 60; ++trial) {
        auto randomCofactor = [&]() {
            MultiIndex key(2 * static_cast<std::size_t>(n), 0);
            for (auto& e : key) e = smallExp(rng);
            long c = coeff(rng);
            if (c == 0) c = 2;
            return ExactWeyl::term(key, RatFun::constant(Rational(c)));
        };
        ExactWeyl member = randomCofactor() * gb[0] + randomCofactor() * gb[1];
        CHECK(reduceByBasis(member, gb).isZero());
    }
}

TEST_CASE("exact reconstruction from truncated operators") {
    const int n = 2;
    ExactWeyl p = T(-1, n) * X(1, n) * D(2, n) + C(3, n) - D(1, n);
    CHECK(exactFromTruncated(p.toTruncated(8)) == p);

    // a truncated geometric series is not certified exact and is rejected
    tatedr::WeylOperator blurred = tatedr::WeylOperator::fromCoefficient(tatedr::TateElement::fromScalar(
        (tatedr::LaurentScalar::one() - tatedr::LaurentScalar::tPower(1)).inverse(), n));
    CHECK_THROWS_AS(exactFromTruncated(blurred), tatedr::UnsupportedCoefficientsError);
}
