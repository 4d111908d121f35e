#include <doctest.h>

#include "tatedr/connection.hpp"
#include "tatedr/errors.hpp"

using tatedr::ConnectionModule;
using tatedr::CyclicModule;
using tatedr::cyclicToConnection;
using tatedr::drCohomology;
using tatedr::DrReport;
using tatedr::eulerCharResidue;
using tatedr::hatInvarianceCheck;
using tatedr::LaurentScalar;
using tatedr::MultiIndex;
using tatedr::QPoly;
using tatedr::Rational;
using tatedr::reduceModel;
using tatedr::ResidueConnection;
using tatedr::ResidueDrReport;
using tatedr::spectralRadiusEstimate;
using tatedr::SpectralVerdict;
using tatedr::TateElement;
using tatedr::verifyChiTransfer;
using tatedr::WeylOperator;

namespace {

WeylOperator d1() { return WeylOperator::derivation(1, 1); }
WeylOperator scalarOp(const LaurentScalar& s) { return WeylOperator::fromScalar(s, 1); }

TateElement elem(const LaurentScalar& s) { return TateElement::fromScalar(s, 1); }
TateElement xElem() { return TateElement::variable(1, 1); }

ConnectionModule scalarConnection(const LaurentScalar& lambda) { return ConnectionModule::scalar(lambda); }

}  // namespace

TEST_CASE("companion conversion matches the pinned rank-one modules") {
    {
        CyclicModule m{d1() - scalarOp(LaurentScalar::tPower(-1))};
        ConnectionModule c = cyclicToConnection(m);
        REQUIRE(c.rank() == 1);
        CHECK(c.entry(0, 0) == -elem(LaurentScalar::tPower(-1)));
    }
    {
        // 1 - t*d: same module, leading unit -t divided out
        CyclicModule m{WeylOperator::one(1) - scalarOp(LaurentScalar::tPower(1)) * d1()};
        ConnectionModule c = cyclicToConnection(m);
        REQUIRE(c.rank() == 1);
        CHECK(c.entry(0, 0) == -elem(LaurentScalar::tPower(-1)));
    }
    {
        // x*d - 1: leading coefficient x has norm 1 but is not a unit
        CyclicModule m{WeylOperator::fromCoefficient(xElem()) * d1() - WeylOperator::one(1)};
        CHECK_THROWS_AS(cyclicToConnection(m), tatedr::LeadingCoefficientNotUnitError);
    }
    {
        // d^2 + x*d + 1: rank two, negated companion shape
        CyclicModule m{d1() * d1() + WeylOperator::fromCoefficient(xElem()) * d1() + WeylOperator::one(1)};
        ConnectionModule c = cyclicToConnection(m);
        REQUIRE(c.rank() == 2);
        CHECK(c.entry(0, 0).zeroStatus() == tatedr::ZeroStatus::Zero);
        CHECK(c.entry(0, 1) == TateElement::constant(Rational(1), 1));
        CHECK(c.entry(1, 0) == TateElement::constant(Rational(-1), 1));
        CHECK(c.entry(1, 1) == xElem());
    }
}

TEST_CASE("rank-one scalar family matches the convergence table") {
    struct Row {
        LaurentScalar lambda;
        int h0;
    };
    const std::vector<Row> table = {
        {LaurentScalar::zero(), 1},
        {LaurentScalar::tPower(1), 1},
        {-LaurentScalar::tPower(1), 1},
        {LaurentScalar::tPower(2), 1},
        {LaurentScalar::one(), 0},
        {LaurentScalar::fromLong(2), 0},
        {-LaurentScalar::one(), 0},
        {LaurentScalar::tPower(-1), 0},
        {-LaurentScalar::tPower(-1), 0},
        {LaurentScalar::tPower(-2), 0},
    };
    for (const Row& row : table) {
        CAPTURE(row.lambda.toString());
        DrReport r = drCohomology(scalarConnection(row.lambda));
        CHECK(r.h0 == row.h0);
        CHECK(r.h1 == 0);
        CHECK(r.stabilized);
        CHECK(r.reliable);
        REQUIRE(r.trajectory.size() >= 2);
        CHECK(r.trajectory[r.trajectory.size() - 1] == r.trajectory[r.trajectory.size() - 2]);
    }
}

TEST_CASE("x-dependent connection picks up a one-dimensional cokernel") {
    ConnectionModule c({{-xElem()}});
    DrReport r = drCohomology(c);
    CHECK(r.h0 == 0);
    CHECK(r.h1 == 1);
    CHECK(r.stabilized);
    CHECK(r.reliable);
}

TEST_CASE("cohomology is unchanged by companion conversion") {
    {
        DrReport direct = drCohomology(scalarConnection(-LaurentScalar::tPower(-1)));
        DrReport viaCyclic = drCohomology(CyclicModule{d1() - scalarOp(LaurentScalar::tPower(-1))});
        CHECK(direct.h0 == viaCyclic.h0);
        CHECK(direct.h1 == viaCyclic.h1);
    }
    {
        DrReport constant = drCohomology(CyclicModule{d1()});
        CHECK(constant.h0 == 1);
        CHECK(constant.h1 == 0);
    }
    {
        // d^2: rank two, kernel {(c, cx + d)}, connection surjective
        DrReport second = drCohomology(CyclicModule{d1() * d1()});
        CHECK(second.h0 == 2);
        CHECK(second.h1 == 0);
    }
}

TEST_CASE("dimensions survive a unit-triangular change of basis") {
    const TateElement zero = TateElement::zero(1);
    const TateElement lam = -elem(LaurentScalar::tPower(-1));
    // A = diag(0, -t^-1): dims (1, 0)
    std::vector<std::vector<TateElement>> a = {{zero, zero}, {zero, lam}};
    DrReport base = drCohomology(ConnectionModule(a));
    REQUIRE(base.h0 == 1);
    REQUIRE(base.h1 == 0);

    // gauge by g = [[1, u], [0, 1]]: A' = g A g^-1 - g' g^-1
    for (const TateElement& u : {xElem(), elem(LaurentScalar::tPower(1)) * xElem() * xElem()}) {
        std::vector<std::vector<TateElement>> conj = {
            {a[0][0] - zero, a[0][1] + u * a[1][1] - a[0][0] * u - u.derivative(1)},
            {a[1][0], a[1][1] - a[1][0] * u}};
        DrReport gauged = drCohomology(ConnectionModule(conj));
        CHECK(gauged.h0 == base.h0);
        CHECK(gauged.h1 == base.h1);
    }
}

TEST_CASE("spectral verdicts on the pinned matrices") {
    {
        auto r = spectralRadiusEstimate(ConnectionModule::trivial(1));
        CHECK(r.verdict == SpectralVerdict::ModelCertified);
        CHECK(r.guaranteedLog == 0);
    }
    {
        auto r = spectralRadiusEstimate(scalarConnection(-LaurentScalar::tPower(-1)));
        CHECK(r.verdict == SpectralVerdict::NoModel);
        CHECK(r.observedSlope == Rational(-1));
        // iterates of d + (-t^-1) on 1: exactly t^-k
        REQUIRE(r.iterateValuations.size() == 12);
        CHECK(r.iterateValuations[0] == -1);
        CHECK(r.iterateValuations[11] == -12);
    }
    {
        auto r = spectralRadiusEstimate(ConnectionModule({{-xElem()}}));
        CHECK(r.verdict == SpectralVerdict::ModelCertified);
    }
    {
        auto r = spectralRadiusEstimate(scalarConnection(-LaurentScalar::tPower(1)));
        CHECK(r.verdict == SpectralVerdict::ModelCertified);
    }
    {
        // t^-1 * x: norms of iterates blow up geometrically
        auto r = spectralRadiusEstimate(ConnectionModule({{elem(LaurentScalar::tPower(-1)) * xElem()}}));
        CHECK(r.verdict == SpectralVerdict::NoModel);
    }
}

TEST_CASE("model reduction to the residue field") {
    {
        ResidueConnection rc = reduceModel(ConnectionModule::trivial(2));
        CHECK(rc.rank == 2);
        CHECK(rc.matrix[0][0].isZero());
        CHECK(rc.matrix[1][1].isZero());
    }
    {
        // A = -x + t*x^2 reduces coefficientwise to -x
        TateElement aEntry = -xElem() + elem(LaurentScalar::tPower(1)) * xElem() * xElem();
        ResidueConnection rc = reduceModel(ConnectionModule({{aEntry}}));
        CHECK(rc.matrix[0][0] == QPoly::fromCoefficients({Rational(0), Rational(-1)}));
    }
    CHECK_THROWS_AS(reduceModel(scalarConnection(-LaurentScalar::tPower(-1))), tatedr::NoModelAvailableError);
}

TEST_CASE("residue-field cohomology pins") {
    auto poly = [](std::vector<Rational> c) { return QPoly::fromCoefficients(std::move(c)); };
    {
        ResidueDrReport r = eulerCharResidue(ResidueConnection{1, {{QPoly(Rational(0))}}});
        CHECK(r.h0 == 1);
        CHECK(r.h1 == 0);
        CHECK(r.chi() == 1);
        CHECK(r.stabilized);
    }
    {
        ResidueDrReport r = eulerCharResidue(ResidueConnection{1, {{poly({Rational(0), Rational(-1)})}}});
        CHECK(r.h0 == 0);
        CHECK(r.h1 == 1);
        CHECK(r.chi() == -1);
    }
    {
        ResidueDrReport r = eulerCharResidue(ResidueConnection{1, {{QPoly(Rational(3))}}});
        CHECK(r.h0 == 0);
        CHECK(r.h1 == 0);
        CHECK(r.chi() == 0);
    }
}

TEST_CASE("Euler characteristic transfers across the reduction") {
    {
        auto r = verifyChiTransfer(ConnectionModule::trivial(1));
        CHECK(r.agree);
        CHECK(r.analytic.chi() == 1);
        CHECK(r.residue.chi() == 1);
    }
    {
        auto r = verifyChiTransfer(ConnectionModule({{-xElem()}}));
        CHECK(r.agree);
        CHECK(r.analytic.chi() == -1);
        CHECK(r.residue.chi() == -1);
    }
    {
        // A = -t: analytic kernel exp(tx); reduction is the trivial connection
        auto r = verifyChiTransfer(scalarConnection(-LaurentScalar::tPower(1)));
        CHECK(r.agree);
        CHECK(r.analytic.h0 == 1);
        CHECK(r.analytic.h1 == 0);
        CHECK(r.residue.h0 == 1);
        CHECK(r.residue.h1 == 0);
    }
}

TEST_CASE("completed-ring invariance routes agree") {
    {
        // 1 - t*d: a unit of the completed ring, and companion-solvable
        auto r = hatInvarianceCheck(CyclicModule{WeylOperator::one(1) - scalarOp(LaurentScalar::tPower(1)) * d1()});
        CHECK(r.unitRouteAvailable);
        CHECK(r.connectionRouteAvailable);
        CHECK(r.completedVanishes);
        REQUIRE(r.direct.has_value());
        CHECK(r.direct->h0 == 0);
        CHECK(r.direct->h1 == 0);
        CHECK(r.agree);
    }
    {
        auto r = hatInvarianceCheck(CyclicModule{d1()});
        CHECK_FALSE(r.unitRouteAvailable);
        CHECK(r.connectionRouteAvailable);
        REQUIRE(r.direct.has_value());
        CHECK(r.direct->h0 == 1);
        CHECK(r.direct->h1 == 0);
        CHECK(r.agree);
    }
    {
        auto r = hatInvarianceCheck(CyclicModule{d1() - scalarOp(LaurentScalar::tPower(-1))});
        CHECK(r.unitRouteAvailable);
        CHECK(r.connectionRouteAvailable);
        CHECK(r.completedVanishes);
        CHECK(r.direct->h0 == 0);
        CHECK(r.direct->h1 == 0);
        CHECK(r.agree);
    }
    {
        // x*d - 1: neither a completed unit (|x| = 1) nor companion-solvable
        CyclicModule awkward{WeylOperator::fromCoefficient(xElem()) * d1() - WeylOperator::one(1)};
        CHECK_THROWS_AS(hatInvarianceCheck(awkward), tatedr::InconclusiveRouteError);
    }
}
