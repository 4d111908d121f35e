#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tatedr/direct_image.hpp"
#include "tatedr/errors.hpp"
#include "tatedr/groebner.hpp"

using tatedr::analyzeCharVariety;
using tatedr::buildDrComplex;
using tatedr::chainMapVerify;
using tatedr::CharVarietyReport;
using tatedr::ConnectionModule;
using tatedr::CyclicModule;
using tatedr::DiagonalConnection;
using tatedr::dividesComponentwise;
using tatedr::drShiftCheck;
using tatedr::EmbeddingData;
using tatedr::ExactWeyl;
using tatedr::FilteredPresentation;
using tatedr::homotopyVerify;
using tatedr::LaurentScalar;
using tatedr::leftBuchberger;
using tatedr::MultiIndex;
using tatedr::PushforwardModule;
using tatedr::pushforwardCohomology;
using tatedr::pushforwardPresentation;
using tatedr::Rational;
using tatedr::RatFun;
using tatedr::ShiftCheckReport;
using tatedr::sideChange;
using tatedr::TateElement;
using tatedr::transportFiltrationDim;
using tatedr::TruncatedComplex;
using tatedr::WeylOperator;
using tatedr::WindowTooSmallError;

namespace {

ExactWeyl X(int i, int n) { return ExactWeyl::x(i, n); }
ExactWeyl D(int i, int n) { return ExactWeyl::d(i, n); }
ExactWeyl T(int k, int n) { return ExactWeyl::fromRatFun(RatFun::tPower(k), n); }

ConnectionModule scalarConnection(const LaurentScalar& lambda) {
    return ConnectionModule::scalar(lambda);
}

/// Number of monomial keys in the box [0..boxDeg]^(2n) left standard by the
/// leading terms of a reduced basis: the dimension count of the quotient's
/// truncation, used as an oracle for the pushforward's underlying space.
int standardMonomialCount(const std::vector<ExactWeyl>& basis, int boxDeg, int n,
                          const std::function<bool(const MultiIndex&)>& expectStandard = nullptr) {
    std::vector<MultiIndex> leads;
    for (const ExactWeyl& g : basis) {
        const MultiIndex lead = *g.leadingKey();
        leads.push_back(lead);
    }
    const int slots = 2 * n;
    MultiIndex key(static_cast<std::size_t>(slots), 0);
    int count = 0;
    while (true) {
        bool standard = true;
        for (const MultiIndex& lead : leads) {
            if (dividesComponentwise(lead, key)) {
                standard = false;
                break;
            }
        }
        if (standard) ++count;
        if (expectStandard) CHECK(standard == expectStandard(key));
        int i = 0;
        for (; i < slots; ++i) {
            if (++key[static_cast<std::size_t>(i)] <= boxDeg) break;
            key[static_cast<std::size_t>(i)] = 0;
        }
        if (i == slots) break;
    }
    return count;
}

std::vector<std::string> sortedStrings(const std::vector<ExactWeyl>& rels) {
    std::vector<std::string> out;
    for (const ExactWeyl& r : rels) out.push_back(r.toString());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("pushforward presentation adjoins the cut-out coordinates") {
    const EmbeddingData e(1, 2);
    const FilteredPresentation p = pushforwardPresentation({D(1, 1)}, e);
    CHECK(p.varCount == 2);
    REQUIRE(p.relations.size() == 2);
    CHECK(p.relations[0] == D(1, 2));
    CHECK(p.relations[1] == X(2, 2));

    const FilteredPresentation q = pushforwardPresentation({D(1, 1) - T(-1, 1)}, e);
    CHECK(q.relations[0] == D(1, 2) - T(-1, 2));
    CHECK(q.relations[1] == X(2, 2));

    CHECK_THROWS_AS(pushforwardPresentation({D(1, 2)}, e), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingData(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingData(0, 1), std::invalid_argument);
}

TEST_CASE("pushforward presentations accept truncated relations when exact") {
    const EmbeddingData e(1, 2);
    const WeylOperator rel =
        WeylOperator::derivation(1, 1) - WeylOperator::fromScalar(LaurentScalar::tPower(-1), 1);
    const FilteredPresentation p = pushforwardPresentation(std::vector<WeylOperator>{rel}, e);
    CHECK(p.relations[0] == D(1, 2) - T(-1, 2));

    const WeylOperator inexact =
        WeylOperator::fromScalar((LaurentScalar::one() - LaurentScalar::tPower(1)).inverse(), 1);
    CHECK_THROWS_AS(pushforwardPresentation(std::vector<WeylOperator>{inexact}, e),
                    tatedr::UnsupportedCoefficientsError);
}

TEST_CASE("pushforward quotient has the expected monomial basis at truncation") {
    const EmbeddingData e(1, 2);
    // Basis oracle: after pushing a rank-one source forward, the quotient's
    // standard monomials in a degree box are exactly x1^a d2^b.
    for (const ExactWeyl& rel : {D(1, 1), D(1, 1) - T(-1, 1)}) {
        const FilteredPresentation p = pushforwardPresentation({rel}, e);
        const std::vector<ExactWeyl> gb = leftBuchberger(p);
        const int boxDeg = 3;
        const int count = standardMonomialCount(gb, boxDeg, 2, [](const MultiIndex& key) {
            return key[1] == 0 && key[2] == 0;  // no x2, no d1 factor
        });
        CHECK(count == (boxDeg + 1) * (boxDeg + 1));
    }
}

TEST_CASE("iterated coordinate embeddings compose") {
    const std::vector<ExactWeyl> rels = {D(1, 1) - T(-1, 1)};
    const FilteredPresentation once = pushforwardPresentation(rels, EmbeddingData(1, 3));
    const FilteredPresentation twice = pushforwardPresentation(
        pushforwardPresentation(rels, EmbeddingData(1, 2)).relations, EmbeddingData(2, 3));
    CHECK(once.varCount == twice.varCount);
    CHECK(sortedStrings(once.relations) == sortedStrings(twice.relations));
}

TEST_CASE("pushforward of a combined presentation is the combined pushforward") {
    const EmbeddingData e(1, 2);
    const std::vector<ExactWeyl> relsA = {D(1, 1)};
    const std::vector<ExactWeyl> relsB = {X(1, 1) * D(1, 1) + ExactWeyl::one(1)};
    std::vector<ExactWeyl> both = relsA;
    both.insert(both.end(), relsB.begin(), relsB.end());

    const FilteredPresentation combined = pushforwardPresentation(both, e);
    const FilteredPresentation pa = pushforwardPresentation(relsA, e);
    const FilteredPresentation pb = pushforwardPresentation(relsB, e);

    std::vector<ExactWeyl> merged = pa.relations;
    for (const ExactWeyl& r : pb.relations) {
        if (std::find(merged.begin(), merged.end(), r) == merged.end()) merged.push_back(r);
    }
    CHECK(sortedStrings(combined.relations) == sortedStrings(merged));
}

TEST_CASE("characteristic dimension transports additively across the embedding") {
    const EmbeddingData e12(1, 2);
    CHECK(transportFiltrationDim(1, e12) == 2);
    CHECK(transportFiltrationDim(2, e12) == 3);
    CHECK(transportFiltrationDim(-1, e12) == -1);
    CHECK(transportFiltrationDim(0, EmbeddingData(1, 3)) == 2);
    CHECK_THROWS_AS(transportFiltrationDim(3, e12), std::invalid_argument);

    // Cross-check against the symbol-ideal dimension of the pushforward.
    const CharVarietyReport structure =
        analyzeCharVariety(pushforwardPresentation({D(1, 1)}, e12));
    CHECK(structure.charDimension == 2);
    CHECK(structure.holonomic);

    const CharVarietyReport fullSpace =
        analyzeCharVariety(pushforwardPresentation(std::vector<ExactWeyl>{}, e12));
    CHECK(fullSpace.charDimension == transportFiltrationDim(2, e12));
    CHECK_FALSE(fullSpace.holonomic);
}

TEST_CASE("pushing forward preserves holonomicity on the sample modules") {
    const EmbeddingData e(1, 2);
    const std::vector<std::vector<ExactWeyl>> corpus = {
        {D(1, 1)},
        {D(1, 1) - T(-1, 1)},
        {X(1, 1) * D(1, 1)},
        {D(1, 1) * D(1, 1) + X(1, 1)},
    };
    for (const auto& rels : corpus) {
        const CharVarietyReport src = analyzeCharVariety(FilteredPresentation{1, rels});
        REQUIRE(src.holonomic);
        const CharVarietyReport pushed = analyzeCharVariety(pushforwardPresentation(rels, e));
        CHECK(pushed.holonomic);
        CHECK(pushed.charDimension == transportFiltrationDim(src.charDimension, e));
    }
}

TEST_CASE("side change transposes relation-wise and is an involution") {
    CHECK(sideChange({D(1, 1)})[0] == -D(1, 1));
    CHECK(sideChange({X(1, 1) * D(1, 1)})[0] == -(X(1, 1) * D(1, 1)) - ExactWeyl::one(1));

    const std::vector<WeylOperator> rels = {
        WeylOperator::derivation(1, 1),
        WeylOperator::derivation(1, 1) - WeylOperator::fromScalar(LaurentScalar::tPower(-1), 1)};
    const std::vector<WeylOperator> back = sideChange(sideChange(rels));
    REQUIRE(back.size() == rels.size());
    for (std::size_t i = 0; i < rels.size(); ++i) CHECK(back[i] == rels[i]);

    const std::vector<ExactWeyl> mixed = {D(1, 2) * D(2, 2) + X(1, 2), X(2, 2) * D(1, 2) - T(2, 2)};
    const std::vector<ExactWeyl> round = sideChange(sideChange(mixed));
    for (std::size_t i = 0; i < mixed.size(); ++i) CHECK(round[i] == mixed[i]);
}

TEST_CASE("one-variable complex of the structure module is differentiation") {
    const TruncatedComplex complex = buildDrComplex(ConnectionModule::trivial(1, 8), 5);
    CHECK(complex.degreeCount() == 1);
    REQUIRE(complex.columnLabels.size() == 2);
    CHECK(complex.columnLabels[0].size() == 6);
    CHECK(complex.columnLabels[0][3] == "x1^3");
    CHECK(complex.columnLabels[1][2] == "x1^2 dx{1}");
    // delta(x^3) = 3 x^2
    CHECK(complex.differentials[0].at(2, 3) == LaurentScalar::fromLong(3));
    CHECK(complex.differentials[0].at(3, 3).zeroStatus() == tatedr::ZeroStatus::Zero);

    CHECK_THROWS_AS(buildDrComplex(ConnectionModule::trivial(1, 8), -1), WindowTooSmallError);
}

TEST_CASE("bidisc structure complex closes and carries the wedge signs") {
    const TruncatedComplex complex = buildDrComplex(DiagonalConnection::trivial(2, 8), 4);
    CHECK(complex.degreeCount() == 2);
    const int monoDim = 25;
    CHECK(complex.columnLabels[0].size() == 25);
    CHECK(complex.columnLabels[1].size() == 50);
    CHECK(complex.columnLabels[2].size() == 25);
    CHECK(complex.differentials[1].rows() == monoDim);
    CHECK(complex.differentials[1].cols() == 2 * monoDim);

    // delta(x1 x2 . dx1) = partial_2(x1 x2) . dx2 ^ dx1 = -x1 . dx1 ^ dx2.
    const int colX1X2dx1 = 0 * monoDim + (1 + 5);
    const int rowX1 = 1;
    CHECK(complex.differentials[1].at(rowX1, colX1X2dx1) == LaurentScalar::fromLong(-1));
    // delta(x1 x2 . dx2) = partial_1(x1 x2) . dx1 ^ dx2 = +x2 . dx1 ^ dx2.
    const int colX1X2dx2 = 1 * monoDim + (1 + 5);
    const int rowX2 = 5;
    CHECK(complex.differentials[1].at(rowX2, colX1X2dx2) == LaurentScalar::fromLong(1));
}

TEST_CASE("tridisc complex with scalar coefficients closes") {
    const DiagonalConnection m(
        {LaurentScalar::tPower(1), LaurentScalar::fromLong(2), LaurentScalar::tPower(-1)});
    const TruncatedComplex complex = buildDrComplex(m, 2);
    CHECK(complex.degreeCount() == 3);
    const int monoDim = 27;
    CHECK(complex.columnLabels[0].size() == static_cast<std::size_t>(monoDim));
    CHECK(complex.columnLabels[1].size() == static_cast<std::size_t>(3 * monoDim));
    CHECK(complex.columnLabels[2].size() == static_cast<std::size_t>(3 * monoDim));
    CHECK(complex.columnLabels[3].size() == static_cast<std::size_t>(monoDim));
    CHECK(complex.columnLabels[3][0] == "1 dx{1,2,3}");
}

TEST_CASE("pushforward complex closes on the truncated tail model") {
    const PushforwardModule m(scalarConnection(LaurentScalar::tPower(-1)));
    const TruncatedComplex complex = buildDrComplex(m, 4, 3);
    CHECK(complex.degreeCount() == 2);
    CHECK(complex.columnLabels[0].size() == 5 * 4);
    CHECK(complex.columnLabels[0][0] == "1");
    CHECK(complex.columnLabels[0][1] == "d2");
    const PushforwardModule affine(
        ConnectionModule({{TateElement::variable(1, 1) -
                           TateElement::fromScalar(LaurentScalar::tPower(2), 1)}}));
    const TruncatedComplex curved = buildDrComplex(affine, 4, 2);
    CHECK(curved.degreeCount() == 2);
    CHECK_THROWS_AS(buildDrComplex(m, 3, -1), WindowTooSmallError);
}

TEST_CASE("cohomology shifts by one across the embedding") {
    const EmbeddingData e(1, 2);
    {
        // Structure module: (1, 0) becomes (0, 1, 0).
        const ShiftCheckReport rep = drShiftCheck(ConnectionModule::trivial(1, 8), e);
        CHECK(rep.sourceDims[0] == std::array<int, 2>{1, 0});
        CHECK(rep.targetDims[0] == std::array<int, 3>{0, 1, 0});
        CHECK(rep.stabilized);
        CHECK(rep.agree);
        CHECK(rep.reliable);
    }
    {
        // The unit-inverted relation: both sides vanish.
        const CyclicModule invertedUniformizer{WeylOperator::derivation(1, 1) -
                                    WeylOperator::fromScalar(LaurentScalar::tPower(-1), 1)};
        const ShiftCheckReport rep = drShiftCheck(invertedUniformizer, e);
        CHECK(rep.sourceDims[0] == std::array<int, 2>{0, 0});
        CHECK(rep.sourceDims[1] == std::array<int, 2>{0, 0});
        CHECK(rep.targetDims[0] == std::array<int, 3>{0, 0, 0});
        CHECK(rep.targetDims[1] == std::array<int, 3>{0, 0, 0});
        CHECK(rep.agree);
    }
    {
        // Small-norm scalar: kernel carried by a truncated exponential.
        const ShiftCheckReport rep = drShiftCheck(scalarConnection(-LaurentScalar::tPower(1)), e);
        CHECK(rep.sourceDims[0] == std::array<int, 2>{1, 0});
        CHECK(rep.targetDims[0] == std::array<int, 3>{0, 1, 0});
        CHECK(rep.targetDims[1] == std::array<int, 3>{0, 1, 0});
        CHECK(rep.agree);
    }
    {
        // x-dependent coefficient: cokernel class, (0, 1) becomes (0, 0, 1).
        const ConnectionModule m({{-TateElement::variable(1, 1)}});
        const ShiftCheckReport rep = drShiftCheck(m, e);
        CHECK(rep.sourceDims[0] == std::array<int, 2>{0, 1});
        CHECK(rep.targetDims[0] == std::array<int, 3>{0, 0, 1});
        CHECK(rep.agree);
    }
}

TEST_CASE("wedging with the conormal form is an injective chain map") {
    const EmbeddingData e(1, 2);
    {
        const auto rep = chainMapVerify(ConnectionModule::trivial(1, 8), e, 6);
        CHECK(rep.commutes);
        CHECK(rep.injective);
        CHECK(rep.offendingEntry.empty());
        CHECK(rep.holds());
    }
    {
        // Window zero pins the normalization f(1) = 1 . dx2.
        const auto rep = chainMapVerify(ConnectionModule::trivial(1, 8), e, 0);
        CHECK(rep.holds());
    }
    {
        // Random one-variable connections with mixed t-valuations.
        std::mt19937 rng(20260823u);
        std::uniform_int_distribution<int> val(-2, 2);
        std::uniform_int_distribution<int> num(-5, 5);
        for (int trial = 0; trial < 10; ++trial) {
            TateElement entry = TateElement::zero(1, 8);
            for (int deg = 0; deg <= 2; ++deg) {
                const int n = num(rng);
                if (n == 0) continue;
                entry = entry + TateElement::monomial(
                                    MultiIndex{deg},
                                    LaurentScalar::fromRational(Rational(n), 8)
                                        .timesTPower(val(rng)),
                                    1);
            }
            const auto rep = chainMapVerify(ConnectionModule({{entry}}), e, 8);
            CHECK(rep.commutes);
            CHECK(rep.injective);
        }
    }
    {
        // A rank-two source exercises the component bookkeeping.
        const ConnectionModule m({{TateElement::zero(1, 8), TateElement::variable(1, 1)},
                                  {TateElement::fromScalar(LaurentScalar::tPower(1), 1),
                                   TateElement::fromScalar(LaurentScalar::one(), 1)}});
        const auto rep = chainMapVerify(m, e, 5);
        CHECK(rep.holds());
    }
}

TEST_CASE("cokernel of the wedge map is null-homotopic") {
    const EmbeddingData e(1, 2);
    {
        const auto rep = homotopyVerify(ConnectionModule::trivial(1, 6), e, 6, 6);
        CHECK(rep.identityAtDegree[0]);
        CHECK(rep.identityAtDegree[1]);
        CHECK(rep.identityAtDegree[2]);
        CHECK(rep.signPinned);
        CHECK(rep.holds);
        CHECK(rep.offendingEntry.empty());
    }
    {
        const auto rep = homotopyVerify(scalarConnection(LaurentScalar::tPower(-1)), e, 5, 4);
        CHECK(rep.holds);
    }
    {
        const ConnectionModule m({{TateElement::zero(1, 8), TateElement::variable(1, 1)},
                                  {TateElement::fromScalar(LaurentScalar::tPower(-1), 1),
                                   TateElement::variable(1, 1) * TateElement::variable(1, 1)}});
        const auto rep = homotopyVerify(m, e, 4, 3);
        CHECK(rep.holds);
    }
    CHECK_THROWS_AS(homotopyVerify(ConnectionModule::trivial(1, 8), e, 4, 0), WindowTooSmallError);
}
